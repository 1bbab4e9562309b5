// Discrete norms.  Two L2 conventions coexist on purpose:
//
//   discrete_norm(f, dx, Norm::two)  = sqrt(dx * sum f_i^2)   (continuum-approximating)
//   raw_l2(f)                        = sqrt(sum f_i^2)        (plain vector 2-norm)
//
// The residual tables published for this model are stated in raw vector norms
// (their own L2/Linf ratio fixes the convention); refinement-stability checks
// need the weighted one.  Reports carry both.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace bq {

enum class Norm { two, inf };

inline void check_finite(std::span<const double> f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i]))
            throw std::invalid_argument("discrete_norm: non-finite sample at index " +
                                        std::to_string(i));
}

inline double raw_l2(std::span<const double> f) {
    double s = 0.0;
    for (double x : f) s += x * x;
    return std::sqrt(s);
}

inline double norm_inf(std::span<const double> f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::fabs(x));
    return m;
}

inline double discrete_norm(std::span<const double> f, double dx, Norm p) {
    if (!(dx > 0.0)) throw std::invalid_argument("discrete_norm: dx must be positive");
    check_finite(f);
    return p == Norm::two ? std::sqrt(dx) * raw_l2(f) : norm_inf(f);
}

}  // namespace bq
