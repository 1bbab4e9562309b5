// Jet (Taylor-mode) arithmetic: a Jet holds the value and the first kJetOrder
// spatial derivatives of a scalar function at a point.  Products use the
// Leibniz rule, quotients the standard recurrence, so derivatives propagate
// exactly (up to rounding) through closed-form expressions.  This is how the
// high-order derivatives of the background solitary wave are produced; finite
// differences alone lose too many digits at order 4-5.
#pragma once

#include <array>
#include <cstdint>

#include "bq/types.hpp"

namespace bq {

inline constexpr int kJetOrder = 8;  // derivatives 0..8 carried

struct Jet {
    std::array<double, kJetOrder + 1> d{};  // d[m] = m-th derivative

    double value() const { return d[0]; }
    double operator[](int m) const { return d[static_cast<std::size_t>(m)]; }
    double& operator[](int m) { return d[static_cast<std::size_t>(m)]; }
};

Jet jet_constant(double a);
Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, double s);
Jet jet_mul(const Jet& a, const Jet& b);   // Leibniz
Jet jet_div(const Jet& a, const Jet& b);   // recurrence; b.value() must be nonzero
Jet jet_shift(const Jet& a);               // derivative jet: (a')[m] = a[m+1]

// sech^2 and tanh of theta(x) = k*(x - c*t) as x-jets, via the closed recursion
//   d/dx sech^2 = -2k sech^2 tanh,   d/dx tanh = k sech^2.
// Arguments beyond |theta| > 350 underflow to exact 0 / sign(theta).
void sech2_tanh_jets(double theta, double k, Jet& s, Jet& u);

// Background solitary wave of the first-order system and everything the
// corrector needs from it, as exact x-jets at (t, x):
//   zeta1 = alpha*sech^2(k(x-ct)),  h = 1+eps*zeta1,  v1 = c*zeta1/h,
//   w = dt v1 = -c * dx v1 (traveling structure).
struct BackgroundJets {
    Jet zeta1;
    Jet h;
    Jet v1;
    Jet w;  // time derivative of v1, as an x-jet (orders 0..kJetOrder-1 valid)
    double c = 0.0;
};

BackgroundJets background_jets(const ModelParams& p, double t, double x);

}  // namespace bq
