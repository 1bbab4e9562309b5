#include "bq/refwaves.hpp"

#include <cmath>
#include <stdexcept>

namespace bq {

double sech2(double arg) {
    if (std::fabs(arg) > 350.0) return 0.0;
    const double ch = std::cosh(arg);
    return 1.0 / (ch * ch);
}

double gn_amplitude(double celerity, double epsilon) {
    if (!(celerity > 1.0))
        throw std::invalid_argument("gn_amplitude: needs c > 1");
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument("gn_amplitude: epsilon must lie in (0, 1]");
    return (celerity * celerity - 1.0) / epsilon;
}

double gn_wavenumber(double celerity, double epsilon) {
    if (!(celerity > 1.0))
        throw std::invalid_argument("gn_wavenumber: needs c > 1");
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument("gn_wavenumber: epsilon must lie in (0, 1]");
    const double c2 = celerity * celerity;
    return std::sqrt(3.0 * (c2 - 1.0) / (4.0 * c2 * epsilon));
}

double gn_profile(double celerity, double epsilon, double x) {
    return gn_amplitude(celerity, epsilon) *
           sech2(gn_wavenumber(celerity, epsilon) * x);
}

ReferenceWave boussinesq_solitary(const ModelParams& p, double t, double x) {
    p.validate_corrector();
    const double c = p.celerity_from_alpha();
    const double zeta = p.alpha * sech2(p.k() * (x - c * t));
    ReferenceWave w;
    w.zeta = zeta;
    w.v = c * zeta / (1.0 + p.epsilon * zeta);
    return w;
}

double alpha_from_celerity(double celerity, double epsilon) {
    if (!(celerity > 1.0))
        throw std::invalid_argument("alpha_from_celerity: needs c > 1");
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument(
            "alpha_from_celerity: epsilon must lie in (0, 1]");
    const double c2 = celerity * celerity;
    return (c2 - 1.0) / (c2 * epsilon);
}

RescaledProfile rescale_profile(std::span<const double> x,
                                std::span<const double> zeta, double celerity,
                                double epsilon) {
    if (x.size() != zeta.size())
        throw std::invalid_argument("rescale_profile: size mismatch");
    const double a_gn = gn_amplitude(celerity, epsilon);
    const double k_gn = gn_wavenumber(celerity, epsilon);
    RescaledProfile r;
    r.X.resize(x.size());
    r.Z.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.X[i] = x[i] * k_gn;
        r.Z[i] = zeta[i] / a_gn;
    }
    return r;
}

}  // namespace bq
