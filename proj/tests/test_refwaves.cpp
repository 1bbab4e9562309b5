// Closed-form reference waves: the sech^2 family, the speed/amplitude
// parameter maps, and the similarity rescaling.  These are the oracles the
// ODE solver is later checked against, so they get their own direct tests.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bq/refwaves.hpp"
#include "bq/types.hpp"

using namespace bq;

TEST_CASE("sech2: value, evenness, and the underflow clamp") {
    CHECK(sech2(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    const double c1 = 1.0 / std::cosh(1.0);
    CHECK(sech2(1.0) == doctest::Approx(c1 * c1).epsilon(1e-15));
    CHECK(sech2(2.5) == sech2(-2.5));
    // far tails are exact zeros, not denormals
    CHECK(sech2(351.0) == 0.0);
    CHECK(sech2(-400.0) == 0.0);
}

TEST_CASE("Green-Naghdi wave: amplitude, wavenumber, and the first integral") {
    const double c = 1.025, eps = 1.0;
    const double a = gn_amplitude(c, eps);
    const double k = gn_wavenumber(c, eps);
    CHECK(a == doctest::Approx((c * c - 1.0) / eps).epsilon(1e-15));
    CHECK(k == doctest::Approx(std::sqrt(3.0 * (c * c - 1.0) / (4.0 * c * c * eps))).epsilon(1e-15));
    CHECK(gn_profile(c, eps, 0.0) == doctest::Approx(a).epsilon(1e-15));
    CHECK(gn_profile(c, eps, 1.7) == doctest::Approx(a * sech2(k * 1.7)).epsilon(1e-14));

    // the closed form satisfies (zeta')^2 = (3/(eps c^2)) zeta^2 (c^2-1-eps*zeta);
    // differentiate the profile analytically and plug in
    for (double x : {0.5, 2.0, 7.0}) {
        const double z = gn_profile(c, eps, x);
        const double th = std::tanh(k * x);
        const double dz = -2.0 * a * k * th * sech2(k * x);
        const double rhs = 3.0 / (eps * c * c) * z * z * (c * c - 1.0 - eps * z);
        CHECK(std::fabs(dz * dz - rhs) < 1e-15);
    }
}

TEST_CASE("first-order solitary wave: traveling structure and velocity law") {
    ModelParams p;
    p.epsilon = 0.1;
    p.alpha = 1.0;
    const double c = p.celerity_from_alpha();
    CHECK(c == doctest::Approx(std::sqrt(1.0 / 0.9)).epsilon(1e-15));
    CHECK(p.k() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));

    ReferenceWave w0 = boussinesq_solitary(p, 0.0, 0.4);
    CHECK(w0.zeta == doctest::Approx(sech2(p.k() * 0.4)).epsilon(1e-14));
    CHECK(w0.v == doctest::Approx(c * w0.zeta / (1.0 + p.epsilon * w0.zeta)).epsilon(1e-14));

    // profile rides at speed c: the value at (t, x) equals the value at (0, x - c t)
    ReferenceWave moved = boussinesq_solitary(p, 0.7, 0.4 + 0.7 * c);
    CHECK(moved.zeta == doctest::Approx(w0.zeta).epsilon(1e-13));
    CHECK(moved.v == doctest::Approx(w0.v).epsilon(1e-13));

    // crest height is alpha
    CHECK(boussinesq_solitary(p, 0.3, 0.3 * c).zeta == doctest::Approx(p.alpha).epsilon(1e-13));
}

TEST_CASE("alpha_from_celerity inverts the speed map") {
    for (double eps : {1.0, 0.1, 0.01}) {
        for (double alpha : {0.04, 0.3, 0.9}) {
            if (alpha * eps >= 1.0) continue;
            ModelParams p;
            p.epsilon = eps;
            p.alpha = alpha;
            const double c = p.celerity_from_alpha();
            CHECK(alpha_from_celerity(c, eps) == doctest::Approx(alpha).epsilon(1e-13));
        }
    }
}

TEST_CASE("rescale_profile maps a GN wave onto sech^2 exactly") {
    const double c = 1.01, eps = 1.0;
    std::vector<double> x, zeta;
    for (int i = -200; i <= 200; ++i) {
        x.push_back(0.25 * i);
        zeta.push_back(gn_profile(c, eps, 0.25 * i));
    }
    RescaledProfile rp = rescale_profile(x, zeta, c, eps);
    REQUIRE(rp.X.size() == x.size());
    const double k = gn_wavenumber(c, eps);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(rp.X[i] == doctest::Approx(k * x[i]).epsilon(1e-13));
        worst = std::max(worst, std::fabs(rp.Z[i] - sech2(rp.X[i])));
    }
    CHECK(worst < 1e-13);
    // crest of the rescaled wave sits at height 1
    CHECK(rp.Z[200] == doctest::Approx(1.0).epsilon(1e-14));
}
