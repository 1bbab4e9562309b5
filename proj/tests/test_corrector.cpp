// Corrector-solution tests: background jets, the forcing term, the
// characteristic integrals, and the transported pair.
//
// The reference numbers below were frozen from this implementation after the
// jet recurrences were verified against finite differences and the
// quadrature against an independent composite rule; they pin the whole
// evaluation chain bit-for-bit (jets and the printed-form forcing are pure
// closed-form arithmetic, so they get 1e-12; anything behind the adaptive
// quadrature gets 1e-9, its documented tolerance).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bq/corrector.hpp"
#include "bq/jets.hpp"
#include "bq/quadrature.hpp"
#include "bq/refwaves.hpp"

using namespace bq;

namespace {

double relerr(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

ModelParams corrector_params(double eps) {
    ModelParams p;
    p.epsilon = eps;
    p.alpha = 1.0;
    return p;
}

CorrectedSolution gaussian_solution(double eps) {
    CorrectedSolution sol;
    sol.params = corrector_params(eps);
    sol.zeta2_0 = gaussian_datum();
    sol.v2_0 = gaussian_datum();
    return sol;
}

}  // namespace

TEST_CASE("sech2/tanh jet recurrence against closed forms") {
    const double k = 0.8, theta = 0.6;
    Jet s, u;
    sech2_tanh_jets(theta, k, s, u);
    const double th = std::tanh(theta);
    const double s2 = 1.0 - th * th;
    CHECK(relerr(s[0], s2) < 1e-14);
    CHECK(relerr(u[0], th) < 1e-14);
    // d/dx tanh(kx) = k sech^2, d/dx sech^2(kx) = -2k sech^2 tanh
    CHECK(relerr(u[1], k * s2) < 1e-14);
    CHECK(relerr(s[1], -2.0 * k * s2 * th) < 1e-14);
    // far out everything underflows to exactly zero except tanh -> 1
    Jet sf, uf;
    sech2_tanh_jets(400.0, k, sf, uf);
    CHECK(sf[0] == 0.0);
    CHECK(sf[1] == 0.0);
    CHECK(uf[0] == 1.0);
}

TEST_CASE("background jets: frozen values at eps = 0.1, (t, x) = (0.3, 0.7)") {
    BackgroundJets bg = background_jets(corrector_params(0.1), 0.3, 0.7);
    CHECK(relerr(bg.c, 1.054092553389460) < 1e-14);

    CHECK(relerr(bg.zeta1[0], +8.971921652878475e-01) < 1e-12);
    CHECK(relerr(bg.zeta1[1], -4.982636510361790e-01) < 1e-12);
    CHECK(relerr(bg.zeta1[2], -9.307155206789903e-01) < 1e-12);

    const double v1_ref[6] = {+8.678598725659018e-01, -4.422916417386143e-01,
                              -8.666111321867362e-01, +2.012308826271934e+00,
                              +2.543619138534044e+00, -1.768864232398101e+01};
    for (int m = 0; m <= 5; ++m) CHECK(relerr(bg.v1[m], v1_ref[m]) < 1e-12);

    const double w_ref[5] = {+4.662163259830721e-01, +9.134883411224475e-01,
                             -2.121159748893130e+00, -2.681209992587648e+00,
                             +1.864546615327802e+01};
    for (int m = 0; m <= 4; ++m) CHECK(relerr(bg.w[m], w_ref[m]) < 1e-12);

    // h = 1 + eps*zeta1, order by order
    for (int m = 0; m <= 6; ++m) {
        const double want = (m == 0 ? 1.0 : 0.0) + 0.1 * bg.zeta1[m];
        CHECK(std::fabs(bg.h[m] - want) < 1e-14);
    }
}

TEST_CASE("background jets differentiate consistently in x") {
    // five-point stencil in x on the jet entries themselves: entry m+1 must
    // be the x-derivative of entry m
    const ModelParams p = corrector_params(0.1);
    const double t = 0.3, x = 0.7, h = 1e-3;
    BackgroundJets c0 = background_jets(p, t, x);
    BackgroundJets cp1 = background_jets(p, t, x + h);
    BackgroundJets cm1 = background_jets(p, t, x - h);
    BackgroundJets cp2 = background_jets(p, t, x + 2.0 * h);
    BackgroundJets cm2 = background_jets(p, t, x - 2.0 * h);
    for (int m = 0; m + 1 <= 5; ++m) {
        const double fd = (-cp2.v1[m] + 8.0 * cp1.v1[m] - 8.0 * cm1.v1[m] + cm2.v1[m]) /
                          (12.0 * h);
        CHECK(std::fabs(fd - c0.v1[m + 1]) < 1e-8);
    }
    for (int m = 0; m + 1 <= 2; ++m) {
        const double fd = (-cp2.zeta1[m] + 8.0 * cp1.zeta1[m] - 8.0 * cm1.zeta1[m] +
                           cm2.zeta1[m]) / (12.0 * h);
        CHECK(std::fabs(fd - c0.zeta1[m + 1]) < 1e-8);
    }
}

TEST_CASE("time derivative of the background rides the wave") {
    // the background depends on x - c t only, so dt = -c * dx
    const ModelParams p = corrector_params(0.1);
    BackgroundJetValues jv = jet_v1(p, 0.3, 0.7);
    BackgroundJets bg = background_jets(p, 0.3, 0.7);
    CHECK(relerr(jv.dt_v1.value, -bg.c * bg.v1[1]) < 1e-13);
    CHECK(relerr(jv.v1.value, bg.v1[0]) < 1e-14);
    CHECK(relerr(jv.zeta1.value, bg.zeta1[0]) < 1e-14);
}

TEST_CASE("forcing term: frozen values for both model variants") {
    const ModelParams p01 = corrector_params(0.1);
    const ModelParams p001 = corrector_params(0.01);

    CHECK(relerr(forcing_f(p01, 0.0, 0.5, ForcingModel::printed),
                 -7.907237064595811e-01) < 1e-12);
    CHECK(relerr(forcing_f(p001, 1.0, 0.25, ForcingModel::printed),
                 +3.245326358785836e-01) < 1e-12);
    CHECK(relerr(forcing_f(p01, 0.0, 0.5, ForcingModel::compensated),
                 -9.231466592534568e-01) < 1e-12);
    CHECK(relerr(forcing_f(p001, 1.0, 0.25, ForcingModel::compensated),
                 +1.190155597610148e+00) < 1e-12);
}

TEST_CASE("forcing term is odd about the moving crest") {
    // every term in f is a product with odd total parity about x = c t
    for (double eps : {0.1, 0.01}) {
        const ModelParams p = corrector_params(eps);
        const double c = p.celerity_from_alpha();
        for (ForcingModel fm : {ForcingModel::printed, ForcingModel::compensated}) {
            for (double t : {0.0, 0.4, 1.3}) {
                for (double s : {0.2, 0.9, 2.5}) {
                    const double plus = forcing_f(p, t, c * t + s, fm);
                    const double minus = forcing_f(p, t, c * t - s, fm);
                    CHECK(std::fabs(plus + minus) < 1e-11);
                }
                CHECK(std::fabs(forcing_f(p, t, c * t, fm)) < 1e-11);
            }
        }
    }
}

TEST_CASE("Gaussian datum: unit peak and stated width") {
    ScalarFn g = gaussian_datum();
    CHECK(g(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    const double y = 0.37;
    const double arg = 3.0 * std::numbers::pi * y / 10.0;
    CHECK(relerr(g(y), std::exp(-arg * arg)) < 1e-14);
    CHECK(g(0.62) == g(-0.62));
}

TEST_CASE("characteristic integrals: frozen values and an independent rule") {
    CorrectedSolution sol = gaussian_solution(0.1);

    CharIntegrals ci = characteristic_integrals(sol, 1.0, 0.0);
    CHECK(relerr(ci.i1, +9.903872087580374e-01) < 1e-9);
    CHECK(relerr(ci.i2, +2.608089537035785e-02) < 1e-9);

    // cross-check i1 with composite Simpson on the same integrand
    const ModelParams p = sol.params;
    const double t = 1.0, x = 0.0;
    const double simpson = composite_simpson(
        [&](double s) { return forcing_f(p, s, x - t + s, ForcingModel::compensated); },
        0.0, t, 20000);
    CHECK(std::fabs(ci.i1 - simpson) < 5e-10);

    sol.opt.forcing = ForcingModel::printed;
    ci = characteristic_integrals(sol, 1.0, 0.0);
    CHECK(relerr(ci.i1, -2.483233832054554e-02) < 1e-9);
    CHECK(relerr(ci.i2, -6.539357655393485e-04) < 1e-9);
}

TEST_CASE("transported pair: frozen values for both model variants") {
    CorrectedSolution sol = gaussian_solution(0.1);

    CorrectorValue tv = transport_pair(sol, 1.0, 0.0);
    CHECK(relerr(tv.zeta2, +8.935222640444647e-01) < 1e-9);
    CHECK(relerr(tv.v2, +9.196031594148226e-01) < 1e-9);
    tv = transport_pair(sol, 0.5, 1.5);
    CHECK(relerr(tv.zeta2, +2.785847526354608e-01) < 1e-9);
    CHECK(relerr(tv.v2, +2.990473485238351e-02) < 1e-9);

    sol.opt.forcing = ForcingModel::printed;
    tv = transport_pair(sol, 1.0, 0.0);
    CHECK(relerr(tv.zeta2, +3.992799060731218e-01) < 1e-9);
    CHECK(relerr(tv.v2, +3.986259703075825e-01) < 1e-9);
    tv = transport_pair(sol, 0.5, 1.5);
    CHECK(relerr(tv.zeta2, +3.799388697760189e-01) < 1e-9);
    CHECK(relerr(tv.v2, +4.351647105365369e-01) < 1e-9);
}

TEST_CASE("transported pair restores the data at t = 0") {
    CorrectedSolution sol = gaussian_solution(0.1);
    ScalarFn g = gaussian_datum();
    for (double x : {0.0, 0.3, -1.1}) {
        CorrectorValue tv = transport_pair(sol, 0.0, x);
        CHECK(std::fabs(tv.zeta2 - g(x)) < 1e-12);
        CHECK(std::fabs(tv.v2 - g(x)) < 1e-12);
    }
}

TEST_CASE("corrected family: assembly and the evaluation horizon") {
    CorrectedSolution sol = gaussian_solution(0.1);
    const double t = 0.8, x = 0.4;
    FamilyValue fv = corrected_eval(sol, t, x);
    ReferenceWave bgw = boussinesq_solitary(sol.params, t, x);
    CorrectorValue tv = transport_pair(sol, t, x);
    const double e2 = sol.params.epsilon * sol.params.epsilon;
    CHECK(relerr(fv.zeta, bgw.zeta + e2 * tv.zeta2) < 1e-13);
    CHECK(relerr(fv.v, bgw.v + e2 * tv.v2) < 1e-13);

    // horizon/sqrt(eps) with horizon = 1, eps = 0.1 is about 3.16
    CHECK_THROWS_AS(corrected_eval(sol, 4.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(corrected_eval(sol, -0.1, 0.0), std::invalid_argument);
}

TEST_CASE("grid sweep agrees with pointwise evaluation") {
    CorrectedSolution sol = gaussian_solution(0.1);
    Grid1D grid;
    grid.x_min = -10.0;
    grid.x_max = 10.0;
    grid.n = 64;
    CorrectorGrid cg = corrector_grid(sol, 0.7, grid);
    REQUIRE(cg.zeta2.size() == 64);
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        CorrectorValue tv = transport_pair(sol, 0.7, grid.x(i));
        worst = std::max(worst, std::fabs(tv.zeta2 - cg.zeta2[(size_t)i]));
        worst = std::max(worst, std::fabs(tv.v2 - cg.v2[(size_t)i]));
    }
    CHECK(worst < 1e-12);

    // the family sweep composes the same pieces
    std::vector<double> fz, fvv;
    corrected_eval_grid(sol, 0.7, grid, fz, fvv);
    REQUIRE(fz.size() == 64);
    const double e2 = sol.params.epsilon * sol.params.epsilon;
    for (int i = 0; i < grid.n; ++i) {
        ReferenceWave bgw = boussinesq_solitary(sol.params, 0.7, grid.x(i));
        CHECK(std::fabs(fz[(size_t)i] - (bgw.zeta + e2 * cg.zeta2[(size_t)i])) < 1e-13);
    }
}

TEST_CASE("solution options are validated") {
    CorrectedSolution sol = gaussian_solution(0.1);
    sol.opt.quadrature_tol = 0.0;
    CHECK_THROWS_AS(sol.validate(), std::invalid_argument);
    sol = gaussian_solution(0.1);
    sol.opt.horizon = -1.0;
    CHECK_THROWS_AS(sol.validate(), std::invalid_argument);
    sol = gaussian_solution(0.1);
    sol.zeta2_0 = nullptr;
    CHECK_THROWS_AS(sol.validate(), std::invalid_argument);
}
