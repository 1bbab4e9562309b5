// Residue assembly and the convergence experiment.
//
// Two kinds of checks: structural ones with exact answers (plane-wave action
// of the model operators, the background wave annihilating the first
// residue), and frozen full-pipeline reports.  The frozen numbers came from
// this code at the stated settings after the operator path was verified
// against the structural checks; they are printed to 7 significant digits,
// so comparisons run at 1e-5 relative, except the sup-norms which sit on a
// single grid node and get a little more slack.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bq/derivative.hpp"
#include "bq/norms.hpp"
#include "bq/refwaves.hpp"
#include "bq/residuals.hpp"

using namespace bq;

namespace {

double relerr(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

Grid1D unit_circle_grid(int n) {
    Grid1D g;
    g.x_min = 0.0;
    g.x_max = 2.0 * std::numbers::pi;
    g.n = n;
    g.periodic = true;
    return g;
}

CorrectedSolution gaussian_solution(double eps) {
    CorrectedSolution sol;
    sol.params.epsilon = eps;
    sol.params.alpha = 1.0;
    sol.zeta2_0 = gaussian_datum();
    sol.v2_0 = gaussian_datum();
    return sol;
}

}  // namespace

TEST_CASE("model operators act diagonally on plane waves") {
    Grid1D g = unit_circle_grid(128);
    const double k = 5.0, eps = 0.3;
    std::vector<double> w(128), zeta0(128, 0.0);
    for (int i = 0; i < 128; ++i) w[(size_t)i] = std::cos(k * g.x(i));

    // flat bottom: T w = -(1/3) w'' -> (k^2/3) cos(kx)
    auto tw = op_T(zeta0, w, g, eps);
    // fourth-order part: -(1/45) w'''' -> -(k^4/45) cos(kx)
    auto fw = op_frakT(w, g);
    double worst_t = 0.0, worst_f = 0.0;
    for (int i = 0; i < 128; ++i) {
        worst_t = std::max(worst_t, std::fabs(tw[(size_t)i] - k * k / 3.0 * w[(size_t)i]));
        worst_f = std::max(worst_f,
                           std::fabs(fw[(size_t)i] + k * k * k * k / 45.0 * w[(size_t)i]));
    }
    CHECK(worst_t < 1e-10);
    CHECK(worst_f < 1e-8);

    // for a single cosine, v v'' - (v')^2 is the constant -k^2, so Q v = 0
    auto qv = op_Q(w, g);
    CHECK(norm_inf(qv) < 1e-10);
}

TEST_CASE("quadratic operator on a two-mode field") {
    Grid1D g = unit_circle_grid(256);
    std::vector<double> v(256);
    for (int i = 0; i < 256; ++i) {
        const double x = g.x(i);
        v[(size_t)i] = std::sin(x) + 0.5 * std::cos(2.0 * x);
    }
    // assemble v v'' - (v')^2 spectrally and differentiate once; op_Q must
    // match that reference construction
    auto d1 = spatial_derivative(v, g, 1);
    auto d2 = spatial_derivative(v, g, 2);
    std::vector<double> inner(256);
    for (int i = 0; i < 256; ++i)
        inner[(size_t)i] = v[(size_t)i] * d2[(size_t)i] - d1[(size_t)i] * d1[(size_t)i];
    auto dref = spatial_derivative(inner, g, 1);
    auto qv = op_Q(v, g);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i)
        worst = std::max(worst, std::fabs(qv[(size_t)i] + dref[(size_t)i] / 3.0));
    CHECK(worst < 1e-11);
}

TEST_CASE("background wave annihilates the mass residue exactly") {
    // with v = c zeta/(1+eps zeta) the flux h*v equals c*zeta, so
    // dt zeta + dx(h v) = 0 identically along the traveling background;
    // the second residue is left at its eps^2 model mismatch
    for (double eps : {0.1, 0.01}) {
        ModelParams p;
        p.epsilon = eps;
        p.alpha = 1.0;
        const double c = p.celerity_from_alpha();
        Grid1D grid;
        const int n = grid.n;
        FieldSnapshot s;
        s.zeta.resize((size_t)n);
        s.v.resize((size_t)n);
        for (int i = 0; i < n; ++i) {
            ReferenceWave rw = boussinesq_solitary(p, 0.4, grid.x(i));
            s.zeta[(size_t)i] = rw.zeta;
            s.v[(size_t)i] = rw.v;
        }
        auto dzx = spatial_derivative(s.zeta, grid, 1);
        auto dvx = spatial_derivative(s.v, grid, 1);
        s.dt_zeta.resize((size_t)n);
        s.dt_v.resize((size_t)n);
        for (int i = 0; i < n; ++i) {
            s.dt_zeta[(size_t)i] = -c * dzx[(size_t)i];
            s.dt_v[(size_t)i] = -c * dvx[(size_t)i];
        }
        std::vector<double> r1, r2;
        assemble_residuals(s, grid, eps, r1, r2);
        CHECK(norm_inf(r1) < 1e-12);
        // second residue scales like eps^2 with an order-one constant
        CHECK(norm_inf(r2) < 2.0 * eps * eps);
        CHECK(norm_inf(r2) > 0.5 * eps * eps);
    }
}

TEST_CASE("residual report: frozen compensated-forcing values" *
          doctest::timeout(300)) {
    Grid1D grid;
    SUBCASE("eps = 1e-2") {
        ResidualReport r = residual_report(gaussian_solution(1e-2), 1.0, grid);
        CHECK(relerr(r.r1_l2, 2.071229e-05) < 1e-5);
        CHECK(relerr(r.r2_l2, 2.088037e-05) < 1e-5);
        CHECK(relerr(r.r1_l2w, 3.236295e-06) < 1e-5);
        CHECK(relerr(r.r2_l2w, 3.262558e-06) < 1e-5);
        CHECK(relerr(r.r1_inf, 3.354738e-06) < 5e-4);
        CHECK(relerr(r.r2_inf, 3.453881e-06) < 5e-4);
        CHECK(!r.richardson_flag);
        CHECK(r.epsilon == 1e-2);
        CHECK(r.grid_n == 4096);
    }
    SUBCASE("eps = 1e-3") {
        ResidualReport r = residual_report(gaussian_solution(1e-3), 1.0, grid);
        CHECK(relerr(r.r1_l2, 2.081988e-08) < 1e-5);
        CHECK(relerr(r.r2_l2, 2.185585e-08) < 1e-5);
        CHECK(relerr(r.r1_l2w, 3.253105e-09) < 1e-5);
        CHECK(relerr(r.r2_l2w, 3.414977e-09) < 1e-5);
        CHECK(relerr(r.r1_inf, 3.383145e-09) < 5e-4);
        CHECK(relerr(r.r2_inf, 3.660419e-09) < 5e-4);
    }
}

TEST_CASE("residual report: frozen printed-forcing values" *
          doctest::timeout(300)) {
    CorrectedSolution sol = gaussian_solution(1e-3);
    sol.opt.forcing = ForcingModel::printed;
    Grid1D grid;
    ResidualReport r = residual_report(sol, 1.0, grid);
    CHECK(relerr(r.r1_l2, 2.229580e-08) < 1e-5);
    CHECK(relerr(r.r2_l2, 8.129882e-06) < 1e-5);
    CHECK(relerr(r.r1_l2w, 3.483719e-09) < 1e-5);
    CHECK(relerr(r.r2_l2w, 1.270294e-06) < 1e-5);
    CHECK(relerr(r.r1_inf, 3.794922e-09) < 5e-4);
    CHECK(relerr(r.r2_inf, 1.078038e-06) < 5e-4);
    // the uncompensated forcing stalls the second residue near eps^2 * 1e-2
    // scales; it must sit far above the compensated value at the same eps
    CHECK(r.r2_l2 > 100.0 * 2.185585e-08);
}

TEST_CASE("slope fit helper is exact on pure powers") {
    std::vector<double> x = {1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> y(4);
    for (int i = 0; i < 4; ++i) y[(size_t)i] = 7.0 * std::pow(x[(size_t)i], 3);
    CHECK(std::fabs(loglog_slope(x, y) - 3.0) < 1e-12);
    std::vector<double> too_short = {1.0, 2.0};
    CHECK_THROWS_AS(loglog_slope(too_short, too_short), std::invalid_argument);
}

TEST_CASE("sweep configuration is validated") {
    SweepConfig cfg;
    cfg.epsilons = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.epsilons = {1e-3, 1e-2};  // must be strictly decreasing
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.epsilons = {1e-2, 1e-3};
    cfg.validate();
}
