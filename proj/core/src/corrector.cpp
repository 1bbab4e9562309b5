#include "bq/corrector.hpp"

#include <cmath>
#include <stdexcept>

#include "bq/jets.hpp"
#include "bq/quadrature.hpp"
#include "bq/refwaves.hpp"

namespace bq {

namespace {

// Largest |argument| at which sech^2-derived factors are still treated as
// nonzero; beyond it every term of the forcing underflows the tolerances by
// dozens of orders of magnitude.
constexpr double kSupportCut = 40.0;

JetValue to_jet_value(const Jet& j, int orders) {
    JetValue v;
    v.value = j[0];
    for (int m = 1; m <= orders && m <= 5; ++m) v.deriv[m - 1] = j[m];
    return v;
}

// Forcing from precomputed background jets at one point.
double forcing_from_jets(const BackgroundJets& bg, const ModelParams& p,
                         ForcingModel model) {
    const double e = p.epsilon;
    const Jet& z1 = bg.zeta1;
    const Jet& v1 = bg.v1;
    const Jet& w = bg.w;

    if (model == ForcingModel::printed) {
        // f = z1' w' + (2/3) z1 w'' + (1/45) w'''' + (1/3)(v1 v1''' - v1' v1'')
        return z1[1] * w[1] + (2.0 / 3.0) * z1[0] * w[2] +
               w[4] / 45.0 + (v1[0] * v1[3] - v1[1] * v1[2]) / 3.0;
    }

    // Compensated: minus the full second-equation residue of the background,
    // divided by eps^2.  Shares its operator expansion with the residual
    // assembly so the background contribution cancels exactly.
    const double h = bg.h[0];
    const double Tw =
        -(3.0 * e * z1[1] * w[1] + (1.0 + 3.0 * e * z1[0]) * w[2]) / (3.0 * h);
    const double fTw = -w[4] / 45.0;
    const double Qv = -(v1[0] * v1[3] - v1[1] * v1[2]) / 3.0;
    const double n2 = w[0] + e * Tw + e * e * fTw + z1[1] +
                      e * v1[0] * v1[1] + e * e * Qv;
    return -n2 / (e * e);
}

// Does the characteristic foot stay outside the background's support for the
// whole s-range?  The sech^2 argument is k*(y(s) - c*s), linear in s, so the
// minimum of |arg| over [0, t] is at an endpoint unless it changes sign.
bool outside_support(double arg0, double arg1) {
    if ((arg0 > 0.0) != (arg1 > 0.0)) return false;
    return std::min(std::fabs(arg0), std::fabs(arg1)) > kSupportCut;
}

struct CharIntegrand {
    const ModelParams* p;
    ForcingModel model;
    double x_minus_t;  // I1 foot: y(s) = (x - t) + s
    double x_plus_t;   // I2 foot: y(s) = (x + t) - s
};

double i1_integrand(const CharIntegrand& ci, double s) {
    return forcing_f(*ci.p, s, ci.x_minus_t + s, ci.model);
}
double i2_integrand(const CharIntegrand& ci, double s) {
    return forcing_f(*ci.p, s, ci.x_plus_t - s, ci.model);
}

CharIntegrals char_integrals_impl(const CorrectedSolution& sol, double t,
                                  double x, int gl_nodes) {
    sol.validate();
    CharIntegrals out;
    if (t == 0.0) return out;
    const ModelParams& p = sol.params;
    const double c = p.celerity_from_alpha();
    const double k = p.k();

    CharIntegrand ci{&p, sol.opt.forcing, x - t, x + t};

    // sech^2 argument along each foot at s = 0 and s = t.
    const double a1_0 = k * ci.x_minus_t;
    const double a1_t = k * (ci.x_minus_t + t * (1.0 - c));
    const double a2_0 = k * ci.x_plus_t;
    const double a2_t = k * (ci.x_plus_t - t * (1.0 + c));

    if (!outside_support(a1_0, a1_t)) {
        auto f1 = [&](double s) { return i1_integrand(ci, s); };
        if (gl_nodes > 0) {
            out.i1 = fixed_gauss_legendre(f1, 0.0, t, gl_nodes);
        } else {
            QuadResult q = adaptive_gauss_kronrod(f1, 0.0, t,
                                                  sol.opt.quadrature_tol,
                                                  sol.opt.quadrature_tol);
            out.i1 = q.value;
        }
    }
    if (!outside_support(a2_0, a2_t)) {
        auto f2 = [&](double s) { return i2_integrand(ci, s); };
        if (gl_nodes > 0) {
            out.i2 = fixed_gauss_legendre(f2, 0.0, t, gl_nodes);
        } else {
            QuadResult q = adaptive_gauss_kronrod(f2, 0.0, t,
                                                  sol.opt.quadrature_tol,
                                                  sol.opt.quadrature_tol);
            out.i2 = q.value;
        }
    }
    return out;
}

CorrectorValue transport_from_integrals(const CorrectedSolution& sol, double t,
                                        double x, const CharIntegrals& ci) {
    const double gp = sol.zeta2_0(x - t) + sol.v2_0(x - t);
    const double gm = sol.zeta2_0(x + t) - sol.v2_0(x + t);
    CorrectorValue out;
    out.zeta2 = 0.5 * (gp + gm + ci.i1 - ci.i2);
    out.v2 = 0.5 * (gp - gm + ci.i1 + ci.i2);
    return out;
}

}  // namespace

BackgroundJetValues jet_v1(const ModelParams& p, double t, double x) {
    const BackgroundJets bg = background_jets(p, t, x);
    BackgroundJetValues out;
    out.zeta1 = to_jet_value(bg.zeta1, 5);
    out.v1 = to_jet_value(bg.v1, 5);
    out.dt_v1 = to_jet_value(bg.w, 4);
    return out;
}

double forcing_f(const ModelParams& p, double t, double x,
                 ForcingModel model) {
    return forcing_from_jets(background_jets(p, t, x), p, model);
}

ScalarFn gaussian_datum() {
    return [](double y) {
        const double u = 0.3 * M_PI * y;
        return std::exp(-u * u);
    };
}

void CorrectedSolution::validate() const {
    params.validate_corrector();
    if (!zeta2_0 || !v2_0)
        throw std::invalid_argument(
            "CorrectedSolution: both initial-data handles must be set");
    if (!(opt.quadrature_tol > 0.0))
        throw std::invalid_argument(
            "CorrectedSolution: quadrature_tol must be positive");
    if (!(opt.horizon > 0.0))
        throw std::invalid_argument("CorrectedSolution: horizon must be positive");
}

CharIntegrals characteristic_integrals(const CorrectedSolution& sol, double t,
                                       double x) {
    return char_integrals_impl(sol, t, x, /*gl_nodes=*/0);
}

CorrectorValue transport_pair(const CorrectedSolution& sol, double t,
                              double x) {
    sol.validate();
    return transport_from_integrals(sol, t, x,
                                    char_integrals_impl(sol, t, x, 0));
}

FamilyValue corrected_eval(const CorrectedSolution& sol, double t, double x) {
    sol.validate();
    const double horizon = sol.opt.horizon / std::sqrt(sol.params.epsilon);
    if (!(t >= 0.0) || t > horizon) {
        throw std::invalid_argument(
            "corrected_eval: t must lie in [0, horizon/sqrt(eps)]");
    }
    const ReferenceWave bgw = boussinesq_solitary(sol.params, t, x);
    const CorrectorValue cv = transport_pair(sol, t, x);
    const double e2 = sol.params.epsilon * sol.params.epsilon;
    FamilyValue out;
    out.zeta = bgw.zeta + e2 * cv.zeta2;
    out.v = bgw.v + e2 * cv.v2;
    return out;
}

CorrectorGrid corrector_grid(const CorrectedSolution& sol, double t,
                             const Grid1D& grid, int gl_nodes) {
    sol.validate();
    grid.validate();
    if (gl_nodes < 2)
        throw std::invalid_argument("corrector_grid: gl_nodes must be >= 2");
    CorrectorGrid out;
    out.zeta2.resize(static_cast<std::size_t>(grid.n));
    out.v2.resize(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const CorrectorValue cv = transport_from_integrals(
            sol, t, x, char_integrals_impl(sol, t, x, gl_nodes));
        out.zeta2[static_cast<std::size_t>(i)] = cv.zeta2;
        out.v2[static_cast<std::size_t>(i)] = cv.v2;
    }
    return out;
}

void corrected_eval_grid(const CorrectedSolution& sol, double t,
                         const Grid1D& grid, std::vector<double>& zeta,
                         std::vector<double>& v, int gl_nodes) {
    const CorrectorGrid cg = corrector_grid(sol, t, grid, gl_nodes);
    const double e2 = sol.params.epsilon * sol.params.epsilon;
    zeta.resize(static_cast<std::size_t>(grid.n));
    v.resize(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const ReferenceWave bgw = boussinesq_solitary(sol.params, t, grid.x(i));
        zeta[static_cast<std::size_t>(i)] = bgw.zeta + e2 * cg.zeta2[i];
        v[static_cast<std::size_t>(i)] = bgw.v + e2 * cg.v2[i];
    }
}

}  // namespace bq
