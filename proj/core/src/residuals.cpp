#include "bq/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bq/derivative.hpp"
#include "bq/jets.hpp"
#include "bq/norms.hpp"
#include "bq/parallel.hpp"
#include "bq/refwaves.hpp"

namespace bq {

namespace {

void check_sizes(std::size_t got, const Grid1D& grid, const char* who) {
    if (got != static_cast<std::size_t>(grid.n))
        throw std::invalid_argument(std::string(who) +
                                    ": field size must equal grid.n");
}

// corrector_grid split over contiguous sub-lattices, one per worker.  The
// chunks are plain non-periodic grids whose nodes coincide with the parent
// lattice, so the result matches the serial call up to roundoff in the node
// coordinates.
CorrectorGrid corrector_grid_mt(const CorrectedSolution& sol, double t,
                                const Grid1D& grid, int gl_nodes,
                                int threads) {
    if (threads <= 1 || grid.n < 128)
        return corrector_grid(sol, t, grid, gl_nodes);
    int nt = std::min(threads, grid.n / 64);
    const auto n = static_cast<std::size_t>(grid.n);
    CorrectorGrid out;
    out.zeta2.resize(n);
    out.v2.resize(n);
    std::vector<std::pair<int, int>> ranges;
    for (int w = 0; w < nt; ++w) {
        int lo = static_cast<int>(static_cast<long long>(grid.n) * w / nt);
        int hi = static_cast<int>(static_cast<long long>(grid.n) * (w + 1) / nt);
        ranges.emplace_back(lo, hi);
    }
    parallel_for(ranges.size(), nt, [&](std::size_t w) {
        const auto [lo, hi] = ranges[w];
        Grid1D chunk{grid.x(lo), grid.x(hi - 1), hi - lo, false};
        const CorrectorGrid part = corrector_grid(sol, t, chunk, gl_nodes);
        std::copy(part.zeta2.begin(), part.zeta2.end(),
                  out.zeta2.begin() + lo);
        std::copy(part.v2.begin(), part.v2.end(), out.v2.begin() + lo);
    });
    return out;
}

// Centered 4th-order difference in t from four corrector grids.
void fd4_time(const CorrectorGrid& m2, const CorrectorGrid& m1,
              const CorrectorGrid& p1, const CorrectorGrid& p2, double dt,
              std::vector<double>& dtz, std::vector<double>& dtv) {
    const std::size_t n = m2.zeta2.size();
    dtz.resize(n);
    dtv.resize(n);
    const double s = 1.0 / (12.0 * dt);
    for (std::size_t i = 0; i < n; ++i) {
        dtz[i] = (m2.zeta2[i] - 8.0 * m1.zeta2[i] + 8.0 * p1.zeta2[i] -
                  p2.zeta2[i]) * s;
        dtv[i] = (m2.v2[i] - 8.0 * m1.v2[i] + 8.0 * p1.v2[i] - p2.v2[i]) * s;
    }
}

struct NormQuad {
    double r1w, r2w, r1i, r2i;
};

NormQuad norm_quad(const std::vector<double>& r1, const std::vector<double>& r2,
                   double dx) {
    return {discrete_norm(r1, dx, Norm::two), discrete_norm(r2, dx, Norm::two),
            norm_inf(r1), norm_inf(r2)};
}

double rel_gap(double a, double b) {
    const double scale = std::max(std::fabs(b), 1e-300);
    return std::fabs(a - b) / scale;
}

}  // namespace

std::vector<double> op_T(std::span<const double> zeta,
                         std::span<const double> w, const Grid1D& grid,
                         double epsilon) {
    check_sizes(zeta.size(), grid, "op_T");
    check_sizes(w.size(), grid, "op_T");
    std::vector<double> inner = spatial_derivative(w, grid, 1);
    for (std::size_t i = 0; i < inner.size(); ++i)
        inner[i] *= 1.0 + 3.0 * epsilon * zeta[i];
    std::vector<double> out = spatial_derivative(inner, grid, 1);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] /= -3.0 * (1.0 + epsilon * zeta[i]);
    return out;
}

std::vector<double> op_frakT(std::span<const double> w, const Grid1D& grid) {
    check_sizes(w.size(), grid, "op_frakT");
    std::vector<double> out = spatial_derivative(w, grid, 4);
    for (double& y : out) y *= -1.0 / 45.0;
    return out;
}

std::vector<double> op_Q(std::span<const double> v, const Grid1D& grid) {
    check_sizes(v.size(), grid, "op_Q");
    const std::vector<double> v1 = spatial_derivative(v, grid, 1);
    const std::vector<double> v2 = spatial_derivative(v, grid, 2);
    std::vector<double> inner(v.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        inner[i] = v[i] * v2[i] - v1[i] * v1[i];
    std::vector<double> out = spatial_derivative(inner, grid, 1);
    for (double& y : out) y *= -1.0 / 3.0;
    return out;
}

void assemble_residuals(const FieldSnapshot& s, const Grid1D& grid,
                        double epsilon, std::vector<double>& r1,
                        std::vector<double>& r2) {
    grid.validate();
    check_sizes(s.zeta.size(), grid, "assemble_residuals");
    check_sizes(s.v.size(), grid, "assemble_residuals");
    check_sizes(s.dt_zeta.size(), grid, "assemble_residuals");
    check_sizes(s.dt_v.size(), grid, "assemble_residuals");
    const auto n = s.zeta.size();

    // R1 = dt zeta + dx( (1 + eps zeta) v )
    std::vector<double> flux(n);
    for (std::size_t i = 0; i < n; ++i)
        flux[i] = (1.0 + epsilon * s.zeta[i]) * s.v[i];
    r1 = spatial_derivative(flux, grid, 1);
    for (std::size_t i = 0; i < n; ++i) r1[i] += s.dt_zeta[i];

    // R2 = (1 + eps T + eps^2 fT) dt v + dx zeta + eps v dx v + eps^2 Q v
    const std::vector<double> Tw = op_T(s.zeta, s.dt_v, grid, epsilon);
    const std::vector<double> fTw = op_frakT(s.dt_v, grid);
    const std::vector<double> Qv = op_Q(s.v, grid);
    const std::vector<double> dzeta = spatial_derivative(s.zeta, grid, 1);
    const std::vector<double> dv = spatial_derivative(s.v, grid, 1);
    r2.resize(n);
    const double e2 = epsilon * epsilon;
    for (std::size_t i = 0; i < n; ++i) {
        r2[i] = s.dt_v[i] + epsilon * Tw[i] + e2 * fTw[i] + dzeta[i] +
                epsilon * s.v[i] * dv[i] + e2 * Qv[i];
    }
}

ResidualFields residual_pair(const CorrectedSolution& sol, double t,
                             const Grid1D& grid, const ResidualOptions& opt) {
    sol.validate();
    grid.validate();
    if (!grid.periodic)
        throw std::invalid_argument("residual_pair: grid must be periodic");
    if (!(opt.dt > 0.0))
        throw std::invalid_argument("residual_pair: dt must be positive");
    const int threads = resolve_threads(opt.threads);

    const ModelParams& p = sol.params;
    const double e = p.epsilon;
    const double e2 = e * e;
    const double c = p.celerity_from_alpha();
    const auto n = static_cast<std::size_t>(grid.n);

    // Background values and analytic time derivatives (traveling frame).
    FieldSnapshot snap;
    snap.zeta.resize(n);
    snap.v.resize(n);
    std::vector<double> dtz_bg(n), dtv_bg(n);
    for (std::size_t i = 0; i < n; ++i) {
        const BackgroundJets bg = background_jets(p, t, grid.x(static_cast<int>(i)));
        snap.zeta[i] = bg.zeta1[0];
        snap.v[i] = bg.v1[0];
        dtz_bg[i] = -c * bg.zeta1[1];
        dtv_bg[i] = bg.w[0];
    }

    // Corrector values and finite-difference time derivatives.
    const CorrectorGrid cg0 = corrector_grid_mt(sol, t, grid, opt.gl_nodes, threads);
    const CorrectorGrid cm1 =
        corrector_grid_mt(sol, t - opt.dt, grid, opt.gl_nodes, threads);
    const CorrectorGrid cp1 =
        corrector_grid_mt(sol, t + opt.dt, grid, opt.gl_nodes, threads);
    const CorrectorGrid cm2 =
        corrector_grid_mt(sol, t - 2.0 * opt.dt, grid, opt.gl_nodes, threads);
    const CorrectorGrid cp2 =
        corrector_grid_mt(sol, t + 2.0 * opt.dt, grid, opt.gl_nodes, threads);

    std::vector<double> dtz2, dtv2;
    fd4_time(cm2, cm1, cp1, cp2, opt.dt, dtz2, dtv2);

    for (std::size_t i = 0; i < n; ++i) {
        snap.zeta[i] += e2 * cg0.zeta2[i];
        snap.v[i] += e2 * cg0.v2[i];
    }
    snap.dt_zeta.resize(n);
    snap.dt_v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        snap.dt_zeta[i] = dtz_bg[i] + e2 * dtz2[i];
        snap.dt_v[i] = dtv_bg[i] + e2 * dtv2[i];
    }

    ResidualFields out;
    out.grid = grid;
    out.t_eval = t;
    assemble_residuals(snap, grid, e, out.r1, out.r2);

    if (opt.richardson) {
        // Repeat with dt/2; the outer stencil levels are the current inner
        // ones, so only t -/+ dt/2 are new evaluations.
        const double dh = 0.5 * opt.dt;
        const CorrectorGrid hm1 =
            corrector_grid_mt(sol, t - dh, grid, opt.gl_nodes, threads);
        const CorrectorGrid hp1 =
            corrector_grid_mt(sol, t + dh, grid, opt.gl_nodes, threads);
        std::vector<double> dtz2h, dtv2h;
        fd4_time(cm1, hm1, hp1, cp1, dh, dtz2h, dtv2h);

        FieldSnapshot half = snap;
        for (std::size_t i = 0; i < n; ++i) {
            half.dt_zeta[i] = dtz_bg[i] + e2 * dtz2h[i];
            half.dt_v[i] = dtv_bg[i] + e2 * dtv2h[i];
        }
        std::vector<double> r1h, r2h;
        assemble_residuals(half, grid, e, r1h, r2h);

        const NormQuad a = norm_quad(out.r1, out.r2, grid.dx());
        const NormQuad b = norm_quad(r1h, r2h, grid.dx());
        double rel = rel_gap(a.r1w, b.r1w);
        rel = std::max(rel, rel_gap(a.r2w, b.r2w));
        rel = std::max(rel, rel_gap(a.r1i, b.r1i));
        rel = std::max(rel, rel_gap(a.r2i, b.r2i));
        out.richardson_rel = rel;
        out.richardson_flag = rel > 0.1;
    }
    return out;
}

ResidualReport residual_report(const CorrectedSolution& sol, double t,
                               const Grid1D& grid, const ResidualOptions& opt) {
    const ResidualFields f = residual_pair(sol, t, grid, opt);
    ResidualReport rep;
    rep.epsilon = sol.params.epsilon;
    rep.r1_l2 = raw_l2(f.r1);
    rep.r2_l2 = raw_l2(f.r2);
    rep.r1_l2w = discrete_norm(f.r1, grid.dx(), Norm::two);
    rep.r2_l2w = discrete_norm(f.r2, grid.dx(), Norm::two);
    rep.r1_inf = norm_inf(f.r1);
    rep.r2_inf = norm_inf(f.r2);
    rep.t_eval = t;
    rep.grid_half_width = 0.5 * grid.length();
    rep.grid_n = grid.n;
    rep.dt = opt.dt;
    rep.richardson_flag = f.richardson_flag;
    return rep;
}

void SweepConfig::validate() const {
    if (epsilons.empty())
        throw std::invalid_argument("SweepConfig: epsilons must be non-empty");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const double e = epsilons[i];
        if (!std::isfinite(e) || !(e > 0.0) || !(e <= 1.0))
            throw std::invalid_argument("SweepConfig: epsilons must lie in (0, 1]");
        if (i > 0 && !(e < epsilons[i - 1]))
            throw std::invalid_argument(
                "SweepConfig: epsilons must be strictly decreasing");
    }
    if (!(alpha > 0.0))
        throw std::invalid_argument("SweepConfig: alpha must be positive");
    if (!(t_eval >= 0.0))
        throw std::invalid_argument("SweepConfig: t_eval must be non-negative");
    grid.validate();
    if (!grid.periodic)
        throw std::invalid_argument("SweepConfig: grid must be periodic");
    if (!(fit_min > 0.0) || !(fit_max > fit_min))
        throw std::invalid_argument("SweepConfig: need 0 < fit_min < fit_max");
}

SweepResult residual_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult out;
    out.reports.reserve(cfg.epsilons.size());

    std::vector<double> fit_eps, fit_r1l2, fit_r2l2, fit_r1inf, fit_r2inf;
    for (const double eps : cfg.epsilons) {
        ModelParams p;
        p.epsilon = eps;
        p.alpha = cfg.alpha;
        CorrectedSolution sol;
        sol.params = p;
        sol.zeta2_0 = gaussian_datum();
        sol.v2_0 = gaussian_datum();
        sol.opt.quadrature_tol = cfg.quadrature_tol;
        sol.opt.forcing = cfg.forcing;
        const ResidualReport rep =
            residual_report(sol, cfg.t_eval, cfg.grid, cfg.resid);
        out.reports.push_back(rep);
        if (eps >= cfg.fit_min * (1.0 - 1e-12) &&
            eps <= cfg.fit_max * (1.0 + 1e-12)) {
            fit_eps.push_back(eps);
            fit_r1l2.push_back(rep.r1_l2);
            fit_r2l2.push_back(rep.r2_l2);
            fit_r1inf.push_back(rep.r1_inf);
            fit_r2inf.push_back(rep.r2_inf);
        }
    }

    // The slope fit needs at least three points; below that no fit runs and
    // fit_points stays 0 so the zero slopes cannot be mistaken for a result.
    if (fit_eps.size() >= 3) {
        out.fit_points = static_cast<int>(fit_eps.size());
        out.slope_r1_l2 = loglog_slope(fit_eps, fit_r1l2);
        out.slope_r2_l2 = loglog_slope(fit_eps, fit_r2l2);
        out.slope_r1_inf = loglog_slope(fit_eps, fit_r1inf);
        out.slope_r2_inf = loglog_slope(fit_eps, fit_r2inf);
    }
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("loglog_slope: need >= 3 matching points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("loglog_slope: points must be positive");
        const double lx = std::log10(x[i]);
        const double ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-30)
        throw std::invalid_argument("loglog_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace bq
