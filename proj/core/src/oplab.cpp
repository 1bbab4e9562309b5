#include "bq/oplab.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "bq/derivative.hpp"
#include "bq/norms.hpp"

namespace bq {

namespace {

// Minimal r2c/c2r transform pair with per-size plan caching.  FFTW planning
// and execution on shared buffers are serialized; the transforms here are
// short compared to the surrounding linear algebra.
struct FftPlans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    int n = 0;
};

std::mutex g_fft_mutex;
std::map<int, FftPlans>& plan_cache() {
    static std::map<int, FftPlans> cache;
    return cache;
}

FftPlans& plans_for(int n) {
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    FftPlans p;
    p.n = n;
    p.real = fftw_alloc_real(static_cast<std::size_t>(n));
    p.spec = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    p.fwd = fftw_plan_dft_r2c_1d(n, p.real, p.spec, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r_1d(n, p.spec, p.real, FFTW_ESTIMATE);
    if (!p.fwd || !p.bwd) throw std::runtime_error("oplab: FFTW planning failed");
    return cache.emplace(n, p).first->second;
}

std::vector<std::complex<double>> spectrum(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    std::scoped_lock lock(g_fft_mutex);
    FftPlans& p = plans_for(n);
    for (int i = 0; i < n; ++i) p.real[i] = f[static_cast<std::size_t>(i)];
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = {p.spec[k][0], p.spec[k][1]};
    return out;
}

std::vector<double> from_spectrum(const std::vector<std::complex<double>>& s,
                                  int n) {
    std::scoped_lock lock(g_fft_mutex);
    FftPlans& p = plans_for(n);
    for (std::size_t k = 0; k < s.size(); ++k) {
        p.spec[k][0] = s[k].real();
        p.spec[k][1] = s[k].imag();
    }
    fftw_execute(p.bwd);
    std::vector<double> out(static_cast<std::size_t>(n));
    const double inv = 1.0 / n;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = p.real[i] * inv;
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Apply the constant-depth symbol inverse: the preconditioner of the CG loop.
std::vector<double> precondition(std::span<const double> r, const Grid1D& grid,
                                 double epsilon) {
    auto s = spectrum(r);
    const double k0 = 2.0 * M_PI / grid.length();
    for (std::size_t m = 0; m < s.size(); ++m)
        s[m] /= symbol_I(k0 * static_cast<double>(m), epsilon);
    return from_spectrum(s, grid.n);
}

}  // namespace

void OperatorContext::validate() const {
    grid.validate();
    if (!grid.periodic)
        throw std::invalid_argument("OperatorContext: grid must be periodic");
    if (zeta.size() != static_cast<std::size_t>(grid.n))
        throw std::invalid_argument("OperatorContext: zeta size must equal grid.n");
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument("OperatorContext: epsilon must lie in (0, 1]");
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        const double h = 1.0 + epsilon * zeta[i];
        if (!(h > 0.0)) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "OperatorContext: depth 1+eps*zeta = %.3g at node %zu",
                          h, i);
            throw std::invalid_argument(buf);
        }
    }
}

double symbol_I(double k, double epsilon) {
    const double k2 = k * k;
    return 1.0 + epsilon * k2 / 3.0 + epsilon * epsilon * k2 * k2 / 45.0;
}

std::vector<double> apply_I(const OperatorContext& ctx,
                            std::span<const double> w) {
    ctx.validate();
    if (w.size() != static_cast<std::size_t>(ctx.grid.n))
        throw std::invalid_argument("apply_I: w size must equal grid.n");
    const auto n = w.size();
    const double e = ctx.epsilon;

    std::vector<double> dw = spatial_derivative(w, ctx.grid, 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 1.0 + e * ctx.zeta[i];
        dw[i] *= h * h * h;
    }
    const std::vector<double> flux = spatial_derivative(dw, ctx.grid, 1);
    const std::vector<double> d4 = spatial_derivative(w, ctx.grid, 4);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 1.0 + e * ctx.zeta[i];
        out[i] = h * w[i] - (e / 3.0) * flux[i] + (e * e / 45.0) * d4[i];
    }
    return out;
}

std::vector<double> invert_I(const OperatorContext& ctx,
                             std::span<const double> f, double tol,
                             int max_iter, InvertStats* stats) {
    ctx.validate();
    if (f.size() != static_cast<std::size_t>(ctx.grid.n))
        throw std::invalid_argument("invert_I: f size must equal grid.n");
    if (!(tol > 0.0)) throw std::invalid_argument("invert_I: tol must be positive");
    const auto n = f.size();

    const double norm_f = raw_l2(f);
    std::vector<double> x(n, 0.0);
    if (norm_f == 0.0) {
        if (stats) *stats = {0, 0.0, true};
        return x;
    }

    std::vector<double> r(f.begin(), f.end());
    std::vector<double> z = precondition(r, ctx.grid, ctx.epsilon);
    std::vector<double> p = z;
    double rz = dot(r, z);
    int it = 0;
    for (; it < max_iter; ++it) {
        if (raw_l2(r) <= 0.5 * tol * norm_f) break;
        const std::vector<double> Ap = apply_I(ctx, p);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0))
            throw std::runtime_error("invert_I: operator lost positivity");
        const double alpha = rz / pAp;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        z = precondition(r, ctx.grid, ctx.epsilon);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    // Explicit post-check against the assembled operator.
    const std::vector<double> Ax = apply_I(ctx, x);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = Ax[i] - f[i];
        err += d * d;
    }
    const double rel = std::sqrt(err) / norm_f;
    if (stats) *stats = {it, rel, rel <= tol};
    if (rel > tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "invert_I: residual %.3e exceeds tol %.3e after %d iterations",
                      rel, tol, it);
        throw std::runtime_error(buf);
    }
    return x;
}

double hs_norm(std::span<const double> f, const Grid1D& grid, double s) {
    grid.validate();
    if (!grid.periodic)
        throw std::invalid_argument("hs_norm: grid must be periodic");
    if (f.size() != static_cast<std::size_t>(grid.n))
        throw std::invalid_argument("hs_norm: f size must equal grid.n");
    const auto spec = spectrum(f);
    const double k0 = 2.0 * M_PI / grid.length();
    const int n = grid.n;
    double acc = 0.0;
    for (std::size_t m = 0; m < spec.size(); ++m) {
        const double k = k0 * static_cast<double>(m);
        const double w = std::pow(1.0 + k * k, s) * std::norm(spec[m]);
        // Real-input spectra carry conjugate pairs; double all interior modes.
        const bool paired = m != 0 && !(n % 2 == 0 && m == spec.size() - 1);
        acc += paired ? 2.0 * w : w;
    }
    return std::sqrt(grid.dx() / n * acc);
}

std::vector<double> random_smooth_field(const Grid1D& grid, unsigned seed,
                                        int cutoff, double amplitude) {
    grid.validate();
    if (cutoff < 1 || cutoff >= grid.n / 2)
        throw std::invalid_argument("random_smooth_field: cutoff out of range");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(cutoff)),
        b(static_cast<std::size_t>(cutoff));
    for (int m = 0; m < cutoff; ++m) {
        a[static_cast<std::size_t>(m)] = coef(rng);
        b[static_cast<std::size_t>(m)] = coef(rng);
    }
    std::vector<double> f(static_cast<std::size_t>(grid.n), 0.0);
    const double k0 = 2.0 * M_PI / grid.length();
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i) - grid.x_min;
        double y = 0.0;
        for (int m = 1; m <= cutoff; ++m) {
            y += a[static_cast<std::size_t>(m - 1)] * std::cos(k0 * m * x) +
                 b[static_cast<std::size_t>(m - 1)] * std::sin(k0 * m * x);
        }
        f[static_cast<std::size_t>(i)] = y;
    }
    const double peak = norm_inf(f);
    if (peak > 0.0)
        for (double& y : f) y *= amplitude / peak;
    return f;
}

std::vector<ScalingRow> inverse_scaling_probe(const Grid1D& grid,
                                              std::span<const double> zeta,
                                              std::span<const double> f,
                                              double s,
                                              std::span<const double> epsilons,
                                              double tol) {
    if (epsilons.empty())
        throw std::invalid_argument("inverse_scaling_probe: need at least one epsilon");
    const double den = hs_norm(f, grid, s);
    if (!(den > 0.0))
        throw std::invalid_argument("inverse_scaling_probe: data f must be nonzero");
    std::vector<ScalingRow> rows;
    rows.reserve(epsilons.size());
    for (const double e : epsilons) {
        OperatorContext ctx;
        ctx.grid = grid;
        ctx.zeta.assign(zeta.begin(), zeta.end());
        ctx.epsilon = e;
        const std::vector<double> w = invert_I(ctx, f, tol);
        const std::vector<double> dw = spatial_derivative(w, grid, 1);
        const std::vector<double> d2w = spatial_derivative(w, grid, 2);
        ScalingRow row;
        row.epsilon = e;
        row.ratio0 = hs_norm(w, grid, s) / den;
        row.ratio1 = std::sqrt(e) * hs_norm(dw, grid, s) / den;
        row.ratio2 = e * hs_norm(d2w, grid, s) / den;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bq
