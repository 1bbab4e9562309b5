#include "bq/derivative.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bq {

namespace {

// One cached FFTW plan pair (and its transform buffers) per grid size.
// Plans are created once with FFTW_ESTIMATE; the mutex serializes transforms,
// which keeps the shared buffers safe when callers differentiate from
// multiple threads.
struct PlanPair {
    std::size_t n = 0;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_fft_mutex;

PlanPair& plan_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanPair p;
    p.n = n;
    p.rbuf = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    p.cbuf = static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    if (!p.rbuf || !p.cbuf) throw std::bad_alloc();
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), p.rbuf, p.cbuf,
                                 FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), p.cbuf, p.rbuf,
                                 FFTW_ESTIMATE);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

std::vector<double> spectral_derivative(std::span<const double> f,
                                        const Grid1D& grid, int order) {
    const std::size_t n = f.size();
    const double length = grid.x_max - grid.x_min;
    std::vector<double> out(n);

    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanPair& p = plan_for(n);
    for (std::size_t i = 0; i < n; ++i) p.rbuf[i] = f[i];
    fftw_execute(p.fwd);

    const double base_k = 2.0 * M_PI / length;
    const std::size_t half = n / 2;
    for (std::size_t j = 0; j <= half; ++j) {
        std::complex<double> c(p.cbuf[j][0], p.cbuf[j][1]);
        if (2 * j == n && (order % 2) != 0) {
            // The Nyquist mode has no well-defined odd derivative on the
            // real grid; drop it.
            c = 0.0;
        } else {
            const std::complex<double> ik(0.0, base_k * static_cast<double>(j));
            for (int m = 0; m < order; ++m) c *= ik;
        }
        p.cbuf[j][0] = c.real();
        p.cbuf[j][1] = c.imag();
    }
    fftw_execute(p.bwd);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = p.rbuf[i] * scale;
    return out;
}

std::vector<double> fd_derivative(std::span<const double> f,
                                  const Grid1D& grid, int order) {
    const std::size_t n = f.size();
    const double dx = grid.dx();
    // order + 8 points give >= 8th-order accuracy even for the one-sided
    // closures at the ends.
    const std::size_t width = static_cast<std::size_t>(order) + 8;
    if (n < width)
        throw std::invalid_argument(
            "spatial_derivative: grid too small for the finite-difference "
            "stencil");

    // Distinct stencil layouts: the evaluation point can sit at offset
    // 0..width-1 inside the stencil.  Weights are computed in integer grid
    // units and scaled by dx^-order.
    std::vector<double> offsets(width);
    std::vector<std::vector<double>> wtab(width);
    const double scale = std::pow(dx, -order);
    for (std::size_t pos = 0; pos < width; ++pos) {
        for (std::size_t j = 0; j < width; ++j)
            offsets[j] =
                static_cast<double>(j) - static_cast<double>(pos);
        wtab[pos] = fd_weights(0.0, offsets, order);
        for (double& w : wtab[pos]) w *= scale;
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t start;
        if (i < width / 2)
            start = 0;
        else if (i + (width - width / 2) > n)
            start = n - width;
        else
            start = i - width / 2;
        const std::size_t pos = i - start;
        const std::vector<double>& w = wtab[pos];
        double acc = 0.0;
        for (std::size_t j = 0; j < width; ++j) acc += w[j] * f[start + j];
        out[i] = acc;
    }
    return out;
}

}  // namespace

std::vector<double> fd_weights(double z, std::span<const double> offsets,
                               int m) {
    // Fornberg's recursion for finite-difference weights on arbitrary nodes.
    const std::size_t nn = offsets.size();
    if (nn == 0 || m < 0 || static_cast<std::size_t>(m) >= nn)
        throw std::invalid_argument("fd_weights: need more nodes than the "
                                    "derivative order");
    std::vector<std::vector<double>> C(nn,
                                       std::vector<double>(m + 1, 0.0));
    C[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = offsets[0] - z;
    for (std::size_t i = 1; i < nn; ++i) {
        const int mn = static_cast<int>(std::min<std::size_t>(i, m));
        double c2 = 1.0;
        const double c5 = c4;
        c4 = offsets[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nn);
    for (std::size_t j = 0; j < nn; ++j) w[j] = C[j][m];
    return w;
}

std::vector<double> spatial_derivative(std::span<const double> f,
                                       const Grid1D& grid, int order) {
    grid.validate();
    if (order < 1 || order > 5)
        throw std::invalid_argument("spatial_derivative: order must be 1..5");
    if (f.size() != static_cast<std::size_t>(grid.n))
        throw std::invalid_argument(
            "spatial_derivative: sample count does not match grid");

    if (grid.periodic) return spectral_derivative(f, grid, order);

    const double lo = std::abs(f.front());
    const double hi = std::abs(f.back());
    if (!(lo <= 1e-12 && hi <= 1e-12)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "spatial_derivative: non-periodic data must decay to "
                      "<= 1e-12 at the boundaries (left %.3e, right %.3e)",
                      lo, hi);
        throw std::invalid_argument(buf);
    }
    return fd_derivative(f, grid, order);
}

}  // namespace bq
