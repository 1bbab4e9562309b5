// Shared parameter, grid and field types used by every module.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bq {

// Model parameters of the long-wave system.
//
// epsilon is the nonlinearity parameter (amplitude over depth).  Traveling-wave
// work is parameterized by the wave speed c > 1; the corrector background is
// parameterized by the amplitude alpha, from which the speed follows as
// c = sqrt(1/(1 - alpha*epsilon)) and the profile wavenumber as k = sqrt(3*alpha/4).
struct ModelParams {
    double epsilon = 1.0;
    double celerity = 0.0;  // c; used by the traveling-wave modules
    double alpha = 0.0;     // amplitude parameter; used by the corrector modules

    double k() const { return std::sqrt(0.75 * alpha); }
    double celerity_from_alpha() const {
        return std::sqrt(1.0 / (1.0 - alpha * epsilon));
    }

    void validate_epsilon() const {
        if (!(epsilon > 0.0) || !(epsilon <= 1.0))
            throw std::invalid_argument("ModelParams: epsilon must lie in (0, 1], got " +
                                        std::to_string(epsilon));
    }
    // Preconditions for the traveling-wave solvers.
    void validate_traveling() const {
        validate_epsilon();
        if (!(celerity > 1.0))
            throw std::invalid_argument("ModelParams: traveling waves need c > 1, got c = " +
                                        std::to_string(celerity));
    }
    // Preconditions for the corrector background (solitary reference wave).
    void validate_corrector() const {
        validate_epsilon();
        if (!(alpha > 0.0) || !(alpha * epsilon < 1.0))
            throw std::invalid_argument(
                "ModelParams: corrector background needs 0 < alpha and alpha*epsilon < 1");
    }
};

// Uniform one-dimensional grid.  Periodic grids exclude the right endpoint
// (x_i = x_min + i*dx, dx = L/n); non-periodic grids include both endpoints
// (dx = L/(n-1)).
struct Grid1D {
    double x_min = -50.0;
    double x_max = 50.0;
    int n = 4096;
    bool periodic = true;

    double length() const { return x_max - x_min; }
    double dx() const { return periodic ? length() / n : length() / (n - 1); }
    double x(int i) const { return x_min + i * dx(); }

    std::vector<double> nodes() const {
        std::vector<double> xs(static_cast<std::size_t>(n));
        const double h = dx();
        for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = x_min + i * h;
        return xs;
    }

    void validate() const {
        if (n < 8) throw std::invalid_argument("Grid1D: n must be >= 8");
        if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
        if (!std::isfinite(x_min) || !std::isfinite(x_max))
            throw std::invalid_argument("Grid1D: non-finite extent");
    }
};

// Sampled (zeta, v) pair on a grid at a fixed time.  The fluid height is
// h = 1 + epsilon*zeta and must stay positive at every node.
struct WaveField {
    Grid1D grid;
    std::vector<double> zeta;
    std::vector<double> v;
    double time = 0.0;

    void validate(double epsilon) const {
        grid.validate();
        if (zeta.size() != static_cast<std::size_t>(grid.n) ||
            v.size() != static_cast<std::size_t>(grid.n))
            throw std::invalid_argument("WaveField: sample count must equal grid.n");
        for (std::size_t i = 0; i < zeta.size(); ++i) {
            if (!(1.0 + epsilon * zeta[i] > 0.0))
                throw std::invalid_argument("WaveField: depth 1+eps*zeta vanished at node " +
                                            std::to_string(i));
        }
    }
};

}  // namespace bq
