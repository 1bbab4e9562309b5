// Probes of the dispersive operator
//
//   J w = h w - (eps/3) dx( h^3 dx w ) + (eps^2/45) dx^4 w,   h = 1 + eps*zeta,
//
// which multiplies dt v in the conservative form of the model.  J is
// symmetric positive definite on a periodic grid; its Fourier symbol at
// zeta == 0 is 1 + (eps/3) k^2 + (eps^2/45) k^4.  The probes here check
// symmetry, positivity, invertibility, and the eps-weighted inverse bounds
// that make the operator useful analytically.
#pragma once

#include <span>
#include <vector>

#include "bq/types.hpp"

namespace bq {

struct OperatorContext {
    Grid1D grid;  // must be periodic
    std::vector<double> zeta;
    double epsilon = 1.0;

    // Throws unless the grid is periodic, zeta matches it, epsilon is in
    // (0, 1], and the depth h = 1 + eps*zeta stays positive everywhere.
    void validate() const;
};

// Fourier symbol of J at zeta == 0.
double symbol_I(double k, double epsilon);

std::vector<double> apply_I(const OperatorContext& ctx,
                            std::span<const double> w);

struct InvertStats {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

// Solve J w = f by conjugate gradients preconditioned with the constant-depth
// symbol.  Postcondition: ||apply_I(w) - f||_2 <= tol * ||f||_2 (throws
// std::runtime_error otherwise).
std::vector<double> invert_I(const OperatorContext& ctx,
                             std::span<const double> f, double tol = 1e-12,
                             int max_iter = 500, InvertStats* stats = nullptr);

// Sobolev norm by Fourier weights: sqrt( (dx/n) * sum (1+k^2)^s |f_hat_k|^2 ).
double hs_norm(std::span<const double> f, const Grid1D& grid, double s);

// Deterministic random smooth periodic field: seeded Fourier coefficients on
// modes 1..cutoff, scaled so the max amplitude is `amplitude`.
std::vector<double> random_smooth_field(const Grid1D& grid, unsigned seed,
                                        int cutoff = 16,
                                        double amplitude = 1.0);

// eps-scaling probe of the inverse: for each eps, with the same zeta shape
// and data f, the rows report
//   ratio0 = ||J^{-1} f||_{H^s}           / ||f||_{H^s}
//   ratio1 = sqrt(eps) ||dx J^{-1} f||_{H^s} / ||f||_{H^s}
//   ratio2 = eps ||dx^2 J^{-1} f||_{H^s}  / ||f||_{H^s}
// All three stay bounded (uniformly in eps) for the true operator.
struct ScalingRow {
    double epsilon = 0.0;
    double ratio0 = 0.0;
    double ratio1 = 0.0;
    double ratio2 = 0.0;
};
std::vector<ScalingRow> inverse_scaling_probe(const Grid1D& grid,
                                              std::span<const double> zeta,
                                              std::span<const double> f,
                                              double s,
                                              std::span<const double> epsilons,
                                              double tol = 1e-12);

}  // namespace bq
