// Quadrature helpers used by the corrector's characteristic integrals.
//
// Two flavours:
//  - adaptive Gauss-Kronrod (G7,K15) with deterministic global refinement,
//    for pointwise evaluation at a requested tolerance;
//  - fixed-order Gauss-Legendre, for grid sweeps where the *smoothness* of
//    the quadrature error in x matters more than its size (an adaptive rule
//    changes its subdivision from one x to the next, and that jitter is later
//    amplified by high-order spatial derivatives).
#pragma once

#include <functional>
#include <vector>

namespace bq {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

// Adaptive G7K15 over [a, b].  Splits the worst interval until the summed
// Kronrod error estimate is below max(abs_tol, rel_tol*|integral|) or the
// interval budget is exhausted (converged=false then; value still returned).
QuadResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                  double a, double b,
                                  double abs_tol = 1e-10,
                                  double rel_tol = 1e-10,
                                  int max_intervals = 2000);

// Fixed n-point Gauss-Legendre over [a, b].  Nodes/weights are computed once
// per n (Newton on Legendre polynomials) and cached.
double fixed_gauss_legendre(const std::function<double(double)>& f,
                            double a, double b, int n);

// Nodes and weights for n-point Gauss-Legendre on [-1, 1] (cached).
void gauss_legendre_rule(int n, std::vector<double>& nodes,
                         std::vector<double>& weights);

// Composite Simpson with a fixed panel count (used as an independent
// cross-check of the adaptive rule; panels must be even).
double composite_simpson(const std::function<double(double)>& f,
                         double a, double b, int panels);

}  // namespace bq
