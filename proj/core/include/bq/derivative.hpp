// Spatial differentiation on uniform grids.
//
// Periodic grids: trigonometric (FFT) differentiation, exact for resolved
// Fourier modes.  Non-periodic grids: centered finite differences of 8th-order
// accuracy in the interior with shifted (one-sided) stencils of the same order
// and length near the boundaries; the field must have decayed to <= 1e-12 at
// both ends, since one-sided closures on a non-decayed field would pollute the
// result.
#pragma once

#include <span>
#include <vector>

#include "bq/types.hpp"

namespace bq {

// d^order/dx^order of f sampled on the grid, order in 1..5.
std::vector<double> spatial_derivative(std::span<const double> f, const Grid1D& grid,
                                       int order);

// Finite-difference weights for the m-th derivative at evaluation point z given
// stencil node offsets (in grid-spacing units).  Classic recursive algorithm;
// exposed for tests and for callers that need custom stencils.
std::vector<double> fd_weights(double z, std::span<const double> offsets, int m);

}  // namespace bq
