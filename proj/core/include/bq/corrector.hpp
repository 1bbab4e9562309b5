// Second-order corrector of the solitary-wave family.
//
// Writing the family as zeta = zeta1 + eps^2*zeta2, v = v1 + eps^2*v2, the
// corrector pair (zeta2, v2) solves a linear wave system with a forcing f
// built from the background (zeta1, v1), and is given in closed form by the
// d'Alembert representation
//
//   zeta2 = 1/2 [ (z0+v0)(x-t) + (z0-v0)(x+t) + I1 - I2 ],
//   v2    = 1/2 [ (z0+v0)(x-t) - (z0-v0)(x+t) + I1 + I2 ],
//
//   I1 = int_0^t f(s, x-t+s) ds,   I2 = int_0^t f(s, x+t-s) ds,
//
// with (z0, v0) the corrector's initial data.  Two forcing models are
// provided: `printed` is the literal second-order forcing expression, and
// `compensated` (the default) is minus the full model residue of the
// background divided by eps^2, which shares its operator form with the
// residual evaluator so that the background contribution cancels exactly.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bq/types.hpp"

namespace bq {

enum class ForcingModel {
    compensated,  // f = -(background residue)/eps^2, exact cancellation form
    printed,      // literal closed-form forcing
};

// Value plus x-derivatives of orders 1..5 at a point.
struct JetValue {
    double value = 0.0;
    std::array<double, 5> deriv{};  // deriv[m-1] = m-th x-derivative

    double operator[](int order) const {
        return order == 0 ? value : deriv[static_cast<std::size_t>(order - 1)];
    }
};

// Background fields at (t, x) as exact jets: v1 to order 5, dt_v1 to order 4
// (dt v1 = -c dx v1 by the traveling structure), zeta1 to order 5.
struct BackgroundJetValues {
    JetValue zeta1;
    JetValue v1;
    JetValue dt_v1;  // deriv[4] unused (stays 0)
};

BackgroundJetValues jet_v1(const ModelParams& p, double t, double x);

// Forcing at (t, x) under the chosen model.
double forcing_f(const ModelParams& p, double t, double x,
                 ForcingModel model = ForcingModel::compensated);

using ScalarFn = std::function<double(double)>;

// Gaussian initial datum used throughout the validation runs:
//   g(y) = exp(-(3*pi*y/10)^2).
ScalarFn gaussian_datum();

struct CorrectorOptions {
    double quadrature_tol = 1e-10;  // adaptive tolerance for pointwise evals
    ForcingModel forcing = ForcingModel::compensated;
    double horizon = 1.0;  // corrected_eval is valid for 0 <= t <= horizon/sqrt(eps)
};

struct CorrectedSolution {
    ModelParams params;
    ScalarFn zeta2_0;  // corrector initial elevation
    ScalarFn v2_0;     // corrector initial velocity
    CorrectorOptions opt;

    void validate() const;  // params + handles present
};

// Both characteristic integrals at (t, x), adaptive quadrature to
// opt.quadrature_tol.  i1 rides the leftgoing foot x-t+s, i2 the rightgoing
// foot x+t-s.
struct CharIntegrals {
    double i1 = 0.0;
    double i2 = 0.0;
};
CharIntegrals characteristic_integrals(const CorrectedSolution& sol, double t,
                                       double x);

// Corrector pair at (t, x); t = 0 returns the initial data exactly.
struct CorrectorValue {
    double zeta2 = 0.0;
    double v2 = 0.0;
};
CorrectorValue transport_pair(const CorrectedSolution& sol, double t,
                              double x);

// Full corrected family zeta1 + eps^2*zeta2, v1 + eps^2*v2 at (t, x).
// Precondition: 0 <= t <= opt.horizon/sqrt(eps).
struct FamilyValue {
    double zeta = 0.0;
    double v = 0.0;
};
FamilyValue corrected_eval(const CorrectedSolution& sol, double t, double x);

// Corrector pair on a whole grid at time t.  The characteristic integrals
// are evaluated with a fixed Gauss-Legendre rule (gl_nodes points) instead of
// the adaptive one: a fixed rule has a quadrature error that varies smoothly
// in x, which matters because the residual evaluator later applies high-order
// spatial derivatives to these fields.
struct CorrectorGrid {
    std::vector<double> zeta2;
    std::vector<double> v2;
};
CorrectorGrid corrector_grid(const CorrectedSolution& sol, double t,
                             const Grid1D& grid, int gl_nodes = 100);

// Family fields on a grid at time t (background jets + corrector_grid).
void corrected_eval_grid(const CorrectedSolution& sol, double t,
                         const Grid1D& grid, std::vector<double>& zeta,
                         std::vector<double>& v, int gl_nodes = 100);

}  // namespace bq
