// Residue evaluation for the higher-order Boussinesq system.
//
// For a field pair (zeta, v) with h = 1 + eps*zeta the two residues are
//
//   R1 = dt zeta + dx(h v)
//   R2 = (1 + eps*T[zeta] + eps^2*fT) dt v + dx zeta + eps v dx v + eps^2 Q v
//
// with the operators
//
//   T[zeta] w = -1/(3h) dx( (1 + 3 eps zeta) dx w )
//   fT w     = -(1/45) dx^4 w
//   Q v      = -(1/3) dx( v dx^2 v - (dx v)^2 )
//
// Evaluated on the corrected family zeta1 + eps^2 zeta2, v1 + eps^2 v2, both
// residues shrink like eps^3; the sweep below measures that rate and is the
// lab's main convergence experiment.
#pragma once

#include <span>
#include <vector>

#include "bq/corrector.hpp"
#include "bq/types.hpp"

namespace bq {

// The three model operators on a periodic grid (spectral derivatives).
std::vector<double> op_T(std::span<const double> zeta,
                         std::span<const double> w, const Grid1D& grid,
                         double epsilon);
std::vector<double> op_frakT(std::span<const double> w, const Grid1D& grid);
std::vector<double> op_Q(std::span<const double> v, const Grid1D& grid);

// Field snapshot at one time: values and time derivatives on the grid.
struct FieldSnapshot {
    std::vector<double> zeta;
    std::vector<double> v;
    std::vector<double> dt_zeta;
    std::vector<double> dt_v;
};

// Assemble both residues from a snapshot.  This is the single evaluation
// path; every residual in the lab (background, corrected family,
// manufactured cases) goes through it.
void assemble_residuals(const FieldSnapshot& s, const Grid1D& grid,
                        double epsilon, std::vector<double>& r1,
                        std::vector<double>& r2);

struct ResidualOptions {
    double dt = 1e-3;      // step for the corrector-part time derivative
    int gl_nodes = 100;    // fixed quadrature order for grid evaluations
    bool richardson = true;  // re-run the time derivative at dt/2 and compare
    int threads = 0;       // 0 = serial
};

struct ResidualFields {
    std::vector<double> r1;
    std::vector<double> r2;
    Grid1D grid;
    double t_eval = 0.0;
    // Richardson consistency of the finite-difference time derivative:
    // relative disagreement of the residual norms between dt and dt/2.
    double richardson_rel = 0.0;
    bool richardson_flag = false;  // true when the disagreement exceeds 10%
};

// Residues of the corrected family at time t.  Time derivatives are hybrid:
// the background part is analytic (traveling frame), only the eps^2 corrector
// part uses a centered 4th-order difference in t with step opt.dt.
ResidualFields residual_pair(const CorrectedSolution& sol, double t,
                             const Grid1D& grid,
                             const ResidualOptions& opt = {});

struct ResidualReport {
    double epsilon = 0.0;
    // Norms in both conventions: *_l2 is the raw vector 2-norm
    // sqrt(sum r_i^2), *_l2w the grid-weighted norm sqrt(dx * sum r_i^2).
    double r1_l2 = 0.0;
    double r2_l2 = 0.0;
    double r1_l2w = 0.0;
    double r2_l2w = 0.0;
    double r1_inf = 0.0;
    double r2_inf = 0.0;
    double t_eval = 0.0;
    double grid_half_width = 0.0;
    int grid_n = 0;
    double dt = 0.0;
    bool richardson_flag = false;
};

ResidualReport residual_report(const CorrectedSolution& sol, double t,
                               const Grid1D& grid,
                               const ResidualOptions& opt = {});

struct SweepConfig {
    std::vector<double> epsilons = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    double alpha = 1.0;
    double t_eval = 1.0;
    Grid1D grid;  // defaults: [-50, 50], n = 4096, periodic
    ResidualOptions resid;
    ForcingModel forcing = ForcingModel::compensated;
    double quadrature_tol = 1e-10;
    // Slope fit window; epsilons outside it (notably 1e-5, which sits on the
    // evaluation rounding floor) are excluded from the fit.
    double fit_min = 1e-4;
    double fit_max = 1e-1;

    void validate() const;  // epsilons finite, strictly decreasing, in (0,1]
};

struct SweepResult {
    std::vector<ResidualReport> reports;
    // Least-squares slopes of log10(norm) against log10(eps) over the fit
    // window (raw l2 and sup norms).  The fit requires at least three window
    // points; otherwise fit_points is 0 and the slopes keep their zero
    // defaults (no fit was performed).
    double slope_r1_l2 = 0.0;
    double slope_r2_l2 = 0.0;
    double slope_r1_inf = 0.0;
    double slope_r2_inf = 0.0;
    int fit_points = 0;
};

SweepResult residual_sweep(const SweepConfig& cfg);

// Least-squares slope of log10(y) vs log10(x); requires >= 3 points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace bq
