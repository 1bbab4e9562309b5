// Micro-benchmarks for the hot paths: jet evaluation, quadrature, spectral
// differentiation, residue assembly, the dispersive operator, and the
// complete solitary solve.  Run with --benchmark_filter=... to focus.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bq/corrector.hpp"
#include "bq/derivative.hpp"
#include "bq/jets.hpp"
#include "bq/oplab.hpp"
#include "bq/quadrature.hpp"
#include "bq/refwaves.hpp"
#include "bq/residuals.hpp"
#include "bq/solitary.hpp"

namespace {

bq::ModelParams corrector_params(double eps) {
    bq::ModelParams p;
    p.epsilon = eps;
    p.alpha = 1.0;
    return p;
}

void BM_background_jets(benchmark::State& state) {
    const bq::ModelParams p = corrector_params(0.1);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bq::background_jets(p, 0.3, x));
        x += 1e-6;  // defeat value caching without changing the work
    }
}
BENCHMARK(BM_background_jets);

void BM_forcing_eval(benchmark::State& state) {
    const bq::ModelParams p = corrector_params(0.1);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bq::forcing_f(p, 0.4, x, bq::ForcingModel::compensated));
        x += 1e-6;
    }
}
BENCHMARK(BM_forcing_eval);

void BM_adaptive_quadrature(benchmark::State& state) {
    const bq::ModelParams p = corrector_params(0.1);
    for (auto _ : state) {
        bq::QuadResult q = bq::adaptive_gauss_kronrod(
            [&](double s) {
                return bq::forcing_f(p, s, s - 1.0, bq::ForcingModel::compensated);
            },
            0.0, 1.0, 1e-10, 1e-10);
        benchmark::DoNotOptimize(q.value);
    }
}
BENCHMARK(BM_adaptive_quadrature);

void BM_spectral_derivative(benchmark::State& state) {
    bq::Grid1D g;  // 4096 nodes
    std::vector<double> f(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) f[(size_t)i] = std::exp(-0.05 * g.x(i) * g.x(i));
    for (auto _ : state)
        benchmark::DoNotOptimize(bq::spatial_derivative(f, g, 2));
}
BENCHMARK(BM_spectral_derivative);

void BM_residual_assembly(benchmark::State& state) {
    const bq::ModelParams p = corrector_params(0.1);
    const double c = p.celerity_from_alpha();
    bq::Grid1D grid;
    bq::FieldSnapshot s;
    const int n = grid.n;
    s.zeta.resize((size_t)n);
    s.v.resize((size_t)n);
    s.dt_zeta.resize((size_t)n);
    s.dt_v.resize((size_t)n);
    for (int i = 0; i < n; ++i) {
        bq::ReferenceWave w = bq::boussinesq_solitary(p, 0.0, grid.x(i));
        s.zeta[(size_t)i] = w.zeta;
        s.v[(size_t)i] = w.v;
    }
    auto dz = bq::spatial_derivative(s.zeta, grid, 1);
    auto dv = bq::spatial_derivative(s.v, grid, 1);
    for (int i = 0; i < n; ++i) {
        s.dt_zeta[(size_t)i] = -c * dz[(size_t)i];
        s.dt_v[(size_t)i] = -c * dv[(size_t)i];
    }
    std::vector<double> r1, r2;
    for (auto _ : state) {
        bq::assemble_residuals(s, grid, p.epsilon, r1, r2);
        benchmark::DoNotOptimize(r1.data());
    }
}
BENCHMARK(BM_residual_assembly);

void BM_operator_apply(benchmark::State& state) {
    bq::OperatorContext ctx;
    ctx.grid.n = 4096;
    ctx.epsilon = 0.1;
    ctx.zeta = bq::random_smooth_field(ctx.grid, 5, 12, 0.3);
    std::vector<double> w = bq::random_smooth_field(ctx.grid, 9, 20, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(bq::apply_I(ctx, w));
}
BENCHMARK(BM_operator_apply);

void BM_operator_invert(benchmark::State& state) {
    bq::OperatorContext ctx;
    ctx.grid.n = 4096;
    ctx.epsilon = 0.1;
    ctx.zeta = bq::random_smooth_field(ctx.grid, 5, 12, 0.3);
    std::vector<double> f =
        bq::apply_I(ctx, bq::random_smooth_field(ctx.grid, 9, 20, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(bq::invert_I(ctx, f, 5e-11));
}
BENCHMARK(BM_operator_invert);

void BM_solitary_solve_full(benchmark::State& state) {
    bq::ModelParams p;
    p.epsilon = 1.0;
    p.celerity = 1.025;
    bq::SolitaryOptions opt;
    opt.n = 1025;
    for (auto _ : state)
        benchmark::DoNotOptimize(bq::solve_profile(p, opt).amplitude);
}
BENCHMARK(BM_solitary_solve_full)->Unit(benchmark::kMillisecond);

void BM_solitary_solve_gn(benchmark::State& state) {
    bq::ModelParams p;
    p.epsilon = 1.0;
    p.celerity = 1.025;
    bq::SolitaryOptions opt;
    opt.n = 1025;
    opt.gn_mode = true;
    for (auto _ : state)
        benchmark::DoNotOptimize(bq::solve_profile(p, opt).amplitude);
}
BENCHMARK(BM_solitary_solve_gn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
