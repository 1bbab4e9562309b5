// bqlab: command-line front end for the long-wave laboratory.
//
// Subcommands
//   solitary   solve the traveling solitary wave and dump the profile
//   compare    rescaled wave families side by side on a fixed lattice
//   corrector  evaluate the second-order corrector pair (and the corrected
//              family) on a grid at one time
//   residuals  residue-norm sweep over a list of eps values, with slopes
//   opcheck    dispersive-operator probes: inverse scaling, round trip,
//              symmetry defect
//
// Output is CSV (default) or JSON, to stdout or --out FILE.  CSV carries a
// '#'-prefixed metadata header; JSON mirrors the same content.  Output is
// deterministic byte for byte: no timestamps, no machine names, doubles
// printed with %.17g (CSV) or shortest round-trip (JSON).
//
// Exit codes: 0 success, 2 usage or parameter validation error, 3 runtime
// failure (a solver or check failed on valid-looking input).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bq/corrector.hpp"
#include "bq/norms.hpp"
#include "bq/oplab.hpp"
#include "bq/parallel.hpp"
#include "bq/refwaves.hpp"
#include "bq/residuals.hpp"
#include "bq/solitary.hpp"
#include "bq/types.hpp"

using nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One tabular result: ordered metadata plus named columns of equal length.
struct Table {
    std::string tool;
    std::vector<std::pair<std::string, ordered_json>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major

    void add_meta(const std::string& k, ordered_json v) {
        meta.emplace_back(k, std::move(v));
    }
};

std::string render_csv(const Table& t) {
    std::string out = "# bqlab " + t.tool + "\n";
    for (const auto& [k, v] : t.meta) {
        out += "# " + k + " = ";
        if (v.is_number_float())
            out += fmt17(v.get<double>());
        else if (v.is_string())
            out += v.get<std::string>();
        else
            out += v.dump();
        out += "\n";
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out += (c ? "," : "") + t.columns[c];
    out += "\n";
    const std::size_t rows = t.data.empty() ? 0 : t.data[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < t.data.size(); ++c)
            out += (c ? "," : "") + fmt17(t.data[c][r]);
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& t) {
    ordered_json j;
    j["tool"] = t.tool;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["meta"] = meta;
    ordered_json data = ordered_json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) data[t.columns[c]] = t.data[c];
    j["data"] = data;
    return j.dump(2) + "\n";
}

void write_result(const Table& t, const std::string& format,
                  const std::string& out_path) {
    const std::string payload =
        format == "json" ? render_json(t) : render_csv(t);
    if (out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

// Cubic Hermite read of a sampled profile at one point; the stored first
// derivative makes this fourth-order accurate in the grid spacing, more than
// enough to transfer a profile onto a comparison lattice.
double hermite_at(const bq::SolitaryProfile& prof, double xi) {
    const auto& g = prof.grid;
    if (xi <= g.front() || xi >= g.back()) return 0.0;  // decayed tail
    const double dx = g[1] - g[0];
    auto i = static_cast<std::size_t>((xi - g.front()) / dx);
    if (i + 1 >= g.size()) i = g.size() - 2;
    const double s = (xi - g[i]) / dx;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * prof.zeta[i] + h10 * dx * prof.dzeta[i] +
           h01 * prof.zeta[i + 1] + h11 * dx * prof.dzeta[i + 1];
}

struct CommonFlags {
    std::string format = "csv";
    std::string out;
};

void add_output_flags(CLI::App* cmd, CommonFlags& io) {
    cmd->add_option("--format", io.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", io.out, "write to this file instead of stdout");
}

// ---------------------------------------------------------------- solitary

struct SolitaryArgs {
    double c = 0.0;
    double eps = 1.0;
    double tol = 1e-10;
    int n = 4097;
    double half_width = 0.0;
    bool gn_mode = false;
    CommonFlags io;
};

void run_solitary(const SolitaryArgs& a) {
    bq::ModelParams p;
    p.epsilon = a.eps;
    p.celerity = a.c;
    bq::SolitaryOptions opt;
    opt.tol = a.tol;
    opt.n = a.n;
    opt.half_width = a.half_width;
    opt.gn_mode = a.gn_mode;
    bq::SolitaryProfile prof = bq::solve_profile(p, opt);

    Table t;
    t.tool = "solitary";
    t.add_meta("c", a.c);
    t.add_meta("eps", a.eps);
    t.add_meta("tol", a.tol);
    t.add_meta("mode", a.gn_mode ? "shallow-water" : "full");
    t.add_meta("amplitude", prof.amplitude);
    t.add_meta("decay_rate", prof.decay_kappa);
    t.add_meta("half_width", prof.grid.back());
    t.add_meta("n", static_cast<int>(prof.grid.size()));
    t.columns = {"xi", "zeta", "dzeta", "d2zeta", "v"};
    t.data = {prof.grid, prof.zeta, prof.dzeta, prof.d2zeta, prof.v};
    write_result(t, a.io.format, a.io.out);
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
    double c = 0.0;
    double eps = 1.0;
    double tol = 1e-10;
    double x_max = 8.0;
    int n = 321;
    std::vector<std::string> models = {"full", "kdv"};
    CommonFlags io;
};

void run_compare(const CompareArgs& a) {
    if (a.n < 2) throw std::invalid_argument("compare: need at least 2 lattice points");
    if (!(a.x_max > 0.0)) throw std::invalid_argument("compare: x-max must be positive");

    // similarity lattice X; every family is plotted as Z(X)
    std::vector<double> X(static_cast<std::size_t>(a.n));
    for (int i = 0; i < a.n; ++i)
        X[(size_t)i] = -a.x_max + 2.0 * a.x_max * i / (a.n - 1);

    const double k = bq::gn_wavenumber(a.c, a.eps);
    const double a_gn = bq::gn_amplitude(a.c, a.eps);

    Table t;
    t.tool = "compare";
    t.add_meta("c", a.c);
    t.add_meta("eps", a.eps);
    t.add_meta("x_max", a.x_max);
    t.add_meta("n", a.n);
    t.columns = {"X"};
    t.data = {X};

    for (const std::string& model : a.models) {
        std::vector<double> Z(static_cast<std::size_t>(a.n));
        if (model == "kdv" || model == "boussinesq") {
            // first-order families rescale to exactly sech^2
            for (int i = 0; i < a.n; ++i) Z[(size_t)i] = bq::sech2(X[(size_t)i]);
        } else if (model == "gn") {
            for (int i = 0; i < a.n; ++i)
                Z[(size_t)i] =
                    a.eps * bq::gn_profile(a.c, a.eps, X[(size_t)i] / k) / (a.c * a.c - 1.0);
        } else if (model == "full") {
            bq::ModelParams p;
            p.epsilon = a.eps;
            p.celerity = a.c;
            bq::SolitaryOptions opt;
            opt.tol = a.tol;
            bq::SolitaryProfile prof = bq::solve_profile(p, opt);
            for (int i = 0; i < a.n; ++i)
                Z[(size_t)i] =
                    a.eps * hermite_at(prof, X[(size_t)i] / k) / (a.c * a.c - 1.0);
            t.add_meta("full_amplitude", prof.amplitude);
            t.add_meta("full_crest_ratio", prof.amplitude / a_gn);
        } else {
            throw std::invalid_argument("compare: unknown model '" + model + "'");
        }
        t.columns.push_back("Z_" + model);
        t.data.push_back(std::move(Z));
    }
    write_result(t, a.io.format, a.io.out);
}

// --------------------------------------------------------------- corrector

struct CorrectorArgs {
    double eps = 0.1;
    double alpha = 1.0;
    double t = 1.0;
    double tol = 1e-10;
    int grid_n = 4096;
    double half_width = 50.0;
    std::string forcing = "compensated";
    CommonFlags io;
};

void run_corrector(const CorrectorArgs& a) {
    bq::CorrectedSolution sol;
    sol.params.epsilon = a.eps;
    sol.params.alpha = a.alpha;
    sol.zeta2_0 = bq::gaussian_datum();
    sol.v2_0 = bq::gaussian_datum();
    sol.opt.quadrature_tol = a.tol;
    sol.opt.forcing = a.forcing == "printed" ? bq::ForcingModel::printed
                                             : bq::ForcingModel::compensated;

    bq::Grid1D grid;
    grid.x_min = -a.half_width;
    grid.x_max = a.half_width;
    grid.n = a.grid_n;

    bq::CorrectorGrid cg = bq::corrector_grid(sol, a.t, grid);
    std::vector<double> fz, fv;
    bq::corrected_eval_grid(sol, a.t, grid, fz, fv);

    Table t;
    t.tool = "corrector";
    t.add_meta("eps", a.eps);
    t.add_meta("alpha", a.alpha);
    t.add_meta("t", a.t);
    t.add_meta("quadrature_tol", a.tol);
    t.add_meta("forcing", a.forcing);
    t.add_meta("grid_n", a.grid_n);
    t.add_meta("half_width", a.half_width);
    t.columns = {"x", "zeta2", "v2", "zeta", "v"};
    t.data = {grid.nodes(), cg.zeta2, cg.v2, fz, fv};
    write_result(t, a.io.format, a.io.out);
}

// --------------------------------------------------------------- residuals

struct ResidualsArgs {
    std::vector<double> eps_list = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    double alpha = 1.0;
    double t = 1.0;
    double dt = 1e-3;
    double tol = 1e-10;
    int grid_n = 4096;
    double half_width = 50.0;
    int threads = 0;
    std::string forcing = "compensated";
    CommonFlags io;
};

void run_residuals(const ResidualsArgs& a) {
    bq::SweepConfig cfg;
    cfg.epsilons = a.eps_list;
    cfg.alpha = a.alpha;
    cfg.t_eval = a.t;
    cfg.grid.x_min = -a.half_width;
    cfg.grid.x_max = a.half_width;
    cfg.grid.n = a.grid_n;
    cfg.resid.dt = a.dt;
    cfg.resid.threads = bq::resolve_threads(a.threads);
    cfg.quadrature_tol = a.tol;
    cfg.forcing = a.forcing == "printed" ? bq::ForcingModel::printed
                                         : bq::ForcingModel::compensated;
    cfg.validate();

    bq::SweepResult sw = bq::residual_sweep(cfg);

    Table t;
    t.tool = "residuals";
    t.add_meta("alpha", a.alpha);
    t.add_meta("t", a.t);
    t.add_meta("dt", a.dt);
    t.add_meta("forcing", a.forcing);
    t.add_meta("grid_n", a.grid_n);
    t.add_meta("half_width", a.half_width);
    t.add_meta("threads", cfg.resid.threads);
    t.add_meta("slope_r1_l2", sw.slope_r1_l2);
    t.add_meta("slope_r2_l2", sw.slope_r2_l2);
    t.add_meta("slope_r1_inf", sw.slope_r1_inf);
    t.add_meta("slope_r2_inf", sw.slope_r2_inf);
    t.add_meta("fit_points", sw.fit_points);
    t.columns = {"eps",    "r1_l2",  "r2_l2",  "r1_l2w",      "r2_l2w",
                 "r1_inf", "r2_inf", "r1_l2_over_eps3", "r2_l2_over_eps3"};
    t.data.assign(t.columns.size(), {});
    for (const bq::ResidualReport& r : sw.reports) {
        const double e3 = r.epsilon * r.epsilon * r.epsilon;
        t.data[0].push_back(r.epsilon);
        t.data[1].push_back(r.r1_l2);
        t.data[2].push_back(r.r2_l2);
        t.data[3].push_back(r.r1_l2w);
        t.data[4].push_back(r.r2_l2w);
        t.data[5].push_back(r.r1_inf);
        t.data[6].push_back(r.r2_inf);
        t.data[7].push_back(r.r1_l2 / e3);
        t.data[8].push_back(r.r2_l2 / e3);
    }
    write_result(t, a.io.format, a.io.out);
}

// ----------------------------------------------------------------- opcheck

struct OpcheckArgs {
    std::vector<double> eps_list = {1e-1, 1e-2, 1e-3};
    int grid_n = 1024;
    double s = 1.0;
    unsigned seed = 7;
    double tol = 1e-12;
    CommonFlags io;
};

void run_opcheck(const OpcheckArgs& a) {
    bq::Grid1D grid;
    grid.n = a.grid_n;
    const std::vector<double> zeta =
        bq::random_smooth_field(grid, a.seed, 12, 0.3);
    const std::vector<double> f =
        bq::random_smooth_field(grid, a.seed + 14, 16, 1.0);

    auto rows = bq::inverse_scaling_probe(grid, zeta, f, a.s, a.eps_list, a.tol);

    Table t;
    t.tool = "opcheck";
    t.add_meta("grid_n", a.grid_n);
    t.add_meta("s", a.s);
    t.add_meta("seed", static_cast<int>(a.seed));
    t.add_meta("tol", a.tol);
    t.columns = {"eps", "ratio0", "ratio1", "ratio2", "round_trip", "symmetry"};
    t.data.assign(t.columns.size(), {});

    for (std::size_t i = 0; i < rows.size(); ++i) {
        bq::OperatorContext ctx;
        ctx.grid = grid;
        ctx.zeta = zeta;
        ctx.epsilon = rows[i].epsilon;

        // round trip through apply/invert
        auto jw = bq::apply_I(ctx, f);
        auto back = bq::invert_I(ctx, jw, a.tol);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double d = back[j] - f[j];
            num += d * d;
            den += f[j] * f[j];
        }

        // symmetry defect on one deterministic pair
        const std::vector<double> u =
            bq::random_smooth_field(grid, a.seed + 100, 16, 1.0);
        auto ju = bq::apply_I(ctx, u);
        double uv = 0.0, vu = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            uv += ju[j] * f[j];
            vu += u[j] * jw[j];
        }
        const double sym =
            std::fabs(uv - vu) / (bq::raw_l2(u) * bq::raw_l2(f));

        t.data[0].push_back(rows[i].epsilon);
        t.data[1].push_back(rows[i].ratio0);
        t.data[2].push_back(rows[i].ratio1);
        t.data[3].push_back(rows[i].ratio2);
        t.data[4].push_back(std::sqrt(num / den));
        t.data[5].push_back(sym);
    }
    write_result(t, a.io.format, a.io.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a higher-order long-wave model"};
    app.set_version_flag("--version", "bqlab 1.0.0");
    app.require_subcommand(1);

    SolitaryArgs sa;
    CLI::App* sol = app.add_subcommand("solitary", "traveling solitary-wave profile");
    sol->add_option("--c", sa.c, "wave speed, > 1")->required();
    sol->add_option("--eps", sa.eps, "nonlinearity parameter")->capture_default_str();
    sol->add_option("--tol", sa.tol, "solver tolerance")->capture_default_str();
    sol->add_option("--grid-n", sa.n, "output samples (odd)")->capture_default_str();
    sol->add_option("--grid-half-width", sa.half_width,
                    "half-width of the output window (0 = automatic)")
        ->capture_default_str();
    sol->add_flag("--gn-mode", sa.gn_mode,
                  "shallow-water mode (drops the fourth-order dispersive term)");
    add_output_flags(sol, sa.io);
    sol->callback([&] { run_solitary(sa); });

    CompareArgs ca;
    CLI::App* cmp = app.add_subcommand("compare", "rescaled families on one lattice");
    cmp->add_option("--c", ca.c, "wave speed, > 1")->required();
    cmp->add_option("--eps", ca.eps, "nonlinearity parameter")->capture_default_str();
    cmp->add_option("--tol", ca.tol, "solver tolerance")->capture_default_str();
    cmp->add_option("--x-max", ca.x_max, "lattice half-width in similarity units")
        ->capture_default_str();
    cmp->add_option("--grid-n", ca.n, "lattice points")->capture_default_str();
    cmp->add_option("--models", ca.models,
                    "families to tabulate (full, gn, kdv, boussinesq)")
        ->delimiter(',')
        ->capture_default_str();
    add_output_flags(cmp, ca.io);
    cmp->callback([&] { run_compare(ca); });

    CorrectorArgs coa;
    CLI::App* cor = app.add_subcommand("corrector", "second-order corrector fields");
    cor->add_option("--eps", coa.eps, "nonlinearity parameter")->capture_default_str();
    cor->add_option("--alpha", coa.alpha, "background amplitude")->capture_default_str();
    cor->add_option("--t", coa.t, "evaluation time")->capture_default_str();
    cor->add_option("--tol", coa.tol, "quadrature tolerance")->capture_default_str();
    cor->add_option("--grid-n", coa.grid_n, "grid points")->capture_default_str();
    cor->add_option("--grid-half-width", coa.half_width, "grid half-width")
        ->capture_default_str();
    cor->add_option("--forcing", coa.forcing, "forcing variant")
        ->check(CLI::IsMember({"compensated", "printed"}))
        ->capture_default_str();
    add_output_flags(cor, coa.io);
    cor->callback([&] { run_corrector(coa); });

    ResidualsArgs ra;
    CLI::App* res = app.add_subcommand("residuals", "residue-norm sweep and slopes");
    res->add_option("--eps-list", ra.eps_list, "eps values, strictly decreasing")
        ->delimiter(',')
        ->expected(1, 64)
        ->capture_default_str();
    res->add_option("--alpha", ra.alpha, "background amplitude")->capture_default_str();
    res->add_option("--t", ra.t, "evaluation time")->capture_default_str();
    res->add_option("--dt", ra.dt, "time-difference step for the corrector part")
        ->capture_default_str();
    res->add_option("--tol", ra.tol, "quadrature tolerance")->capture_default_str();
    res->add_option("--grid-n", ra.grid_n, "grid points")->capture_default_str();
    res->add_option("--grid-half-width", ra.half_width, "grid half-width")
        ->capture_default_str();
    res->add_option("--threads", ra.threads,
                    "worker threads (0 = BQLAB_THREADS or serial)")
        ->capture_default_str();
    res->add_option("--forcing", ra.forcing, "forcing variant")
        ->check(CLI::IsMember({"compensated", "printed"}))
        ->capture_default_str();
    add_output_flags(res, ra.io);
    res->callback([&] { run_residuals(ra); });

    OpcheckArgs oa;
    CLI::App* opc = app.add_subcommand("opcheck", "dispersive-operator probes");
    opc->add_option("--eps-list", oa.eps_list, "eps values")
        ->delimiter(',')
        ->expected(1, 64)
        ->capture_default_str();
    opc->add_option("--grid-n", oa.grid_n, "grid points")->capture_default_str();
    opc->add_option("--s", oa.s, "Sobolev index for the weighted norms")
        ->capture_default_str();
    opc->add_option("--seed", oa.seed, "random-field seed")->capture_default_str();
    opc->add_option("--tol", oa.tol, "solver tolerance")->capture_default_str();
    add_output_flags(opc, oa.io);
    opc->callback([&] { run_opcheck(oa); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "bqlab: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bqlab: %s\n", e.what());
        return 3;
    }
    return 0;
}
