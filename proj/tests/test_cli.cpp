// End-to-end checks of the command-line tool: exit codes, output schema,
// frozen solver values surfacing through the CLI, and byte-for-byte
// determinism of repeated runs.  The binary path comes in through the
// BQLAB_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BQLAB_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[8192];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines(const std::string& s, const std::string& prefix) {
    int count = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('\n', pos);
        if (end == std::string::npos) end = s.size();
        if (s.compare(pos, prefix.size(), prefix) == 0) ++count;
        pos = end + 1;
    }
    return count;
}

}  // namespace

TEST_CASE("version and usage plumbing") {
    RunResult r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bqlab 1.0.0") != std::string::npos);

    // a subcommand is required
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("solitary").exit_code == 2);  // --c is required
}

TEST_CASE("parameter validation surfaces as exit code 2") {
    // no traveling wave at the critical speed
    CHECK(run_cli("solitary --c 1.0").exit_code == 2);
    // malformed numbers are a usage error
    CHECK(run_cli("solitary --c banana").exit_code == 2);
    // empty eps list
    CHECK(run_cli("residuals --eps-list").exit_code == 2);
    // unknown comparison family
    CHECK(run_cli("compare --c 1.01 --models nope").exit_code == 2);
    // unknown forcing variant is caught by the option check
    CHECK(run_cli("corrector --forcing sideways").exit_code == 2);
}

TEST_CASE("solitary: shallow-water amplitude matches the closed form") {
    RunResult r = run_cli("solitary --c 1.025 --gn-mode --grid-n 257 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["tool"] == "solitary");
    CHECK(j["meta"]["mode"] == "shallow-water");
    const double a = j["meta"]["amplitude"].get<double>();
    const double a_gn = 1.025 * 1.025 - 1.0;
    CHECK(std::fabs(a - a_gn) / a_gn < 1e-6);
    CHECK(j["data"]["zeta"].size() == 257);
}

TEST_CASE("solitary: full-model amplitude reproduces the frozen anchor") {
    RunResult r = run_cli("solitary --c 1.025 --grid-n 513 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    const double a = j["meta"]["amplitude"].get<double>();
    CHECK(std::fabs(a - 5.076200198924161e-02) / 5.076200198924161e-02 < 1e-7);
    // crest sample equals the reported amplitude
    const double peak = j["data"]["zeta"][256].get<double>();
    CHECK(std::fabs(peak - a) < 1e-12);
}

TEST_CASE("solitary: CSV schema") {
    RunResult r = run_cli("solitary --c 1.01 --gn-mode --grid-n 65");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("# bqlab solitary\n", 0) == 0);
    CHECK(r.out.find("\nxi,zeta,dzeta,d2zeta,v\n") != std::string::npos);
    CHECK(count_lines(r.out, "#") >= 8);
    // no timestamps or host names in the metadata
    CHECK(r.out.find("date") == std::string::npos);
    CHECK(r.out.find("time:") == std::string::npos);
}

TEST_CASE("compare: first-order families collapse onto sech^2") {
    RunResult r = run_cli(
        "compare --c 1.002 --grid-n 41 --x-max 6 --models full,kdv,gn --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    auto X = j["data"]["X"];
    auto zf = j["data"]["Z_full"];
    auto zk = j["data"]["Z_kdv"];
    auto zg = j["data"]["Z_gn"];
    REQUIRE(X.size() == 41);

    // kdv column is exactly sech^2 of the lattice, amplitude 1 at X = 0
    CHECK(std::fabs(zk[20].get<double>() - 1.0) < 1e-15);
    // the shallow-water closed form rescales onto the same curve
    double gap_gk = 0.0, gap_fk = 0.0;
    for (int i = 0; i < 41; ++i) {
        gap_gk = std::max(gap_gk,
                          std::fabs(zg[(size_t)i].get<double>() - zk[(size_t)i].get<double>()));
        gap_fk = std::max(gap_fk,
                          std::fabs(zf[(size_t)i].get<double>() - zk[(size_t)i].get<double>()));
    }
    CHECK(gap_gk < 1e-12);
    // at this slow speed the full model is close to the limit family
    CHECK(gap_fk < 0.02);
    CHECK(std::fabs(zf[20].get<double>() - 1.0) < 0.01);
}

TEST_CASE("corrector and residuals runs are byte deterministic") {
    const std::string args =
        "corrector --t 0.5 --grid-n 32 --grid-half-width 8";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out, "#") >= 7);

    const std::string rargs = "residuals --eps-list 1e-1,1e-2 --grid-n 1024";
    RunResult c = run_cli(rargs);
    RunResult d = run_cli(rargs);
    REQUIRE(c.exit_code == 0);
    CHECK(c.out == d.out);
    // two data rows, one per eps (%.17g spells 0.1 with its full mantissa)
    CHECK(count_lines(c.out, "0.1") == 1);
    CHECK(count_lines(c.out, "0.01,") == 1);
}

TEST_CASE("opcheck: probe ratios and round trips through the CLI") {
    RunResult r = run_cli("opcheck --grid-n 256 --eps-list 1e-1,1e-2 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    auto rt = j["data"]["round_trip"];
    auto sym = j["data"]["symmetry"];
    auto r0 = j["data"]["ratio0"];
    REQUIRE(rt.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(rt[i].get<double>() <= 1e-10);
        CHECK(sym[i].get<double>() <= 1e-11);
        CHECK(r0[i].get<double>() < 1.5);
    }
}
