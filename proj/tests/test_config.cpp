#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ckm/config.hpp"
#include "ckm/csv.hpp"
#include "ckm/runner.hpp"

using namespace ckm;
namespace fs = std::filesystem;

namespace {

const char* kMinimalSimulate = R"(
[run]
command = simulate
[system]
preset = kdv-scalar
[grid]
x_min = -20
x_max = 20
h = 0.25
[time]
t_end = 0.01
tau = auto
[initial]
family = two-component
a = 1
components = 2
)";

fs::path temp_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("parse minimal simulate config") {
    const RunConfig cfg = parse_config(kMinimalSimulate);
    CHECK(cfg.command == Subcommand::simulate);
    CHECK(cfg.preset == "kdv-scalar");
    CHECK(cfg.h == 0.25);
    CHECK(cfg.stepper.auto_tau);
    CHECK(cfg.initial.solution.kind == FamilyKind::two_component);
    CHECK(cfg.initial.solution.components == std::vector<int>{2});
}

TEST_CASE("config errors carry line numbers and field names") {
    const char* bad_h = R"(
[run]
command = simulate
[system]
preset = kdv-scalar
[grid]
h = 0
[time]
t_end = 1
)";
    CHECK_THROWS_WITH_AS(parse_config(bad_h), doctest::Contains("h must be positive"),
                         validation_error);

    const char* unknown_key = R"(
[run]
command = simulate
[grid]
spacing = 0.1
)";
    try {
        parse_config(unknown_key);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
        CHECK(std::string(e.what()).find("spacing") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("[nonsense]\nkey = 1\n"), validation_error);
    CHECK_THROWS_AS(parse_config("[run]\ncommand = fly\n"), validation_error);
}

TEST_CASE("config round-trip: parse, serialize, parse") {
    const RunConfig a = parse_config(kMinimalSimulate);
    const RunConfig b = parse_config(serialize_config(a));
    CHECK(a == b);

    const char* converge = R"(
[run]
command = converge
[system]
n = 1
g = 1 1 1 1 -1.5
d = 1 -0.25
[grid]
x_min = -20
x_max = 20
[time]
t_end = 0.01
tau = 1e-4
a_max = 50
[initial]
family = r-family
a = 1
r = 0.5
[converge]
h_list = 0.8 0.4 0.2
)";
    const RunConfig c = parse_config(converge);
    CHECK(c.explicit_coefficients);
    CHECK(c.explicit_coefficients->g(1, 1, 1, 1) == -1.5);
    const RunConfig d = parse_config(serialize_config(c));
    CHECK(c == d);
}

TEST_CASE("snapshot csv round-trip") {
    const fs::path dir = temp_dir("ckm-csv-test");
    const Grid grid = build_grid(-2.0, 2.0, 0.5);
    FieldState s = make_state(2, grid.point_count, 0.25);
    for (int i = 0; i < grid.point_count; ++i) {
        s.values[0][static_cast<std::size_t>(i)] = std::sin(0.71 * i) / 3.0;
        s.values[1][static_cast<std::size_t>(i)] = 1.0 / (1.0 + i);
    }
    const std::string path = (dir / snapshot_filename(0.25)).string();
    CHECK(snapshot_filename(0.25) == "snapshot_t00000.250000.csv");
    write_snapshot_csv(path, grid, s);
    const auto [g2, s2] = read_snapshot_csv(path);
    CHECK(g2.point_count == grid.point_count);
    CHECK(g2.h == doctest::Approx(grid.h).epsilon(1e-15));
    REQUIRE(s2.n_components() == 2);
    for (int n = 0; n < 2; ++n)
        for (int i = 0; i < grid.point_count; ++i)
            CHECK(s2.values[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]
                  == s.values[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]);
}

TEST_CASE("runner: simulate with zero initial data writes zero snapshots") {
    const fs::path dir = temp_dir("ckm-runner-zero");
    std::ostringstream cfg;
    cfg << R"(
[run]
command = simulate
[system]
preset = kdv-scalar
[grid]
x_min = -5
x_max = 5
h = 0.5
[time]
t_end = 0.001
tau = 1e-4
snapshots = 0.001
[initial]
family = zero
zero_components = 1
[output]
directory = )" << (dir / "out").string() << "\n";
    std::ostringstream log;
    CHECK(run_config_text(cfg.str(), log) == 0);
    const auto [g, s] = read_snapshot_csv((dir / "out" / snapshot_filename(0.001)).string());
    for (double v : s.values[0]) CHECK(v == 0.0);
}

TEST_CASE("runner: exit codes for validation and runtime failures") {
    std::ostringstream log;
    CHECK(run_config_text("[run]\ncommand = simulate\n", log) == 2);  // missing system/t_end

    // pole on grid: the r = 1 family is singular at the origin node
    const fs::path dir = temp_dir("ckm-runner-pole");
    std::ostringstream cfg;
    cfg << R"(
[run]
command = analytic
[grid]
x_min = -2
x_max = 2
h = 0.5
[initial]
family = r-family
a = 1
r = 1
[output]
directory = )" << (dir / "out").string() << "\n";
    CHECK(run_config_text(cfg.str(), log) == 3);
}

TEST_CASE("runner: singularities subcommand emits the pole table") {
    const fs::path dir = temp_dir("ckm-runner-sing");
    std::ostringstream cfg;
    cfg << R"(
[run]
command = singularities
[grid]
x_min = 0
x_max = 2
h = 0.5
[initial]
family = r-family
a = 1
r = 2
[singularities]
t_min = 0
t_max = 0
resolution = 500
[output]
directory = )" << (dir / "out").string() << "\n";
    std::ostringstream log;
    CHECK(run_config_text(cfg.str(), log) == 0);
    std::ifstream is(dir / "out" / "singular_points.csv");
    REQUIRE(is.good());
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,t,denominator");
    std::string row;
    CHECK(std::getline(is, row));
    CHECK(row.substr(0, 6) == "0.8237");
}

#ifdef CKM_CLI_PATH
TEST_CASE("cli binary: validation exit code and smoke run") {
    const fs::path dir = temp_dir("ckm-cli-smoke");
    {
        std::ofstream os(dir / "bad.ini");
        os << "[run]\ncommand = simulate\n";
    }
    const std::string bad_cmd = std::string(CKM_CLI_PATH) + " --config " + (dir / "bad.ini").string()
                                + " > /dev/null 2>&1";
    const int bad = std::system(bad_cmd.c_str());
    CHECK(WEXITSTATUS(bad) == 2);

    {
        std::ofstream os(dir / "run.ini");
        os << R"(
[run]
command = analytic
[grid]
x_min = -10
x_max = 10
h = 0.25
[time]
snapshots = 0
t_end = 0
[initial]
family = r-family
a = 2
r = 0.5
[output]
directory = )" << (dir / "out").string() << "\nsvg = true\n";
    }
    const std::string cmd = std::string(CKM_CLI_PATH) + " --config " + (dir / "run.ini").string()
                            + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(fs::exists(dir / "out" / snapshot_filename(0.0)));
    CHECK(fs::exists(dir / "out" / "profile_t00000.000000.svg"));
}
#endif
