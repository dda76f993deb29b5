// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "hystk/cli/runner.hpp"
#include "hystk/cli/scenario.hpp"
#include "hystk/cli/signal_gen.hpp"

using namespace hystk;
using namespace hystk::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const& name)
{
    fs::path p = fs::temp_directory_path() / ("hystk_unit_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write(fs::path const& dir, std::string const& name, std::string const& text)
{
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(fs::path const& p)
{
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string const kScenarios = HYSTK_SCENARIO_DIR;

}  // namespace

TEST_CASE("generate_signal")
{
    GeneratorSpec ramp;
    ramp.kind = GeneratorSpec::Kind::ramp;
    ramp.from = 0;
    ramp.to = 2;
    auto const r = generate_signal(ramp);
    CHECK(r.times() == std::vector<double>{0, 1});
    CHECK(r.points() == std::vector<Vec>{{0}, {2}});

    GeneratorSpec tri;
    tri.kind = GeneratorSpec::Kind::triangle;
    tri.amplitude = 1;
    tri.period = 2;
    tri.half_periods = 3;
    auto const t = generate_signal(tri);
    REQUIRE(t.size() == 4);
    CHECK(t.points()[0][0] == -1);
    CHECK(t.points()[1][0] == 1);
    CHECK(t.points()[3][0] == 1);
    CHECK(t.times()[3] == doctest::Approx(3.0));

    GeneratorSpec sn;
    sn.kind = GeneratorSpec::Kind::sinusoid;
    sn.samples = 101;
    sn.t1 = 1;
    auto const s = generate_signal(sn);
    REQUIRE(s.size() == 101);
    for (std::size_t k = 0; k < s.size(); ++k)
        CHECK(s.points()[k][0]
              == doctest::Approx(std::sin(2 * std::numbers::pi * s.times()[k])).scale(1.0));

    GeneratorSpec bad = ramp;
    bad.samples = 1;
    CHECK_THROWS(generate_signal(bad));

    GeneratorSpec emb = ramp;
    emb.origin = {1, 1};
    emb.direction = {0, 1};
    CHECK(generate_signal(emb).points()[1] == Vec{1, 3});
}

TEST_CASE("scenario errors carry positions")
{
    auto const dir = scratch("errors");
    auto const p = write(dir, "bad.yaml", "kind: relay\nseed: 1\nrelay: {classic: {rho1: x, rho2: 1}}\n");
    std::ostringstream out, err;
    CHECK(cmd_run(p.string(), dir.string(), out, err) == kExitScenario);
    CHECK(err.str().find("line 3") != std::string::npos);

    auto const q = write(dir, "syntax.yaml", "kind: relay\nseed: [1\n");
    std::ostringstream e2;
    CHECK(cmd_validate(q.string(), out, e2) == kExitScenario);
    CHECK(e2.str().find("line") != std::string::npos);

    auto const k = write(dir, "kind.yaml", "kind: nope\nseed: 1\n");
    CHECK(cmd_validate(k.string(), out, e2) == kExitScenario);
    CHECK_THROWS_AS(load_scenario((dir / "missing.yaml").string()), ScenarioError);

    auto const ref = write(dir, "ref.yaml", "kind: hysteresis\nseed: 1\nfamily: nowhere\n");
    std::ostringstream e3;
    CHECK(cmd_validate(ref.string(), out, e3) == kExitScenario);
    CHECK(e3.str().find("nowhere") != std::string::npos);
}

TEST_CASE("seed override")
{
    auto const dir = scratch("seed");
    auto const p = write(dir, "s.yaml", "kind: relay\nseed: 5\n");
    CHECK(load_scenario(p.string()).seed == 5);
    setenv("HYSTK_SEED", "42", 1);
    CHECK(load_scenario(p.string()).seed == 42);
    setenv("HYSTK_SEED", "abc", 1);
    CHECK_THROWS(load_scenario(p.string()));
    unsetenv("HYSTK_SEED");
    auto const q = write(dir, "noseed.yaml", "kind: relay\n");
    CHECK_THROWS(load_scenario(q.string()));
}

TEST_CASE("bundled classic Preisach scenario")
{
    auto const dir = scratch("preisach");
    std::ostringstream out, err;
    REQUIRE(cmd_run(kScenarios + "/preisach.yaml", dir.string(), out, err) == kExitOk);
    std::istringstream csv(slurp(dir / "preisach.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "time,H_output");
    double prev_t = -1, prev_v = 99;
    int rows = 0;
    while (std::getline(csv, line))
    {
        double const t = std::stod(line.substr(0, line.find(',')));
        double const v = std::stod(line.substr(line.find(',') + 1));
        CHECK(t > prev_t);
        CHECK(v != prev_v);
        prev_t = t;
        prev_v = v;
        ++rows;
    }
    CHECK(rows > 2);
}

TEST_CASE("inverted thresholds fail validation")
{
    auto const dir = scratch("invalid");
    std::ostringstream out, err;
    CHECK(cmd_run(kScenarios + "/invalid_thresholds.yaml", dir.string(), out, err)
          == kExitScenario);
    auto const report = slurp(dir / "invalid_thresholds.report.txt");
    CHECK(report.find("do not cover") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "invalid_thresholds.csv"));
}

TEST_CASE("bundled two-state chain")
{
    auto const dir = scratch("markov");
    std::ostringstream out, err;
    REQUIRE(cmd_run(kScenarios + "/markov_two_state.yaml", dir.string(), out, err) == kExitOk);
    std::istringstream csv(slurp(dir / "markov_two_state.csv"));
    std::string line, last;
    std::getline(csv, line);
    CHECK(line == "time,pi_1_1,pi_1_2,pi_2_1,pi_2_2");
    while (std::getline(csv, line))
        last = line;
    std::istringstream row(last);
    std::string cell;
    std::vector<double> v;
    while (std::getline(row, cell, ','))
        v.push_back(std::stod(cell));
    REQUIRE(v.size() == 5);
    CHECK(v[0] == 3.0);
    CHECK(std::abs(v[1] - 0.5 * (1 + std::exp(-6.0))) <= 1e-6);
    CHECK(std::abs(v[1] + v[2] - 1) <= 1e-8);
}

TEST_CASE("numerical failures exit with 2")
{
    auto const dir = scratch("numeric");
    auto const p = write(dir, "clamp.yaml", R"(kind: game
seed: 1
game:
  family: {preisach: [{rho1: 5, rho2: -5}]}
  horizon: 1
  time_steps: 2
  c1_grid: [0]
  c2_grid: [0]
  dynamics: {type: linear, a: [[0]], b1: [[0]], b2: [[10, 0]]}
  running_cost: {type: zero}
  terminal_cost: {type: quadratic}
  feedback: {type: aggregate}
  grid: {axes: [{lo: -1, hi: 1, n: 5}]}
)");
    std::ostringstream out, err;
    CHECK(cmd_run(p.string(), dir.string(), out, err) == kExitNumerical);
    CHECK(cmd_game_solve(p.string(), 0, out, err) == kExitNumerical);
}

TEST_CASE("xcheck on the bundled impulsive instance")
{
    std::ostringstream out, err;
    CHECK(cmd_xcheck(kScenarios + "/impulsive.yaml", out, err) == kExitOk);
    CHECK(out.str().find("max_residual") != std::string::npos);
    CHECK(cmd_xcheck(kScenarios + "/preisach.yaml", out, err) == kExitScenario);
}
