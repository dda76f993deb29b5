// SPDX-License-Identifier: Apache-2.0
//! hystk: run hysteresis, stochastic relay and game scenarios.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hystk/cli/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Hysteresis relays, stochastic relays and hysteresis games"};
    app.require_subcommand(1);

    std::string path;
    std::string out_dir = ".";
    std::size_t refine = 0;

    auto* validate = app.add_subcommand("validate", "Check a scenario and its relays");
    validate->add_option("scenario", path, "Scenario file")->required();

    auto* run = app.add_subcommand("run", "Run a scenario and write CSV and report");
    run->add_option("scenario", path, "Scenario file")->required();
    run->add_option("--out", out_dir, "Output directory");

    auto* game = app.add_subcommand("game-solve", "Solve a game with grid refinement");
    game->add_option("scenario", path, "Scenario file")->required();
    game->add_option("--refine", refine, "Number of refinement levels");

    auto* xcheck = app.add_subcommand("xcheck", "Compare fundamental-matrix methods");
    xcheck->add_option("scenario", path, "Scenario file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e) == 0 ? 0 : hystk::cli::kExitScenario;
    }

    if (*validate)
        return hystk::cli::cmd_validate(path, std::cout, std::cerr);
    if (*run)
        return hystk::cli::cmd_run(path, out_dir, std::cout, std::cerr);
    if (*game)
        return hystk::cli::cmd_game_solve(path, refine, std::cout, std::cerr);
    return hystk::cli::cmd_xcheck(path, std::cout, std::cerr);
}
