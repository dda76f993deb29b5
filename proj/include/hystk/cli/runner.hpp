// SPDX-License-Identifier: Apache-2.0
//! \file runner.hpp
//! Subcommands of the hystk tool. Each returns the process exit code:
//! 0 on success, 1 for scenario or validation errors, 2 when a numerical
//! invariant fails.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

namespace hystk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitScenario = 1;
inline constexpr int kExitNumerical = 2;

//! Residual above which the two fundamental-matrix methods are said to disagree.
inline constexpr double kCrossMethodTol = 1e-6;

//! Build every object of the scenario and check the relay conditions.
int cmd_validate(std::string const& path, std::ostream& out, std::ostream& err);

//! Run the scenario; writes `<name>.csv` and `<name>.report.txt` in out_dir.
int cmd_run(std::string const& path, std::string const& out_dir,
            std::ostream& out, std::ostream& err);

//! Solve a game at successive refinements and print the value changes.
int cmd_game_solve(std::string const& path, std::size_t refine,
                   std::ostream& out, std::ostream& err);

//! Compare product and series fundamental matrices at the output times.
int cmd_xcheck(std::string const& path, std::ostream& out, std::ostream& err);

}  // namespace hystk::cli
