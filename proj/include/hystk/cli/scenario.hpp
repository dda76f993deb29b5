// SPDX-License-Identifier: Apache-2.0
//! \file scenario.hpp
//! Scenario files: YAML documents with a kind, a seed and named sections.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "hystk/errors.hpp"
#include "hystk/linalg.hpp"

namespace hystk::cli {

//! Malformed or inconsistent scenario; the message carries line/column.
class ScenarioError : public Error
{
  public:
    using Error::Error;
};

inline constexpr char const* kKinds[]
    = {"relay", "hysteresis", "markov", "fundamental-matrix", "game"};

struct Scenario
{
    std::string path;
    std::string name;  //!< file stem, used for default output names
    std::string kind;
    std::uint64_t seed = 0;
    YAML::Node root;
};

/*!
 * Parse a scenario file. The seed is replaced by the HYSTK_SEED environment
 * variable when that is set.
 */
Scenario load_scenario(std::string const& path);

//---------------------------------------------------------------------------//
// Field access with positioned diagnostics
//---------------------------------------------------------------------------//

[[noreturn]] void fail(YAML::Node const& at, std::string const& msg);

YAML::Node require(YAML::Node const& parent, std::string const& key);

double get_double(YAML::Node const& parent, std::string const& key);
double get_double(YAML::Node const& parent, std::string const& key,
                  double fallback);
std::size_t get_size(YAML::Node const& parent, std::string const& key);
std::size_t get_size(YAML::Node const& parent, std::string const& key,
                     std::size_t fallback);
std::string get_string(YAML::Node const& parent, std::string const& key);
std::string get_string(YAML::Node const& parent, std::string const& key,
                       std::string const& fallback);

double as_double(YAML::Node const& n);
Vec as_vec(YAML::Node const& n);
Matrix as_matrix(YAML::Node const& n);

//! Named entry of a top-level section such as `regions` or `fields`.
YAML::Node lookup(Scenario const& sc, std::string const& section,
                  YAML::Node const& ref);

}  // namespace hystk::cli
