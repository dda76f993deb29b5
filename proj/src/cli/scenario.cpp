// SPDX-License-Identifier: Apache-2.0
#include "hystk/cli/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

namespace hystk::cli {

namespace {

std::string position(YAML::Node const& n)
{
    auto const m = n.Mark();
    if (m.is_null())
        return "";
    return "line " + std::to_string(m.line + 1) + ", column "
           + std::to_string(m.column + 1) + ": ";
}

}  // namespace

void fail(YAML::Node const& at, std::string const& msg)
{
    throw ScenarioError(position(at) + msg);
}

YAML::Node require(YAML::Node const& parent, std::string const& key)
{
    if (!parent.IsMap())
        fail(parent, "expected a mapping holding '" + key + "'");
    YAML::Node n = parent[key];
    if (!n)
        fail(parent, "missing field '" + key + "'");
    return n;
}

double as_double(YAML::Node const& n)
{
    if (!n.IsScalar())
        fail(n, "expected a number");
    try
    {
        return n.as<double>();
    }
    catch (YAML::Exception const&)
    {
        fail(n, "expected a number, got '" + n.Scalar() + "'");
    }
}

Vec as_vec(YAML::Node const& n)
{
    if (n.IsScalar())
        return {as_double(n)};
    if (!n.IsSequence())
        fail(n, "expected a list of numbers");
    Vec v;
    for (auto const& e : n)
        v.push_back(as_double(e));
    return v;
}

Matrix as_matrix(YAML::Node const& n)
{
    if (!n.IsSequence() || n.size() == 0)
        fail(n, "expected a list of rows");
    std::vector<std::vector<double>> rows;
    for (auto const& r : n)
    {
        rows.push_back(as_vec(r));
        if (rows.back().size() != rows.front().size())
            fail(r, "ragged matrix row");
    }
    return Matrix::from_rows(rows);
}

double get_double(YAML::Node const& parent, std::string const& key)
{
    return as_double(require(parent, key));
}

double get_double(YAML::Node const& parent, std::string const& key,
                  double fallback)
{
    if (!parent.IsMap() || !parent[key])
        return fallback;
    return as_double(parent[key]);
}

std::size_t get_size(YAML::Node const& parent, std::string const& key)
{
    YAML::Node n = require(parent, key);
    double const v = as_double(n);
    if (!(v >= 0) || v != static_cast<double>(static_cast<std::size_t>(v)))
        fail(n, "field '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::size_t get_size(YAML::Node const& parent, std::string const& key,
                     std::size_t fallback)
{
    if (!parent.IsMap() || !parent[key])
        return fallback;
    return get_size(parent, key);
}

std::string get_string(YAML::Node const& parent, std::string const& key)
{
    YAML::Node n = require(parent, key);
    if (!n.IsScalar())
        fail(n, "field '" + key + "' must be a string");
    return n.Scalar();
}

std::string get_string(YAML::Node const& parent, std::string const& key,
                       std::string const& fallback)
{
    if (!parent.IsMap() || !parent[key])
        return fallback;
    return get_string(parent, key);
}

YAML::Node lookup(Scenario const& sc, std::string const& section,
                  YAML::Node const& ref)
{
    if (!ref.IsScalar())
        return ref;  // inline definition
    YAML::Node sec = sc.root[section];
    if (!sec || !sec.IsMap())
        fail(ref, "no section '" + section + "' to resolve '" + ref.Scalar() + "'");
    YAML::Node n = sec[ref.Scalar()];
    if (!n)
        fail(ref, "unknown name '" + ref.Scalar() + "' in section '" + section + "'");
    return n;
}

Scenario load_scenario(std::string const& path)
{
    Scenario sc;
    sc.path = path;
    sc.name = std::filesystem::path(path).stem().string();
    try
    {
        sc.root = YAML::LoadFile(path);
    }
    catch (YAML::BadFile const&)
    {
        throw ScenarioError("cannot read scenario file '" + path + "'");
    }
    catch (YAML::Exception const& e)
    {
        throw ScenarioError("parse error at line " + std::to_string(e.mark.line + 1)
                            + ", column " + std::to_string(e.mark.column + 1)
                            + ": " + e.msg);
    }
    if (!sc.root.IsMap())
        throw ScenarioError("scenario must be a mapping");
    sc.kind = get_string(sc.root, "kind");
    if (std::find(std::begin(kKinds), std::end(kKinds), sc.kind) == std::end(kKinds))
        fail(sc.root["kind"], "unknown kind '" + sc.kind + "'");
    sc.seed = get_size(sc.root, "seed");
    if (char const* env = std::getenv("HYSTK_SEED"); env && *env)
    {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0')
            throw ScenarioError("HYSTK_SEED must be a nonnegative integer");
        sc.seed = v;
    }
    return sc;
}

}  // namespace hystk::cli
