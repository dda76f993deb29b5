// SPDX-License-Identifier: Apache-2.0
//! \file game.hpp
//! Discrete-time minimax dynamic programming for a differential game whose
//! second player's control is partly fed back through a hysteresis family.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hystk/hysteresis.hpp"

namespace hystk::game {

using hysteresis::RelayFamily;

//! Joint state of all relays of the family, one state index per member.
using Profile = std::vector<std::size_t>;

//---------------------------------------------------------------------------//
/*!
 * Game data. The maximizer picks c1, which also drives the relays; the
 * minimizer picks c2 and the full second control is (G(t, profile), c2).
 */
struct GameSpec
{
    using Dynamics
        = std::function<Vec(double t, Vec const& y, Vec const& c1, Vec const& c2)>;
    using RunningCost = std::function<double(double t, Vec const& y,
                                             Vec const& c1, Vec const& c2)>;
    using TerminalCost = std::function<double(Vec const& y)>;
    using Feedback = std::function<Vec(double t, Profile const& profile)>;

    Dynamics dynamics;
    RunningCost running_cost;
    TerminalCost terminal_cost;
    std::vector<Vec> c1_grid;
    std::vector<Vec> c2_grid;
    RelayFamily family;
    Feedback g_map;
    double horizon = 1.0;
    std::size_t time_steps = 1;

    //! Throws PreconditionViolation on empty grids, bad sizes or horizon.
    void check() const;
    double dt() const { return horizon / static_cast<double>(time_steps); }
};

//---------------------------------------------------------------------------//
//! Mixed-radix enumeration of all profiles of a family.
class ProfileSpace
{
  public:
    explicit ProfileSpace(RelayFamily const& family);

    std::size_t size() const noexcept { return size_; }
    std::size_t index(Profile const& p) const;
    Profile profile(std::size_t index) const;

  private:
    std::vector<std::size_t> radix_;
    std::size_t size_ = 1;
};

//! Tensor-product grid over the game state; nodes in row-major order with
//! the last axis fastest.
class StateGrid
{
  public:
    explicit StateGrid(std::vector<std::vector<double>> axes);

    std::size_t dim() const noexcept { return axes_.size(); }
    std::size_t size() const noexcept { return size_; }
    std::vector<std::vector<double>> const& axes() const noexcept
    {
        return axes_;
    }
    Vec node(std::size_t i) const;

    //! Multilinear interpolation of node values; points outside the box are
    //! clamped onto it and `clamped` is set.
    double interpolate(std::vector<double> const& values, Vec const& y,
                       bool& clamped) const;

    //! Grid with every cell split in two along each axis.
    StateGrid refined() const;

  private:
    std::vector<std::vector<double>> axes_;
    std::size_t size_ = 1;
};

//---------------------------------------------------------------------------//

/*!
 * Switch every member whose state has a facet containing c1 to that facet's
 * target; other members keep their state.
 */
Profile profile_transition(RelayFamily const& family, Profile const& profile,
                           Vec const& c1);

/*!
 * values[k][profile][node] for k = 0..time_steps; the last layer is the
 * terminal cost for every profile.
 */
struct ValueTable
{
    std::vector<std::vector<std::vector<double>>> values;
    std::size_t clamped = 0;  //!< lookups that left the grid
    std::size_t lookups = 0;
};

//! Fraction of clamped lookups above which solve() fails.
inline constexpr double kMaxClampFraction = 0.10;

/*!
 * One backward step: max over c1 of min over c2 of
 * F dt + V_next(y + f dt, profile'), with profile' the transition under c1.
 * Clamp counts are added to the counters.
 */
std::vector<std::vector<double>>
backup(GameSpec const& spec, StateGrid const& grid, std::size_t k,
       std::vector<std::vector<double>> const& next, std::size_t& clamped,
       std::size_t& lookups);

ValueTable solve(GameSpec const& spec, StateGrid const& grid);

struct PolicyEntry
{
    std::size_t c1_index;
    std::size_t c2_index;
};

//! policy[k][profile][node] for k < time_steps; ties go to the lowest index.
using Policy = std::vector<std::vector<std::vector<PolicyEntry>>>;

Policy extract_policy(ValueTable const& table, GameSpec const& spec,
                      StateGrid const& grid);

}  // namespace hystk::game
