// SPDX-License-Identifier: Apache-2.0
//! \file hysteresis.hpp
//! Weighted superposition of relays and the monotropy / wiping-out toolkit.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hystk/relay.hpp"

namespace hystk::hysteresis {

using geometry::Region;
using geometry::Signal;
using relay::RelaySpec;
using relay::RelayTrajectory;

struct Member
{
    std::string label;
    RelaySpec spec;
    double weight = 1.0;
    std::size_t initial_state = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Finite weighted family of relays sharing input and payload dimensions.
 */
class RelayFamily
{
  public:
    explicit RelayFamily(std::vector<Member> members);

    std::size_t size() const noexcept { return members_.size(); }
    std::size_t dim() const noexcept { return members_.front().spec.dim(); }
    std::size_t payload_dim() const noexcept
    {
        return members_.front().spec.payload_dim();
    }
    std::vector<Member> const& members() const noexcept { return members_; }
    Member const& member(std::size_t i) const { return members_.at(i); }
    //! Index of the member with this label; throws if absent.
    std::size_t index_of(std::string const& label) const;
    double total_weight() const noexcept;

    //! Same relays with every weight multiplied by s > 0.
    RelayFamily scaled(double s) const;

  private:
    std::vector<Member> members_;
};

//---------------------------------------------------------------------------//
// Classic Preisach construction
//---------------------------------------------------------------------------//

struct PreisachThreshold
{
    double rho1;  //!< up-switching threshold
    double rho2;  //!< down-switching threshold, rho2 < rho1
    double weight = 1.0;
    int initial = -1;  //!< -1 or +1
};

RelayFamily preisach_family(std::vector<PreisachThreshold> const& thresholds);

/*!
 * Midpoint grid of n nodes per axis on (lo, hi); one member per node pair
 * with rho2 < rho1, each weighted by the cell area.
 */
RelayFamily preisach_grid(double lo, double hi, std::size_t n,
                          int initial = -1);

//---------------------------------------------------------------------------//
// Superposition
//---------------------------------------------------------------------------//

/*!
 * Right-continuous record of (Hu)(t): values[k] holds on
 * [times[k], times[k+1]).
 */
struct HysteresisOutput
{
    std::vector<double> times;
    std::vector<Vec> values;
    std::vector<RelayTrajectory> trajectories;  //!< per member

    Vec value_at(double t) const;
    std::vector<std::size_t> states_at(double t) const;
};

HysteresisOutput apply(RelayFamily const& family, Signal const& signal);

//! Weighted payload sum for a given state profile.
Vec aggregate(RelayFamily const& family,
              std::vector<std::size_t> const& states);

//---------------------------------------------------------------------------//
// Monotropy
//---------------------------------------------------------------------------//

double monotropy_distance(RelayFamily const& family,
                          std::span<double const> x);

using StatePair = std::pair<std::size_t, std::size_t>;

struct MonotropyInterval
{
    double t1;
    double t2;
    //! Direction of the switches inside; empty if there are none.
    std::optional<StatePair> pair;
};

struct TransitionPoint
{
    double time;
    StatePair pair;
    std::size_t member;
    std::string rho_label;
};

struct MonotropyReport
{
    std::vector<MonotropyInterval> intervals;
    std::vector<TransitionPoint> transition_points;

    //! True if t lies in the domain and is not a transition point.
    bool in_interval(double t) const;
};

/*!
 * Split the time domain at transition points.
 *
 * Switch events of all members are merged in time order and grouped into
 * maximal runs with the same (from, to) pair. The last switch of each run is
 * a transition point; the intervals between them are maximal intervals of
 * monotropy labelled with the pair of the run that follows.
 */
MonotropyReport analyze_monotropy(RelayFamily const& family,
                                  Signal const& signal);

//---------------------------------------------------------------------------//
// Pre-order and local wiping-out
//---------------------------------------------------------------------------//

//! C_alpha of rho1, within the window, is contained in C_alpha of rho2.
bool preorder_leq(RelayFamily const& family, std::string const& rho1,
                  std::string const& rho2, std::size_t alpha,
                  Region const& window);

//! Strict version: leq one way and not the other.
bool preorder_less(RelayFamily const& family, std::size_t i, std::size_t j,
                   std::size_t alpha, Region const& window);

struct WipeoutPair
{
    double t_prime;
    double t_double_prime;
    StatePair pair;
    std::string rho_prime;
    std::string rho_double_prime;
    //! rho'' strictly dominates rho' in the pre-order of the pair's source.
    bool eligible = false;
    //! The reduced history can be compared at t''.
    bool comparable = false;
    bool states_equal = false;
    double aggregate_diff = 0.0;
};

struct WipeoutReport
{
    std::vector<WipeoutPair> pairs;
    //! Wiping-out hypotheses the scenario breaks.
    std::vector<std::string> precondition_violations;

    std::size_t eligible_count() const;
    //! Eligible, comparable pairs whose states differ.
    std::size_t failures() const;
};

/*!
 * Check local wiping-out on every pair of same-direction transition points.
 *
 * For a pair t' < t'' the reduced history drops the signal samples in
 * [t', t^), where t^ is the first switch after t'. Full and reduced
 * histories are compared at t'' on per-member states and on the aggregate.
 * Ineligible pairs are compared as well so that the check can be seen to
 * discriminate.
 */
WipeoutReport check_local_wipeout(RelayFamily const& family,
                                  Signal const& signal, Region const& window,
                                  std::size_t alpha0, std::size_t alpha1);

}  // namespace hystk::hysteresis
