// SPDX-License-Identifier: Apache-2.0
//! \file relay.hpp
//! Multi-state non-ideal relay over vector inputs.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hystk/geometry.hpp"

namespace hystk::relay {

using geometry::BoundaryFacet;
using geometry::Region;
using geometry::Signal;

//! Elementary output state; the payload is what the superposition integrates.
struct StateId
{
    std::size_t index = 0;
    Vec payload;
    std::string name;
};

//---------------------------------------------------------------------------//
/*!
 * Continuation sets and switching facets of one relay.
 *
 * Construction checks the structural shape only (indices, dimensions,
 * payload sizes). Whether the sets cover the input domain and the facets
 * partition the boundaries is a property checked by validate().
 */
class RelaySpec
{
  public:
    using FacetKey = std::pair<std::size_t, std::size_t>;

    RelaySpec(Region omega, std::vector<StateId> states,
              std::vector<Region> continuation,
              std::map<FacetKey, BoundaryFacet> facets);

    std::size_t dim() const noexcept { return omega_.dim(); }
    std::size_t state_count() const noexcept { return states_.size(); }
    std::size_t payload_dim() const noexcept
    {
        return states_.front().payload.size();
    }

    Region const& omega() const noexcept { return omega_; }
    std::vector<StateId> const& states() const noexcept { return states_; }
    StateId const& state(std::size_t a) const { return states_.at(a); }
    Region const& continuation(std::size_t a) const
    {
        return continuation_.at(a);
    }
    //! S_ab, or nullptr if the relay never switches a -> b.
    BoundaryFacet const* facet(std::size_t a, std::size_t b) const;
    std::map<FacetKey, BoundaryFacet> const& facets() const noexcept
    {
        return facets_;
    }

  private:
    Region omega_;
    std::vector<StateId> states_;
    std::vector<Region> continuation_;
    std::map<FacetKey, BoundaryFacet> facets_;
};

//---------------------------------------------------------------------------//
// Validation
//---------------------------------------------------------------------------//

enum class Condition
{
    continuation_outside_omega,
    covering,
    facet_overlap,
    facet_outside_target,
    boundary_uncovered,
};

char const* to_string(Condition c) noexcept;

struct Violation
{
    Condition condition;
    std::string message;
    Vec witness;
};

struct ValidationOptions
{
    std::uint64_t seed = 20240229;
    std::size_t samples = 10000;
    //! Points sampled along every boundary face or facet.
    std::size_t boundary_samples = 400;
};

/*!
 * Check the covering and boundary-partition conditions.
 *
 * Covering and boundary coverage are falsification checks: seeded uniform
 * samples in a box around the finite geometry plus every polytope vertex.
 * Facet checks sample along each facet, so they run in dimensions 1 and 2.
 */
std::vector<Violation> validate(RelaySpec const& spec,
                                ValidationOptions const& opts = {});

//---------------------------------------------------------------------------//
// Evolution
//---------------------------------------------------------------------------//

struct SwitchEvent
{
    double time;
    std::size_t from;
    std::size_t to;
    Vec point;
};

/*!
 * Right-continuous relay output: initial_state on [start_time, t_1), then the
 * target of event k on [t_k, t_{k+1}).
 */
struct RelayTrajectory
{
    std::size_t initial_state = 0;
    double start_time = 0.0;
    double final_time = 0.0;
    std::vector<SwitchEvent> events;

    std::size_t final_state() const noexcept
    {
        return events.empty() ? initial_state : events.back().to;
    }
};

inline constexpr std::size_t kMaxEvents = 1'000'000;

/*!
 * Event-driven evolution: repeatedly take the exit time from the current
 * continuation set and switch to the unique state whose facet holds the exit
 * point.
 *
 * Throws IncompatibleInitialState, ExitPointUnclassified (no facet, or more
 * than one, holds the exit point) or SignalLeftOmega.
 */
RelayTrajectory evolve(RelaySpec const& spec, Signal const& signal,
                       std::size_t alpha0,
                       std::size_t max_events = kMaxEvents);

//! State index at time t (right-continuous).
std::size_t output_at(RelayTrajectory const& traj, double t);

}  // namespace hystk::relay
