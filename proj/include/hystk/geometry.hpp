// SPDX-License-Identifier: Apache-2.0
//! \file geometry.hpp
//! Continuation sets, switching facets and piecewise-linear input signals.
//!
//! Regions are finite intersections of open half-spaces, so every set here
//! is open and convex. Membership and boundary tests use the scale-aware band
//! |normal.x - offset| <= kGeoEps * (1 + |offset|) with unit normals; a point
//! inside that band is "on" the hyperplane and therefore *not* in the region.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hystk/linalg.hpp"

namespace hystk::geometry {

inline constexpr double kGeoEps = 1e-9;

//---------------------------------------------------------------------------//
/*!
 * Open half-space {x : normal . x < offset}.
 *
 * The normal is stored with unit length; construction rescales the offset
 * accordingly.
 */
struct HalfSpace
{
    Vec normal;
    double offset = 0.0;

    HalfSpace() = default;
    HalfSpace(Vec normal, double offset);

    std::size_t dim() const noexcept { return normal.size(); }

    //! normal . x - offset (negative inside)
    double slack(std::span<double const> x) const;

    //! Half-width of the "on the hyperplane" band.
    double tolerance() const noexcept;

    bool on_boundary(std::span<double const> x) const;
};

//---------------------------------------------------------------------------//
/*!
 * Open convex region as an intersection of half-spaces.
 *
 * Non-emptiness is certified at construction by an interior witness point:
 * either supplied, or computed from the clipped polytope in dimensions 1-2.
 * An empty list of half-spaces is the whole space.
 */
class Region
{
  public:
    Region(std::size_t dim, std::vector<HalfSpace> halfspaces,
           std::optional<Vec> witness = std::nullopt);

    static Region whole_space(std::size_t dim);
    //! 1-D interval (lo, hi); either end may be infinite.
    static Region interval(double lo, double hi);

    std::size_t dim() const noexcept { return dim_; }
    std::vector<HalfSpace> const& halfspaces() const noexcept { return hs_; }
    Vec const& witness() const noexcept { return witness_; }

    //! Strict membership: every slack below minus its tolerance band.
    bool contains(std::span<double const> x) const;
    //! Membership in the closure (slack within the band counts).
    bool closure_contains(std::span<double const> x) const;

    //! Batched strict membership for `count` points stored structure-of-
    //! arrays (coords[d * count + p]).
    std::vector<char> contains_batch(std::span<double const> coords,
                                     std::size_t count) const;

    //! Intersection with another region of the same dimension.
    Region intersected(Region const& other) const;

  private:
    std::size_t dim_;
    std::vector<HalfSpace> hs_;
    Vec witness_;
    // Packed operands for the batched kernel: unit normals and offsets moved
    // inward by each tolerance band.
    std::vector<double> packed_normals_;
    std::vector<double> shrunk_offsets_;
};

//---------------------------------------------------------------------------//
//! One clip constraint of a facet; `closed` keeps points on its hyperplane.
struct ClipConstraint
{
    HalfSpace halfspace;
    bool closed = false;
};

/*!
 * Part of a region's boundary hyperplane through which the relay switches.
 *
 * The facet is the set of points on the owning region's half-space number
 * `supporting_index` that lie in the closure of the owning region and satisfy
 * every clip constraint (strictly for open constraints).
 */
class BoundaryFacet
{
  public:
    BoundaryFacet(Region const& owner, std::size_t supporting_index,
                  std::vector<ClipConstraint> clip = {});

    //! 2-D segment between P and Q on the supporting line, with per-end
    //! closure flags; P and Q must lie on the line.
    static BoundaryFacet segment(Region const& owner,
                                 std::size_t supporting_index, Vec const& p,
                                 Vec const& q, bool p_closed, bool q_closed);

    std::size_t dim() const noexcept { return support_.dim(); }
    std::size_t supporting_index() const noexcept { return index_; }
    HalfSpace const& hyperplane() const noexcept { return support_; }
    std::vector<ClipConstraint> const& clip() const noexcept { return clip_; }
    //! Other half-spaces of the owning region (closure constraints).
    std::vector<HalfSpace> const& owner_constraints() const noexcept
    {
        return owner_;
    }

  private:
    std::size_t index_;
    HalfSpace support_;
    std::vector<HalfSpace> owner_;
    std::vector<ClipConstraint> clip_;
};

//---------------------------------------------------------------------------//
/*!
 * Piecewise-linear sampled path u(t) in R^n.
 */
class Signal
{
  public:
    Signal(std::vector<double> times, std::vector<Vec> points);

    std::size_t dim() const noexcept { return points_.front().size(); }
    std::size_t size() const noexcept { return times_.size(); }
    std::vector<double> const& times() const noexcept { return times_; }
    std::vector<Vec> const& points() const noexcept { return points_; }
    double start_time() const noexcept { return times_.front(); }
    double end_time() const noexcept { return times_.back(); }

    //! Linear interpolation; t must lie in [start_time, end_time].
    Vec at(double t) const;

    //! Index k of the segment [times[k], times[k+1]) holding t; the last
    //! sample maps to size() - 1.
    std::size_t segment_index(double t) const;

    //! Restriction to [start_time, t].
    Signal truncated(double t) const;

    //! v(s) = u(phi(s)) for the strictly increasing piecewise-linear time
    //! change phi through the knots (s_k, t_k); phi must map onto
    //! [start_time, end_time].
    Signal reparameterized(std::span<double const> s_knots,
                           std::span<double const> t_knots) const;

    //! Copy with every sample whose time lies in [from, to) dropped; the
    //! first and last samples are always kept.
    Signal without_samples(double from, double to) const;

  private:
    std::vector<double> times_;
    std::vector<Vec> points_;
};

//---------------------------------------------------------------------------//
// Operations
//---------------------------------------------------------------------------//

bool contains(Region const& region, std::span<double const> x);

struct Exit
{
    double time;
    Vec point;
};

/*!
 * First time s > t at which the signal leaves the open region.
 *
 * Crossings are solved exactly per linear segment. A start point inside the
 * tolerance band counts as inside only if the signal moves strictly inward
 * through every active hyperplane; otherwise the exit is at t itself.
 * Returns nothing if the signal stays inside until its final time.
 */
std::optional<Exit> exit_time(Signal const& signal, Region const& region,
                              double t);

bool facet_contains(BoundaryFacet const& facet, std::span<double const> x);

/*!
 * Decide (r1 n window) subset-of (r2 n window) exactly by enumerating the
 * vertices of the clipped polytope. Only dimensions 1 and 2 are supported.
 */
bool region_subset_within(Region const& r1, Region const& r2,
                          Region const& window);

//! Euclidean distance from x to the closure of the facet (+inf if empty).
double distance_to_facet(std::span<double const> x,
                         BoundaryFacet const& facet);

//---------------------------------------------------------------------------//
// Polytope helpers for dimensions 1 and 2
//---------------------------------------------------------------------------//

/*!
 * Vertices of the closure of the intersection of `halfspaces` with the box
 * [-half_width, half_width]^dim, in counter-clockwise order for dim 2 and
 * as (lo, hi) for dim 1. Empty if the intersection is empty.
 */
std::vector<Vec> clipped_vertices(std::vector<HalfSpace> const& halfspaces,
                                  std::size_t dim, double half_width);

//! Measure (length or area) of a vertex list from clipped_vertices.
double clipped_measure(std::vector<Vec> const& vertices, std::size_t dim);

//! Default clipping box: large relative to every finite offset involved.
double clipping_half_width(std::vector<HalfSpace> const& halfspaces);

//! Endpoints of the closure of a facet clipped to the box (dims 1-2).
std::optional<std::pair<Vec, Vec>>
facet_closure_extent(BoundaryFacet const& facet, double half_width);

}  // namespace hystk::geometry
