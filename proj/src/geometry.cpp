// SPDX-License-Identifier: Apache-2.0
#include "hystk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hystk/errors.hpp"
#include "hystk/simd.hpp"

namespace hystk::geometry {

namespace {

void require_dim(std::size_t expected, std::size_t got, char const* what)
{
    if (expected != got)
        throw DimensionMismatch(std::string(what) + ": expected dimension "
                                + std::to_string(expected) + ", got "
                                + std::to_string(got));
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

//---------------------------------------------------------------------------//
// HalfSpace
//---------------------------------------------------------------------------//

HalfSpace::HalfSpace(Vec n, double c) : normal(std::move(n)), offset(c)
{
    double const len = norm2(normal);
    if (!(len > 0.0) || !std::isfinite(len))
        throw PreconditionViolation("HalfSpace: normal must be nonzero");
    if (!std::isfinite(offset))
        throw PreconditionViolation("HalfSpace: offset must be finite");
    for (double& v : normal)
        v /= len;
    offset /= len;
}

double HalfSpace::slack(std::span<double const> x) const
{
    require_dim(dim(), x.size(), "HalfSpace::slack");
    return simd::dot(normal.data(), x.data(), x.size()) - offset;
}

double HalfSpace::tolerance() const noexcept
{
    return kGeoEps * (1.0 + std::abs(offset));
}

bool HalfSpace::on_boundary(std::span<double const> x) const
{
    return std::abs(slack(x)) <= tolerance();
}

//---------------------------------------------------------------------------//
// Region
//---------------------------------------------------------------------------//

Region::Region(std::size_t dim, std::vector<HalfSpace> halfspaces,
               std::optional<Vec> witness)
    : dim_(dim), hs_(std::move(halfspaces))
{
    if (dim_ == 0)
        throw PreconditionViolation("Region: ambient dimension must be positive");
    for (auto const& h : hs_)
        require_dim(dim_, h.dim(), "Region");

    packed_normals_.reserve(hs_.size() * dim_);
    for (auto const& h : hs_)
    {
        packed_normals_.insert(packed_normals_.end(), h.normal.begin(),
                               h.normal.end());
        shrunk_offsets_.push_back(h.offset - h.tolerance());
    }

    if (witness)
    {
        require_dim(dim_, witness->size(), "Region witness");
        if (!contains(*witness))
            throw PreconditionViolation("Region: witness is not interior");
        witness_ = std::move(*witness);
        return;
    }

    if (dim_ == 1)
    {
        double lo = -kInf;
        double hi = kInf;
        for (auto const& h : hs_)
        {
            if (h.normal[0] > 0)
                hi = std::min(hi, h.offset);
            else
                lo = std::max(lo, -h.offset);
        }
        double w = 0.0;
        if (std::isfinite(lo) && std::isfinite(hi))
            w = 0.5 * (lo + hi);
        else if (std::isfinite(hi))
            w = hi - 1.0;
        else if (std::isfinite(lo))
            w = lo + 1.0;
        witness_ = {w};
    }
    else if (dim_ == 2)
    {
        auto verts = clipped_vertices(hs_, dim_, clipping_half_width(hs_));
        if (verts.size() >= 3)
        {
            Vec c{0.0, 0.0};
            for (auto const& v : verts)
            {
                c[0] += v[0];
                c[1] += v[1];
            }
            witness_ = {c[0] / verts.size(), c[1] / verts.size()};
        }
    }
    else
    {
        witness_ = Vec(dim_, 0.0);
    }

    if (witness_.size() != dim_ || !contains(witness_))
        throw PreconditionViolation(
            "Region: could not certify a nonempty interior");
}

Region Region::whole_space(std::size_t dim) { return Region(dim, {}); }

Region Region::interval(double lo, double hi)
{
    if (!(lo < hi))
        throw PreconditionViolation("Region::interval: need lo < hi");
    std::vector<HalfSpace> hs;
    if (std::isfinite(hi))
        hs.emplace_back(Vec{1.0}, hi);
    if (std::isfinite(lo))
        hs.emplace_back(Vec{-1.0}, -lo);
    return Region(1, std::move(hs));
}

bool Region::contains(std::span<double const> x) const
{
    require_dim(dim_, x.size(), "Region::contains");
    for (auto const& h : hs_)
        if (!(h.slack(x) < -h.tolerance()))
            return false;
    return true;
}

bool Region::closure_contains(std::span<double const> x) const
{
    require_dim(dim_, x.size(), "Region::closure_contains");
    for (auto const& h : hs_)
        if (h.slack(x) > h.tolerance())
            return false;
    return true;
}

std::vector<char> Region::contains_batch(std::span<double const> coords,
                                         std::size_t count) const
{
    if (coords.size() != count * dim_)
        throw DimensionMismatch("Region::contains_batch: coordinate block size");
    std::vector<double> slack(count);
    simd::halfspace_max_slack(packed_normals_.data(), shrunk_offsets_.data(),
                              hs_.size(), dim_, coords.data(), count,
                              slack.data());
    std::vector<char> out(count);
    for (std::size_t p = 0; p < count; ++p)
        out[p] = slack[p] < 0.0;
    return out;
}

Region Region::intersected(Region const& other) const
{
    require_dim(dim_, other.dim_, "Region::intersected");
    std::vector<HalfSpace> hs = hs_;
    hs.insert(hs.end(), other.hs_.begin(), other.hs_.end());
    return Region(dim_, std::move(hs));
}

//---------------------------------------------------------------------------//
// BoundaryFacet
//---------------------------------------------------------------------------//

BoundaryFacet::BoundaryFacet(Region const& owner, std::size_t supporting_index,
                             std::vector<ClipConstraint> clip)
    : index_(supporting_index), clip_(std::move(clip))
{
    auto const& hs = owner.halfspaces();
    if (supporting_index >= hs.size())
        throw PreconditionViolation(
            "BoundaryFacet: supporting index out of range");
    support_ = hs[supporting_index];
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (i != supporting_index)
            owner_.push_back(hs[i]);
    for (auto const& c : clip_)
        require_dim(owner.dim(), c.halfspace.dim(), "BoundaryFacet clip");
}

BoundaryFacet BoundaryFacet::segment(Region const& owner,
                                     std::size_t supporting_index,
                                     Vec const& p, Vec const& q, bool p_closed,
                                     bool q_closed)
{
    if (owner.dim() != 2)
        throw UnsupportedDimension("BoundaryFacet::segment is 2-D only");
    require_dim(2, p.size(), "BoundaryFacet::segment");
    require_dim(2, q.size(), "BoundaryFacet::segment");
    if (supporting_index >= owner.halfspaces().size())
        throw PreconditionViolation(
            "BoundaryFacet: supporting index out of range");
    auto const& sup = owner.halfspaces()[supporting_index];
    if (!sup.on_boundary(p) || !sup.on_boundary(q))
        throw PreconditionViolation(
            "BoundaryFacet::segment: endpoints must lie on the supporting line");
    Vec const d = q - p;
    std::vector<ClipConstraint> clip;
    // d.y >= d.p  <=>  (-d).y <= -(d.p)
    clip.push_back({HalfSpace(-1.0 * d, -dot(d, p)), p_closed});
    clip.push_back({HalfSpace(d, dot(d, q)), q_closed});
    return BoundaryFacet(owner, supporting_index, std::move(clip));
}

//---------------------------------------------------------------------------//
// Operations
//---------------------------------------------------------------------------//

bool contains(Region const& region, std::span<double const> x)
{
    return region.contains(x);
}

std::optional<Exit> exit_time(Signal const& signal, Region const& region,
                              double t)
{
    require_dim(region.dim(), signal.dim(), "exit_time");
    if (t < signal.start_time() || t > signal.end_time())
        throw PreconditionViolation("exit_time: t outside the signal domain");

    Vec const start = signal.at(t);
    if (!region.closure_contains(start))
        throw PreconditionViolation("exit_time: signal(t) is not in the region");

    auto const& times = signal.times();
    auto const& pts = signal.points();
    auto const& hs = region.halfspaces();
    std::size_t const k0 = signal.segment_index(t);

    if (k0 + 1 >= signal.size())
    {
        // At the final sample: no segment left to move inward along.
        if (region.contains(start))
            return std::nullopt;
        return Exit{t, start};
    }

    for (std::size_t k = k0; k + 1 < signal.size(); ++k)
    {
        bool const first = (k == k0);
        double const a = first ? t : times[k];
        double const b = times[k + 1];
        Vec const& pa = first ? start : pts[k];
        Vec const& pb = pts[k + 1];

        double best = kInf;
        for (auto const& h : hs)
        {
            double const tol = h.tolerance();
            double const ga = h.slack(pa);
            double const gb = h.slack(pb);
            if (ga >= -tol)
            {
                // Starting in the band: only a strictly inward motion keeps
                // the signal inside.
                if (!(gb < ga))
                    best = 0.0;
                continue;
            }
            if (gb >= 0.0)
                best = std::min(best, ga / (ga - gb));
            else if (gb >= -tol)
                best = std::min(best, 1.0);
        }
        if (best <= 1.0)
        {
            double const s = (best == 1.0) ? b : a + best * (b - a);
            Vec p(pa.size());
            for (std::size_t d = 0; d < p.size(); ++d)
                p[d] = pa[d] + best * (pb[d] - pa[d]);
            return Exit{s, std::move(p)};
        }
    }
    return std::nullopt;
}

bool facet_contains(BoundaryFacet const& facet, std::span<double const> x)
{
    require_dim(facet.dim(), x.size(), "facet_contains");
    if (!facet.hyperplane().on_boundary(x))
        return false;
    for (auto const& h : facet.owner_constraints())
        if (h.slack(x) > h.tolerance())
            return false;
    for (auto const& c : facet.clip())
    {
        double const s = c.halfspace.slack(x);
        double const tol = c.halfspace.tolerance();
        if (c.closed ? s > tol : !(s < -tol))
            return false;
    }
    return true;
}

bool region_subset_within(Region const& r1, Region const& r2,
                          Region const& window)
{
    require_dim(r1.dim(), r2.dim(), "region_subset_within");
    require_dim(r1.dim(), window.dim(), "region_subset_within");
    std::size_t const dim = r1.dim();
    if (dim > 2)
        throw UnsupportedDimension(
            "region_subset_within supports dimensions 1 and 2");

    std::vector<HalfSpace> clipped = r1.halfspaces();
    clipped.insert(clipped.end(), window.halfspaces().begin(),
                   window.halfspaces().end());
    std::vector<HalfSpace> all = clipped;
    all.insert(all.end(), r2.halfspaces().begin(), r2.halfspaces().end());
    double const m = clipping_half_width(all);

    auto const verts = clipped_vertices(clipped, dim, m);
    // An open set whose closure has no interior is empty.
    double const measure = clipped_measure(verts, dim);
    double const scale = dim == 1 ? kGeoEps : kGeoEps * kGeoEps;
    if (verts.empty() || measure <= scale)
        return true;

    for (auto const& h : r2.halfspaces())
        for (auto const& v : verts)
            if (h.slack(v) > h.tolerance())
                return false;
    return true;
}

namespace {

// Dykstra's alternating projections onto {n.y = c} and closed half-spaces.
double dykstra_distance(std::span<double const> x, HalfSpace const& plane,
                        std::vector<HalfSpace> const& cons)
{
    std::size_t const n = x.size();
    std::size_t const sets = cons.size() + 1;
    std::vector<Vec> incr(sets, Vec(n, 0.0));
    Vec y(x.begin(), x.end());
    for (int iter = 0; iter < 20000; ++iter)
    {
        Vec const prev = y;
        for (std::size_t s = 0; s < sets; ++s)
        {
            Vec z = y + incr[s];
            Vec proj = z;
            if (s == 0)
            {
                double const g = plane.slack(z);
                proj = z - g * plane.normal;
            }
            else
            {
                double const g = cons[s - 1].slack(z);
                if (g > 0)
                    proj = z - g * cons[s - 1].normal;
            }
            incr[s] = z - proj;
            y = std::move(proj);
        }
        if (norm2(y - prev) < 1e-15)
            break;
    }
    for (auto const& c : cons)
        if (c.slack(y) > 1e3 * c.tolerance())
            return kInf;
    return norm2(Vec(x.begin(), x.end()) - y);
}

}  // namespace

double distance_to_facet(std::span<double const> x,
                         BoundaryFacet const& facet)
{
    require_dim(facet.dim(), x.size(), "distance_to_facet");
    std::size_t const dim = facet.dim();
    if (dim <= 2)
    {
        std::vector<HalfSpace> cons = facet.owner_constraints();
        for (auto const& c : facet.clip())
            cons.push_back(c.halfspace);
        cons.push_back(facet.hyperplane());
        double const m = clipping_half_width(cons);
        auto ext = facet_closure_extent(facet, m);
        if (!ext)
            return kInf;
        auto const& [p, q] = *ext;
        Vec const xv(x.begin(), x.end());
        Vec const d = q - p;
        double const len2 = dot(d, d);
        double lam = len2 > 0 ? dot(xv - p, d) / len2 : 0.0;
        lam = std::clamp(lam, 0.0, 1.0);
        Vec const y = p + lam * d;
        return norm2(xv - y);
    }
    std::vector<HalfSpace> cons = facet.owner_constraints();
    for (auto const& c : facet.clip())
        cons.push_back(c.halfspace);
    return dykstra_distance(x, facet.hyperplane(), cons);
}

}  // namespace hystk::geometry
