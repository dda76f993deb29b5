// SPDX-License-Identifier: Apache-2.0
#include "hystk/relay.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hystk/errors.hpp"

namespace hystk::relay {

using geometry::HalfSpace;

namespace {

std::string fmt_point(Vec const& p)
{
    std::ostringstream os;
    os.precision(12);
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i)
        os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

}  // namespace

//---------------------------------------------------------------------------//
// RelaySpec
//---------------------------------------------------------------------------//

RelaySpec::RelaySpec(Region omega, std::vector<StateId> states,
                     std::vector<Region> continuation,
                     std::map<FacetKey, BoundaryFacet> facets)
    : omega_(std::move(omega)),
      states_(std::move(states)),
      continuation_(std::move(continuation)),
      facets_(std::move(facets))
{
    if (states_.size() < 2)
        throw PreconditionViolation("RelaySpec: need at least two states");
    if (continuation_.size() != states_.size())
        throw PreconditionViolation(
            "RelaySpec: one continuation set per state required");
    std::size_t const pd = states_.front().payload.size();
    for (std::size_t a = 0; a < states_.size(); ++a)
    {
        if (states_[a].index != a)
            throw PreconditionViolation("RelaySpec: state indices must be 0..|A|-1");
        if (states_[a].payload.size() != pd)
            throw DimensionMismatch("RelaySpec: payload dimension differs across states");
        if (continuation_[a].dim() != omega_.dim())
            throw DimensionMismatch("RelaySpec: continuation set dimension");
    }
    for (auto const& [key, f] : facets_)
    {
        auto [a, b] = key;
        if (a >= states_.size() || b >= states_.size() || a == b)
            throw PreconditionViolation("RelaySpec: invalid facet state pair");
        if (f.dim() != omega_.dim())
            throw DimensionMismatch("RelaySpec: facet dimension");
    }
}

BoundaryFacet const* RelaySpec::facet(std::size_t a, std::size_t b) const
{
    auto it = facets_.find({a, b});
    return it == facets_.end() ? nullptr : &it->second;
}

char const* to_string(Condition c) noexcept
{
    switch (c)
    {
        case Condition::continuation_outside_omega:
            return "continuation set not contained in the input domain";
        case Condition::covering:
            return "continuation sets do not cover the input domain";
        case Condition::facet_overlap:
            return "switching facets of one state overlap";
        case Condition::facet_outside_target:
            return "switching facet not contained in the target continuation set";
        case Condition::boundary_uncovered:
            return "relative boundary not covered by switching facets";
    }
    return "unknown";
}

//---------------------------------------------------------------------------//
// Validation
//---------------------------------------------------------------------------//

namespace {

struct Box
{
    Vec lo;
    Vec hi;
};

// Finite vertices of every set involved (dims 1-2 only).
std::vector<Vec> finite_vertices(RelaySpec const& spec)
{
    std::vector<Vec> out;
    if (spec.dim() > 2)
        return out;
    auto collect = [&](std::vector<HalfSpace> const& hs) {
        double const m = geometry::clipping_half_width(hs);
        for (auto const& v : geometry::clipped_vertices(hs, spec.dim(), m))
        {
            bool finite = true;
            for (double c : v)
                finite = finite && std::abs(c) < 0.5 * m;
            if (finite)
                out.push_back(v);
        }
    };
    collect(spec.omega().halfspaces());
    for (std::size_t a = 0; a < spec.state_count(); ++a)
        collect(spec.continuation(a).halfspaces());
    for (auto const& [key, f] : spec.facets())
    {
        std::vector<HalfSpace> all = f.owner_constraints();
        all.push_back(f.hyperplane());
        double const m = geometry::clipping_half_width(all);
        if (auto ext = geometry::facet_closure_extent(f, m))
        {
            for (Vec const* v : {&ext->first, &ext->second})
            {
                bool finite = true;
                for (double c : *v)
                    finite = finite && std::abs(c) < 0.5 * m;
                if (finite)
                    out.push_back(*v);
            }
        }
    }
    return out;
}

Box sampling_box(RelaySpec const& spec, std::vector<Vec> const& verts)
{
    std::size_t const n = spec.dim();
    Box box{Vec(n, -1.0), Vec(n, 1.0)};
    std::vector<Vec> pts = verts;
    for (std::size_t a = 0; a < spec.state_count(); ++a)
        pts.push_back(spec.continuation(a).witness());
    pts.push_back(spec.omega().witness());
    if (pts.empty())
        return box;
    box.lo = pts.front();
    box.hi = pts.front();
    for (auto const& p : pts)
        for (std::size_t d = 0; d < n; ++d)
        {
            box.lo[d] = std::min(box.lo[d], p[d]);
            box.hi[d] = std::max(box.hi[d], p[d]);
        }
    for (std::size_t d = 0; d < n; ++d)
    {
        double const margin = std::max(1.0, 0.5 * (box.hi[d] - box.lo[d]));
        box.lo[d] -= margin;
        box.hi[d] += margin;
    }
    return box;
}

// Points along the closure of a facet, inside the sampling box.
std::vector<Vec> facet_samples(BoundaryFacet const& f, Box const& box,
                               std::size_t count)
{
    double reach = 1.0;
    for (std::size_t d = 0; d < box.lo.size(); ++d)
        reach = std::max({reach, std::abs(box.lo[d]), std::abs(box.hi[d])});
    auto ext = geometry::facet_closure_extent(f, 2.0 * reach);
    if (!ext)
        return {};
    auto const& [p, q] = *ext;
    std::vector<Vec> out;
    out.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
    {
        double const lam = static_cast<double>(i) / count;
        out.push_back(p + lam * (q - p));
    }
    return out;
}

}  // namespace

std::vector<Violation> validate(RelaySpec const& spec,
                                ValidationOptions const& opts)
{
    std::vector<Violation> out;
    std::size_t const n = spec.dim();
    std::size_t const na = spec.state_count();
    Region const& omega = spec.omega();

    auto const verts = finite_vertices(spec);
    Box const box = sampling_box(spec, verts);

    // Uniform samples, structure-of-arrays for the batched membership test.
    std::mt19937_64 rng(opts.seed);
    std::size_t const ns = opts.samples;
    std::vector<double> coords(n * ns);
    for (std::size_t p = 0; p < ns; ++p)
        for (std::size_t d = 0; d < n; ++d)
        {
            std::uniform_real_distribution<double> u(box.lo[d], box.hi[d]);
            coords[d * ns + p] = u(rng);
        }
    auto point = [&](std::size_t p) {
        Vec v(n);
        for (std::size_t d = 0; d < n; ++d)
            v[d] = coords[d * ns + p];
        return v;
    };

    auto const in_omega = omega.contains_batch(coords, ns);
    std::vector<std::vector<char>> in_c(na);
    for (std::size_t a = 0; a < na; ++a)
        in_c[a] = spec.continuation(a).contains_batch(coords, ns);

    // C_a subset of omega
    for (std::size_t a = 0; a < na; ++a)
    {
        Region const& ca = spec.continuation(a);
        bool ok = true;
        Vec witness;
        if (n <= 2)
        {
            ok = geometry::region_subset_within(ca, omega, ca);
        }
        for (std::size_t p = 0; ok && p < ns; ++p)
            if (in_c[a][p] && !in_omega[p])
            {
                ok = false;
                witness = point(p);
            }
        if (!ok)
        {
            if (witness.empty())
                witness = ca.witness();
            out.push_back({Condition::continuation_outside_omega,
                           "state '" + spec.state(a).name + "'", witness});
        }
    }

    // Covering: every sample and every vertex of omega lies in some C_a.
    auto covered = [&](Vec const& x) {
        for (std::size_t a = 0; a < na; ++a)
            if (spec.continuation(a).contains(x))
                return true;
        return false;
    };
    bool cover_ok = true;
    for (std::size_t p = 0; cover_ok && p < ns; ++p)
    {
        if (!in_omega[p])
            continue;
        bool any = false;
        for (std::size_t a = 0; a < na && !any; ++a)
            any = in_c[a][p];
        if (!any)
        {
            cover_ok = false;
            out.push_back({Condition::covering,
                           "uncovered sample point", point(p)});
        }
    }
    for (std::size_t i = 0; cover_ok && i < verts.size(); ++i)
    {
        if (omega.contains(verts[i]) && !covered(verts[i]))
        {
            cover_ok = false;
            out.push_back(
                {Condition::covering, "uncovered vertex", verts[i]});
        }
    }

    if (n > 2)
        return out;

    // Facet checks
    for (std::size_t a = 0; a < na; ++a)
    {
        Region const& ca = spec.continuation(a);
        std::vector<std::pair<std::size_t, std::vector<Vec>>> samples;
        std::vector<Vec> special;
        for (std::size_t b = 0; b < na; ++b)
        {
            BoundaryFacet const* f = spec.facet(a, b);
            if (!f)
                continue;
            auto pts = facet_samples(*f, box, opts.boundary_samples);
            if (!pts.empty())
            {
                special.push_back(pts.front());
                special.push_back(pts.back());
            }
            samples.emplace_back(b, std::move(pts));
        }

        for (auto const& [b, pts] : samples)
        {
            BoundaryFacet const& f = *spec.facet(a, b);
            Region const& cb = spec.continuation(b);
            bool inside_ok = true;
            for (auto const& x : pts)
            {
                if (!geometry::facet_contains(f, x))
                    continue;
                if (inside_ok && !cb.contains(x))
                {
                    inside_ok = false;
                    out.push_back({Condition::facet_outside_target,
                                   "S(" + spec.state(a).name + ","
                                       + spec.state(b).name + ") point "
                                       + fmt_point(x),
                                   x});
                }
            }
            bool overlap_reported = false;
            for (auto const& [c, other] : samples)
            {
                if (c == b || overlap_reported)
                    continue;
                BoundaryFacet const& g = *spec.facet(a, c);
                for (auto const& x : pts)
                {
                    if (geometry::facet_contains(f, x)
                        && geometry::facet_contains(g, x))
                    {
                        overlap_reported = true;
                        out.push_back({Condition::facet_overlap,
                                       "S(" + spec.state(a).name + ","
                                           + spec.state(b).name + ") and S("
                                           + spec.state(a).name + ","
                                           + spec.state(c).name + ")",
                                       x});
                        break;
                    }
                }
            }
        }

        // Relative boundary of C_a: sample each face and require a facet.
        bool boundary_ok = true;
        for (std::size_t h = 0; boundary_ok && h < ca.halfspaces().size(); ++h)
        {
            BoundaryFacet face(ca, h);
            auto pts = facet_samples(face, box, opts.boundary_samples);
            for (auto const& s : special)
                if (ca.halfspaces()[h].on_boundary(s))
                    pts.push_back(s);
            for (auto const& x : pts)
            {
                if (!geometry::facet_contains(face, x) || !omega.contains(x))
                    continue;
                bool hit = false;
                for (auto const& [b, unused] : samples)
                    hit = hit || geometry::facet_contains(*spec.facet(a, b), x);
                if (!hit)
                {
                    boundary_ok = false;
                    out.push_back({Condition::boundary_uncovered,
                                   "state '" + spec.state(a).name
                                       + "' boundary point " + fmt_point(x),
                                   x});
                    break;
                }
            }
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// Evolution
//---------------------------------------------------------------------------//

RelayTrajectory evolve(RelaySpec const& spec, Signal const& signal,
                       std::size_t alpha0, std::size_t max_events)
{
    if (signal.dim() != spec.dim())
        throw DimensionMismatch("evolve: signal and relay dimensions differ");
    if (alpha0 >= spec.state_count())
        throw PreconditionViolation("evolve: initial state out of range");

    RelayTrajectory traj;
    traj.initial_state = alpha0;
    traj.start_time = signal.start_time();
    traj.final_time = signal.end_time();

    Vec const u0 = signal.at(signal.start_time());
    if (!spec.continuation(alpha0).closure_contains(u0))
        throw IncompatibleInitialState("evolve: u(t0) = " + fmt_point(u0)
                                       + " is not in the continuation set of '"
                                       + spec.state(alpha0).name + "'");

    std::size_t state = alpha0;
    double t = signal.start_time();
    for (;;)
    {
        auto ex = geometry::exit_time(signal, spec.continuation(state), t);
        if (!ex)
            break;
        if (!spec.omega().contains(ex->point))
            throw SignalLeftOmega("evolve: signal leaves the input domain at t = "
                                  + std::to_string(ex->time) + ", point "
                                  + fmt_point(ex->point));

        std::size_t target = state;
        std::size_t matches = 0;
        for (std::size_t b = 0; b < spec.state_count(); ++b)
        {
            if (b == state)
                continue;
            BoundaryFacet const* f = spec.facet(state, b);
            if (f && geometry::facet_contains(*f, ex->point))
            {
                target = b;
                ++matches;
            }
        }
        if (matches != 1)
            throw ExitPointUnclassified(
                "evolve: exit point " + fmt_point(ex->point) + " from '"
                + spec.state(state).name + "' at t = " + std::to_string(ex->time)
                + (matches == 0 ? " lies on no switching facet"
                                : " lies on several switching facets"));
        if (!traj.events.empty() && !(ex->time > traj.events.back().time))
            throw ExitPointUnclassified(
                "evolve: switch target '" + spec.state(target).name
                + "' leaves its continuation set immediately at "
                + fmt_point(ex->point));
        if (traj.events.size() >= max_events)
            throw Error("evolve: event cap exceeded");

        traj.events.push_back({ex->time, state, target, ex->point});
        state = target;
        t = ex->time;
    }
    return traj;
}

std::size_t output_at(RelayTrajectory const& traj, double t)
{
    if (t < traj.start_time || t > traj.final_time)
        throw PreconditionViolation("output_at: t outside trajectory domain");
    auto it = std::upper_bound(
        traj.events.begin(), traj.events.end(), t,
        [](double v, SwitchEvent const& e) { return v < e.time; });
    if (it == traj.events.begin())
        return traj.initial_state;
    return std::prev(it)->to;
}

}  // namespace hystk::relay
