// SPDX-License-Identifier: Apache-2.0
#include "hystk/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hystk/errors.hpp"
#include "hystk/fixtures.hpp"

namespace hystk::hysteresis {

RelayFamily::RelayFamily(std::vector<Member> members)
    : members_(std::move(members))
{
    if (members_.empty())
        throw PreconditionViolation("RelayFamily: empty family");
    std::size_t const n = members_.front().spec.dim();
    std::size_t const pd = members_.front().spec.payload_dim();
    for (std::size_t i = 0; i < members_.size(); ++i)
    {
        auto const& m = members_[i];
        if (m.spec.dim() != n)
            throw DimensionMismatch("RelayFamily: member '" + m.label
                                    + "' has a different input dimension");
        if (m.spec.payload_dim() != pd)
            throw DimensionMismatch("RelayFamily: member '" + m.label
                                    + "' has a different payload dimension");
        if (!std::isfinite(m.weight) || !(m.weight > 0.0))
            throw PreconditionViolation("RelayFamily: member '" + m.label
                                        + "' needs a finite positive weight");
        if (m.initial_state >= m.spec.state_count())
            throw PreconditionViolation("RelayFamily: member '" + m.label
                                        + "' initial state out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (members_[j].label == m.label)
                throw PreconditionViolation("RelayFamily: duplicate label '"
                                            + m.label + "'");
    }
}

std::size_t RelayFamily::index_of(std::string const& label) const
{
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].label == label)
            return i;
    throw PreconditionViolation("RelayFamily: no member '" + label + "'");
}

double RelayFamily::total_weight() const noexcept
{
    double w = 0.0;
    for (auto const& m : members_)
        w += m.weight;
    return w;
}

RelayFamily RelayFamily::scaled(double s) const
{
    auto ms = members_;
    for (auto& m : ms)
        m.weight *= s;
    return RelayFamily(std::move(ms));
}

//---------------------------------------------------------------------------//

RelayFamily preisach_family(std::vector<PreisachThreshold> const& thresholds)
{
    std::vector<Member> ms;
    ms.reserve(thresholds.size());
    for (auto const& t : thresholds)
    {
        if (!(t.rho1 > t.rho2))
            throw PreconditionViolation("preisach_family: need rho1 > rho2");
        if (t.initial != -1 && t.initial != 1)
            throw PreconditionViolation("preisach_family: initial must be -1 or +1");
        std::ostringstream label;
        label.precision(12);
        label << '(' << t.rho1 << ',' << t.rho2 << ')';
        ms.push_back({label.str(), relay::classic_relay(t.rho1, t.rho2),
                      t.weight, t.initial < 0 ? 0u : 1u});
    }
    return RelayFamily(std::move(ms));
}

RelayFamily preisach_grid(double lo, double hi, std::size_t n, int initial)
{
    if (!(lo < hi) || n < 2)
        throw PreconditionViolation("preisach_grid: need lo < hi and n >= 2");
    double const h = (hi - lo) / static_cast<double>(n);
    std::vector<PreisachThreshold> ts;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            ts.push_back({lo + (i + 0.5) * h, lo + (j + 0.5) * h, h * h,
                          initial});
    return preisach_family(ts);
}

//---------------------------------------------------------------------------//

Vec aggregate(RelayFamily const& family, std::vector<std::size_t> const& states)
{
    if (states.size() != family.size())
        throw DimensionMismatch("aggregate: one state per member required");
    Vec out(family.payload_dim(), 0.0);
    for (std::size_t i = 0; i < family.size(); ++i)
    {
        auto const& m = family.member(i);
        Vec const& p = m.spec.state(states[i]).payload;
        for (std::size_t d = 0; d < out.size(); ++d)
            out[d] += m.weight * p[d];
    }
    return out;
}

HysteresisOutput apply(RelayFamily const& family, Signal const& signal)
{
    HysteresisOutput out;
    out.trajectories.reserve(family.size());
    for (auto const& m : family.members())
    {
        try
        {
            out.trajectories.push_back(
                relay::evolve(m.spec, signal, m.initial_state));
        }
        catch (Error const& e)
        {
            throw MemberError(m.label, e.what());
        }
    }

    std::vector<double> times{signal.start_time()};
    for (auto const& tr : out.trajectories)
        for (auto const& e : tr.events)
            times.push_back(e.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    // Sweep the merged times, advancing a cursor per member.
    std::vector<std::size_t> cursor(family.size(), 0);
    std::vector<std::size_t> states(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        states[i] = out.trajectories[i].initial_state;
    for (double t : times)
    {
        for (std::size_t i = 0; i < family.size(); ++i)
        {
            auto const& ev = out.trajectories[i].events;
            while (cursor[i] < ev.size() && ev[cursor[i]].time <= t)
                states[i] = ev[cursor[i]++].to;
        }
        out.times.push_back(t);
        out.values.push_back(aggregate(family, states));
    }
    return out;
}

Vec HysteresisOutput::value_at(double t) const
{
    if (times.empty() || t < times.front())
        throw PreconditionViolation("HysteresisOutput: t before start");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

std::vector<std::size_t> HysteresisOutput::states_at(double t) const
{
    std::vector<std::size_t> out;
    out.reserve(trajectories.size());
    for (auto const& tr : trajectories)
        out.push_back(relay::output_at(tr, t));
    return out;
}

//---------------------------------------------------------------------------//

double monotropy_distance(RelayFamily const& family, std::span<double const> x)
{
    if (x.size() != family.dim())
        throw DimensionMismatch("monotropy_distance: point dimension");
    double d = std::numeric_limits<double>::infinity();
    for (auto const& m : family.members())
        for (auto const& [key, f] : m.spec.facets())
            d = std::min(d, geometry::distance_to_facet(x, f));
    return d;
}

bool preorder_leq(RelayFamily const& family, std::string const& rho1,
                  std::string const& rho2, std::size_t alpha,
                  Region const& window)
{
    auto const& a = family.member(family.index_of(rho1)).spec;
    auto const& b = family.member(family.index_of(rho2)).spec;
    if (window.dim() != family.dim())
        throw DimensionMismatch("preorder_leq: window dimension");
    return geometry::region_subset_within(a.continuation(alpha),
                                          b.continuation(alpha), window);
}

bool preorder_less(RelayFamily const& family, std::size_t i, std::size_t j,
                   std::size_t alpha, Region const& window)
{
    auto const& ci = family.member(i).spec.continuation(alpha);
    auto const& cj = family.member(j).spec.continuation(alpha);
    return geometry::region_subset_within(ci, cj, window)
           && !geometry::region_subset_within(cj, ci, window);
}

}  // namespace hystk::hysteresis
