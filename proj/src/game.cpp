// SPDX-License-Identifier: Apache-2.0
#include "hystk/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hystk/errors.hpp"

namespace hystk::game {

void GameSpec::check() const
{
    if (!dynamics || !running_cost || !terminal_cost || !g_map)
        throw PreconditionViolation("GameSpec: missing function");
    if (c1_grid.empty() || c2_grid.empty())
        throw PreconditionViolation("GameSpec: control grids must be nonempty");
    if (time_steps < 1 || !(horizon > 0.0))
        throw PreconditionViolation("GameSpec: need time_steps >= 1 and horizon > 0");
    for (auto const& c : c1_grid)
        if (c.size() != family.dim())
            throw DimensionMismatch("GameSpec: c1 must live in the relays' input space");
    for (auto const& c : c2_grid)
        if (c.size() != c2_grid.front().size())
            throw DimensionMismatch("GameSpec: c2 grid of mixed sizes");
}

//---------------------------------------------------------------------------//

ProfileSpace::ProfileSpace(RelayFamily const& family)
{
    for (auto const& m : family.members())
    {
        radix_.push_back(m.spec.state_count());
        if (size_ > (std::size_t{1} << 24) / radix_.back())
            throw PreconditionViolation("ProfileSpace: too many profiles");
        size_ *= radix_.back();
    }
}

std::size_t ProfileSpace::index(Profile const& p) const
{
    if (p.size() != radix_.size())
        throw DimensionMismatch("ProfileSpace: profile length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        if (p[i] >= radix_[i])
            throw PreconditionViolation("ProfileSpace: state out of range");
        idx = idx * radix_[i] + p[i];
    }
    return idx;
}

Profile ProfileSpace::profile(std::size_t index) const
{
    if (index >= size_)
        throw PreconditionViolation("ProfileSpace: index out of range");
    Profile p(radix_.size());
    for (std::size_t i = radix_.size(); i-- > 0;)
    {
        p[i] = index % radix_[i];
        index /= radix_[i];
    }
    return p;
}

//---------------------------------------------------------------------------//

StateGrid::StateGrid(std::vector<std::vector<double>> axes)
    : axes_(std::move(axes))
{
    if (axes_.empty())
        throw PreconditionViolation("StateGrid: need at least one axis");
    for (auto const& a : axes_)
    {
        if (a.empty())
            throw PreconditionViolation("StateGrid: empty axis");
        for (std::size_t i = 1; i < a.size(); ++i)
            if (!(a[i] > a[i - 1]))
                throw PreconditionViolation("StateGrid: axes must be increasing");
        size_ *= a.size();
    }
}

Vec StateGrid::node(std::size_t i) const
{
    Vec x(axes_.size());
    for (std::size_t d = axes_.size(); d-- > 0;)
    {
        x[d] = axes_[d][i % axes_[d].size()];
        i /= axes_[d].size();
    }
    return x;
}

double StateGrid::interpolate(std::vector<double> const& values, Vec const& y,
                              bool& clamped) const
{
    std::size_t const n = axes_.size();
    if (y.size() != n)
        throw DimensionMismatch("StateGrid: point dimension");
    std::vector<std::size_t> lo(n);
    std::vector<double> frac(n);
    std::vector<std::size_t> stride(n);
    std::size_t s = 1;
    for (std::size_t d = n; d-- > 0;)
    {
        stride[d] = s;
        s *= axes_[d].size();
    }
    clamped = false;
    for (std::size_t d = 0; d < n; ++d)
    {
        auto const& a = axes_[d];
        double v = y[d];
        if (v < a.front() || v > a.back())
        {
            clamped = true;
            v = std::clamp(v, a.front(), a.back());
        }
        if (a.size() == 1)
        {
            lo[d] = 0;
            frac[d] = 0.0;
            continue;
        }
        auto it = std::upper_bound(a.begin(), a.end(), v);
        std::size_t k = static_cast<std::size_t>(it - a.begin());
        k = std::clamp<std::size_t>(k, 1, a.size() - 1) - 1;
        lo[d] = k;
        frac[d] = (v - a[k]) / (a[k + 1] - a[k]);
    }
    double acc = 0.0;
    for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner)
    {
        double w = 1.0;
        std::size_t idx = 0;
        for (std::size_t d = 0; d < n; ++d)
        {
            bool const up = (corner >> d) & 1u;
            if (up && axes_[d].size() == 1)
            {
                w = 0.0;
                break;
            }
            w *= up ? frac[d] : 1.0 - frac[d];
            idx += (lo[d] + (up ? 1 : 0)) * stride[d];
        }
        if (w != 0.0)
            acc += w * values[idx];
    }
    return acc;
}

StateGrid StateGrid::refined() const
{
    auto axes = axes_;
    for (auto& a : axes)
    {
        std::vector<double> r;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (i > 0)
                r.push_back(0.5 * (a[i - 1] + a[i]));
            r.push_back(a[i]);
        }
        a = std::move(r);
    }
    return StateGrid(std::move(axes));
}

//---------------------------------------------------------------------------//

Profile profile_transition(RelayFamily const& family, Profile const& profile,
                           Vec const& c1)
{
    if (profile.size() != family.size())
        throw DimensionMismatch("profile_transition: profile length");
    if (c1.size() != family.dim())
        throw DimensionMismatch("profile_transition: control dimension");
    Profile out = profile;
    for (std::size_t i = 0; i < family.size(); ++i)
    {
        auto const& spec = family.member(i).spec;
        std::size_t const a = profile[i];
        std::size_t hits = 0;
        for (std::size_t b = 0; b < spec.state_count(); ++b)
        {
            auto const* f = b == a ? nullptr : spec.facet(a, b);
            if (f && geometry::facet_contains(*f, c1))
            {
                out[i] = b;
                ++hits;
            }
        }
        if (hits > 1)
            throw ExitPointUnclassified("profile_transition: member '"
                                        + family.member(i).label
                                        + "': control lies on several facets");
    }
    return out;
}

namespace {

struct Prepared
{
    ProfileSpace space;
    std::vector<std::vector<std::size_t>> next;  // [profile][c1] -> profile
};

Prepared prepare(GameSpec const& spec)
{
    Prepared p{ProfileSpace(spec.family), {}};
    p.next.resize(p.space.size());
    for (std::size_t q = 0; q < p.space.size(); ++q)
    {
        Profile const prof = p.space.profile(q);
        for (auto const& c1 : spec.c1_grid)
            p.next[q].push_back(
                p.space.index(profile_transition(spec.family, prof, c1)));
    }
    return p;
}

Vec concat(Vec a, Vec const& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Inner min over c2 for fixed c1; returns the value and the argmin.
std::pair<double, std::size_t>
inner_min(GameSpec const& spec, StateGrid const& grid, double t, Vec const& x,
          Vec const& c1, Vec const& g, std::vector<double> const& next_values,
          std::size_t& clamped, std::size_t& lookups)
{
    double const dt = spec.dt();
    double worst = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < spec.c2_grid.size(); ++j)
    {
        Vec const c2 = concat(g, spec.c2_grid[j]);
        Vec const f = spec.dynamics(t, x, c1, c2);
        if (f.size() != x.size())
            throw DimensionMismatch("game dynamics: wrong output size");
        Vec y = x;
        for (std::size_t d = 0; d < y.size(); ++d)
            y[d] += f[d] * dt;
        bool cl = false;
        double const v = spec.running_cost(t, x, c1, c2) * dt
                         + grid.interpolate(next_values, y, cl);
        ++lookups;
        if (cl)
            ++clamped;
        if (v < worst)
        {
            worst = v;
            arg = j;
        }
    }
    return {worst, arg};
}

}  // namespace

std::vector<std::vector<double>>
backup(GameSpec const& spec, StateGrid const& grid, std::size_t k,
       std::vector<std::vector<double>> const& next, std::size_t& clamped,
       std::size_t& lookups)
{
    spec.check();
    auto const prep = prepare(spec);
    double const t = static_cast<double>(k) * spec.dt();
    std::vector<std::vector<double>> out(prep.space.size(),
                                         std::vector<double>(grid.size()));
    for (std::size_t q = 0; q < prep.space.size(); ++q)
    {
        std::vector<Vec> gs;
        for (std::size_t i = 0; i < spec.c1_grid.size(); ++i)
            gs.push_back(spec.g_map(t, prep.space.profile(prep.next[q][i])));
        for (std::size_t node = 0; node < grid.size(); ++node)
        {
            Vec const x = grid.node(node);
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < spec.c1_grid.size(); ++i)
            {
                auto const [v, arg] = inner_min(spec, grid, t, x, spec.c1_grid[i],
                                                gs[i], next[prep.next[q][i]],
                                                clamped, lookups);
                best = std::max(best, v);
            }
            out[q][node] = best;
        }
    }
    return out;
}

ValueTable solve(GameSpec const& spec, StateGrid const& grid)
{
    spec.check();
    ProfileSpace const space(spec.family);
    ValueTable table;
    table.values.resize(spec.time_steps + 1);
    std::vector<double> terminal(grid.size());
    for (std::size_t node = 0; node < grid.size(); ++node)
        terminal[node] = spec.terminal_cost(grid.node(node));
    table.values[spec.time_steps].assign(space.size(), terminal);
    for (std::size_t k = spec.time_steps; k-- > 0;)
        table.values[k] = backup(spec, grid, k, table.values[k + 1],
                                 table.clamped, table.lookups);
    if (static_cast<double>(table.clamped)
        > kMaxClampFraction * static_cast<double>(table.lookups))
    {
        std::ostringstream os;
        os << "game solve: " << table.clamped << " of " << table.lookups
           << " lookups left the grid";
        throw NumericalInvariantError(os.str());
    }
    return table;
}

Policy extract_policy(ValueTable const& table, GameSpec const& spec,
                      StateGrid const& grid)
{
    spec.check();
    if (table.values.size() != spec.time_steps + 1)
        throw PreconditionViolation("extract_policy: table does not match spec");
    auto const prep = prepare(spec);
    Policy pol(spec.time_steps);
    std::size_t clamped = 0, lookups = 0;
    for (std::size_t k = 0; k < spec.time_steps; ++k)
    {
        double const t = static_cast<double>(k) * spec.dt();
        pol[k].assign(prep.space.size(), std::vector<PolicyEntry>(grid.size()));
        for (std::size_t q = 0; q < prep.space.size(); ++q)
            for (std::size_t node = 0; node < grid.size(); ++node)
            {
                Vec const x = grid.node(node);
                double best = -std::numeric_limits<double>::infinity();
                PolicyEntry e{0, 0};
                for (std::size_t i = 0; i < spec.c1_grid.size(); ++i)
                {
                    std::size_t const nq = prep.next[q][i];
                    Vec const g = spec.g_map(t, prep.space.profile(nq));
                    auto const [v, arg] = inner_min(spec, grid, t, x,
                                                    spec.c1_grid[i], g,
                                                    table.values[k + 1][nq],
                                                    clamped, lookups);
                    if (v > best)
                    {
                        best = v;
                        e = {i, arg};
                    }
                }
                pol[k][q][node] = e;
            }
    }
    return pol;
}

}  // namespace hystk::game
