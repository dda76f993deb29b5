// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hystk/errors.hpp"
#include "hystk/hysteresis.hpp"

namespace hystk::hysteresis {

namespace {

struct MergedEvent
{
    double time;
    std::size_t member;
    StatePair pair;
};

std::vector<MergedEvent> merged_events(std::vector<RelayTrajectory> const& trs)
{
    std::vector<MergedEvent> ev;
    for (std::size_t i = 0; i < trs.size(); ++i)
        for (auto const& e : trs[i].events)
            ev.push_back({e.time, i, {e.from, e.to}});
    std::stable_sort(ev.begin(), ev.end(),
                     [](MergedEvent const& a, MergedEvent const& b) {
                         if (a.time != b.time)
                             return a.time < b.time;
                         return a.member < b.member;
                     });
    return ev;
}

MonotropyReport build_report(RelayFamily const& family,
                             std::vector<RelayTrajectory> const& trs,
                             double t0, double t_end)
{
    MonotropyReport rep;
    auto const ev = merged_events(trs);
    std::vector<StatePair> run_pairs;
    for (std::size_t k = 0; k < ev.size(); ++k)
    {
        bool const last_of_run
            = (k + 1 == ev.size()) || ev[k + 1].pair != ev[k].pair;
        if (!last_of_run)
            continue;
        auto const& e = ev[k];
        rep.transition_points.push_back(
            {e.time, e.pair, e.member, family.member(e.member).label});
        run_pairs.push_back(e.pair);
    }

    double start = t0;
    for (std::size_t k = 0; k < rep.transition_points.size(); ++k)
    {
        double const tp = rep.transition_points[k].time;
        if (tp > start)
            rep.intervals.push_back({start, tp, run_pairs[k]});
        start = tp;
    }
    if (t_end > start || rep.intervals.empty())
        rep.intervals.push_back({start, t_end, std::nullopt});
    return rep;
}

}  // namespace

bool MonotropyReport::in_interval(double t) const
{
    if (intervals.empty() || t < intervals.front().t1
        || t > intervals.back().t2)
        return false;
    return std::none_of(transition_points.begin(), transition_points.end(),
                        [t](TransitionPoint const& p) { return p.time == t; });
}

MonotropyReport analyze_monotropy(RelayFamily const& family,
                                  Signal const& signal)
{
    auto const out = apply(family, signal);
    return build_report(family, out.trajectories, signal.start_time(),
                        signal.end_time());
}

//---------------------------------------------------------------------------//

std::size_t WipeoutReport::eligible_count() const
{
    return static_cast<std::size_t>(std::count_if(
        pairs.begin(), pairs.end(),
        [](WipeoutPair const& p) { return p.eligible; }));
}

std::size_t WipeoutReport::failures() const
{
    return static_cast<std::size_t>(std::count_if(
        pairs.begin(), pairs.end(), [](WipeoutPair const& p) {
            return p.eligible && p.comparable && !p.states_equal;
        }));
}

WipeoutReport check_local_wipeout(RelayFamily const& family,
                                  Signal const& signal, Region const& window,
                                  std::size_t alpha0, std::size_t alpha1)
{
    if (window.dim() != family.dim() || signal.dim() != family.dim())
        throw DimensionMismatch("check_local_wipeout: dimensions differ");
    if (alpha0 == alpha1)
        throw PreconditionViolation("check_local_wipeout: need two distinct states");

    WipeoutReport rep;
    auto note = [&](std::string msg) {
        rep.precondition_violations.push_back(std::move(msg));
    };

    for (std::size_t k = 0; k < signal.size(); ++k)
        if (!window.contains(signal.points()[k]))
        {
            std::ostringstream os;
            os << "signal leaves the window at t = " << signal.times()[k];
            note(os.str());
            break;
        }

    auto const full = apply(family, signal);
    std::size_t const m = family.size();

    // (i) only the two given states occur
    for (std::size_t i = 0; i < m; ++i)
    {
        auto const& tr = full.trajectories[i];
        std::vector<std::size_t> visited{tr.initial_state};
        for (auto const& e : tr.events)
            visited.push_back(e.to);
        for (std::size_t s : visited)
            if (s != alpha0 && s != alpha1)
            {
                note("member '" + family.member(i).label
                     + "' visits a state outside the given pair");
                break;
            }
        if (tr.initial_state != alpha0)
            note("member '" + family.member(i).label
                 + "' does not start in the first state");
    }

    // Strict pre-order per source state.
    auto strict = [&](std::size_t alpha) {
        std::vector<char> less(m * m, 0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (a != b)
                    less[a * m + b] = preorder_less(family, a, b, alpha, window);
        return less;
    };
    std::map<std::size_t, std::vector<char>> less;
    less[alpha0] = strict(alpha0);
    less[alpha1] = strict(alpha1);

    // (iii) every switch i -> j drags along all strictly smaller members.
    bool iii_reported = false;
    for (std::size_t r = 0; r < m && !iii_reported; ++r)
        for (auto const& e : full.trajectories[r].events)
        {
            auto it = less.find(e.from);
            if (it == less.end())
                continue;
            for (std::size_t q = 0; q < m; ++q)
            {
                if (!it->second[q * m + r])
                    continue;
                if (relay::output_at(full.trajectories[q], e.time) != e.to)
                {
                    std::ostringstream os;
                    os << "switch of '" << family.member(r).label
                       << "' at t = " << e.time << " leaves smaller member '"
                       << family.member(q).label << "' behind";
                    note(os.str());
                    iii_reported = true;
                    break;
                }
            }
            if (iii_reported)
                break;
        }

    auto const mono = build_report(family, full.trajectories,
                                   signal.start_time(), signal.end_time());
    auto const ev = merged_events(full.trajectories);
    auto const& tps = mono.transition_points;

    std::map<std::size_t, std::optional<HysteresisOutput>> reduced;
    auto reduced_for = [&](std::size_t k) -> std::optional<HysteresisOutput> const& {
        auto it = reduced.find(k);
        if (it != reduced.end())
            return it->second;
        double const tp = tps[k].time;
        auto nx = std::find_if(ev.begin(), ev.end(),
                               [tp](MergedEvent const& e) { return e.time > tp; });
        std::optional<HysteresisOutput> res;
        if (nx != ev.end())
        {
            try
            {
                res = apply(family, signal.without_samples(tp, nx->time));
            }
            catch (Error const&)
            {
                res.reset();
            }
        }
        return reduced.emplace(k, std::move(res)).first->second;
    };

    for (std::size_t a = 0; a < tps.size(); ++a)
        for (std::size_t b = a + 1; b < tps.size(); ++b)
        {
            if (tps[a].pair != tps[b].pair)
                continue;
            WipeoutPair p;
            p.t_prime = tps[a].time;
            p.t_double_prime = tps[b].time;
            p.pair = tps[a].pair;
            p.rho_prime = tps[a].rho_label;
            p.rho_double_prime = tps[b].rho_label;
            auto lit = less.find(p.pair.first);
            p.eligible = lit != less.end()
                         && lit->second[tps[a].member * m + tps[b].member];

            double const tp = p.t_prime;
            auto nx = std::find_if(ev.begin(), ev.end(),
                                   [tp](MergedEvent const& e) { return e.time > tp; });
            if (nx != ev.end())
            {
                auto const& ts = signal.times();
                auto kept = std::lower_bound(ts.begin(), ts.end(), nx->time);
                auto const& red = reduced_for(a);
                if (kept != ts.end() && *kept <= p.t_double_prime && red)
                {
                    p.comparable = true;
                    p.states_equal = full.states_at(p.t_double_prime)
                                     == red->states_at(p.t_double_prime);
                    Vec const va = full.value_at(p.t_double_prime);
                    Vec const vb = red->value_at(p.t_double_prime);
                    for (std::size_t d = 0; d < va.size(); ++d)
                        p.aggregate_diff = std::max(p.aggregate_diff,
                                                    std::abs(va[d] - vb[d]));
                }
            }
            rep.pairs.push_back(std::move(p));
        }
    return rep;
}

}  // namespace hystk::hysteresis
