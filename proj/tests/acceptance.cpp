// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <fmt/core.h>

#include "hystk/errors.hpp"
#include "hystk/fixtures.hpp"
#include "hystk/fundamental.hpp"
#include "hystk/game.hpp"
#include "hystk/hysteresis.hpp"
#include "hystk/markov.hpp"
#include "hystk/relay.hpp"
#include "oracles.hpp"

using namespace hystk;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes, fixed here.
constexpr double kEventTimeTol = 1e-4;       // criterion 1
constexpr double kOracleStep = 1e-5;         // criterion 1
constexpr double kRelayBudgetSeconds = 30;   // criterion 1
constexpr double kRelativeTimeTol = 1e-9;    // criterion 2
constexpr double kRowSumTol = 1e-8;          // criterion 5
constexpr double kMinEntry = -1e-10;         // criterion 5
constexpr std::size_t kMinChecks = 1000;     // criterion 5
constexpr double kClosedFormTol = 1e-6;      // criterion 6
constexpr double kCrossTol = 1e-6;           // criterion 7
constexpr double kSeriesBudgetSeconds = 60;  // criterion 7
constexpr double kSemigroupTol = 1e-7;       // criterion 8
constexpr double kEnumerationTol = 1e-12;    // criterion 9b
constexpr double kPlainDpTol = 1e-10;        // criterion 9c
constexpr double kXcheckTol = 1e-6;          // criterion 10

constexpr double inf = std::numeric_limits<double>::infinity();

struct Outcome
{
    bool pass;
    std::string detail;
};

using geometry::Region;
using geometry::Signal;
using hysteresis::RelayFamily;

Signal to_signal(oracle::Path const& p)
{
    return Signal(p.t, p.x);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Random classic relay thresholds and a compatible initial state.
struct ClassicCase
{
    double rho1, rho2;
    std::size_t initial;
    oracle::Path path;
};

ClassicCase random_classic(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> lo(-1.0, 0.8), gap(0.1, 1.0), coin(0, 1);
    ClassicCase c;
    c.rho2 = lo(rng);
    c.rho1 = c.rho2 + gap(rng);
    c.path = oracle::random_path_1d(rng, 10, 5.0, -1.5, 1.5);
    double const u0 = c.path.x[0][0];
    if (u0 >= c.rho1)
        c.initial = 1;
    else if (u0 <= c.rho2)
        c.initial = 0;
    else
        c.initial = coin(rng) < 0.5 ? 0 : 1;
    return c;
}

struct TriangleCase
{
    std::size_t initial;
    oracle::Path path;
};

TriangleCase random_triangle(std::mt19937_64& rng)
{
    TriangleCase c;
    for (std::size_t k = 0; k < 7; ++k)
    {
        c.path.t.push_back(static_cast<double>(k));
        c.path.x.push_back(oracle::random_triangle_point(rng, 0.02));
    }
    c.initial = 0;
    while (!oracle::TriangleOracle::inside(c.initial, c.path.x[0]))
        ++c.initial;
    return c;
}

bool same_events(std::vector<relay::SwitchEvent> const& got,
                 std::vector<oracle::Event> const& want, double& worst)
{
    if (got.size() != want.size())
        return false;
    for (std::size_t k = 0; k < got.size(); ++k)
    {
        if (got[k].from != want[k].from || got[k].to != want[k].to)
            return false;
        worst = std::max(worst, std::abs(got[k].time - want[k].time));
    }
    return true;
}

//---------------------------------------------------------------------------//
// 1. Relay evolution against dense sampling
//---------------------------------------------------------------------------//

Outcome criterion1()
{
    auto const t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    std::size_t mismatched = 0, events = 0;
    for (int i = 0; i < 50; ++i)
    {
        auto const c = random_classic(rng);
        auto const tr = relay::evolve(relay::classic_relay(c.rho1, c.rho2), to_signal(c.path), c.initial);
        auto const ref = oracle::classic_dense(c.path, c.rho1, c.rho2, c.initial, kOracleStep);
        events += ref.size();
        if (!same_events(tr.events, ref, worst))
            ++mismatched;
    }
    auto const tri = relay::triangle_relay();
    oracle::TriangleOracle const o;
    for (int i = 0; i < 10; ++i)
    {
        auto const c = random_triangle(rng);
        auto const tr = relay::evolve(tri, to_signal(c.path), c.initial);
        auto const ref = o.dense(c.path, c.initial, kOracleStep);
        events += ref.size();
        if (!same_events(tr.events, ref, worst))
            ++mismatched;
    }
    double const secs = seconds_since(t0);
    return {mismatched == 0 && worst <= kEventTimeTol && secs < kRelayBudgetSeconds,
            fmt::format("60 scenarios, {} events, {} mismatched, max time error {:.2e}, {:.1f} s",
                        events, mismatched, worst, secs)};
}

//---------------------------------------------------------------------------//
// 2. Causality and rate independence
//---------------------------------------------------------------------------//

Outcome criterion2()
{
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t causal_bad = 0, rate_bad = 0;
    double worst_rel = 0.0;
    auto const tri = relay::triangle_relay();

    for (int i = 0; i < 100; ++i)
    {
        relay::RelaySpec spec = tri;
        oracle::Path path;
        std::size_t init = 0;
        if (i % 10 < 7)
        {
            auto const c = random_classic(rng);
            spec = relay::classic_relay(c.rho1, c.rho2);
            path = c.path;
            init = c.initial;
        }
        else
        {
            auto const c = random_triangle(rng);
            path = c.path;
            init = c.initial;
        }
        Signal const u = to_signal(path);
        auto const full = relay::evolve(spec, u, init);

        // Causality
        double const tc = u.start_time() + (u.end_time() - u.start_time()) * (0.05 + 0.9 * unit(rng));
        auto const part = relay::evolve(spec, u.truncated(tc), init);
        std::vector<relay::SwitchEvent> want;
        for (auto const& e : full.events)
            if (e.time <= tc)
                want.push_back(e);
        bool ok = part.events.size() == want.size();
        for (std::size_t k = 0; ok && k < want.size(); ++k)
        {
            ok = part.events[k].from == want[k].from && part.events[k].to == want[k].to;
            double const rel = std::abs(part.events[k].time - want[k].time)
                               / std::max(1.0, std::abs(want[k].time));
            worst_rel = std::max(worst_rel, rel);
            ok = ok && rel <= kRelativeTimeTol;
        }
        causal_bad += ok ? 0 : 1;

        // Rate independence under a random increasing piecewise-linear phi
        std::vector<double> tk{u.start_time()}, sk{0.0};
        std::vector<double> inner;
        for (int k = 0; k < 4; ++k)
            inner.push_back(u.start_time() + (u.end_time() - u.start_time()) * unit(rng));
        std::sort(inner.begin(), inner.end());
        for (double v : inner)
            if (v > tk.back() + 1e-3 && v < u.end_time() - 1e-3)
                tk.push_back(v);
        tk.push_back(u.end_time());
        for (std::size_t k = 1; k < tk.size(); ++k)
            sk.push_back(sk.back() + (tk[k] - tk[k - 1]) * (0.2 + 4.0 * unit(rng)));
        Signal const v = u.reparameterized(sk, tk);
        auto const rep = relay::evolve(spec, v, init);
        oracle::Path phi{sk, {}};
        for (double t : tk)
            phi.x.push_back({t});
        ok = rep.events.size() == full.events.size();
        for (std::size_t k = 0; ok && k < rep.events.size(); ++k)
        {
            ok = rep.events[k].from == full.events[k].from && rep.events[k].to == full.events[k].to;
            double const mapped = phi.at(rep.events[k].time)[0];
            double const rel = std::abs(mapped - full.events[k].time)
                               / std::max(1.0, std::abs(full.events[k].time));
            worst_rel = std::max(worst_rel, rel);
            ok = ok && rel <= kRelativeTimeTol;
        }
        rate_bad += ok ? 0 : 1;
    }
    return {causal_bad == 0 && rate_bad == 0,
            fmt::format("100 triples, causality failures {}, rate-independence failures {}, "
                        "max relative time error {:.2e}",
                        causal_bad, rate_bad, worst_rel)};
}

//---------------------------------------------------------------------------//
// 3. Positive monotropy distance implies an interval of monotropy
//---------------------------------------------------------------------------//

Outcome criterion3()
{
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t tested = 0, violations = 0;
    while (tested < 100)
    {
        std::vector<hysteresis::PreisachThreshold> th;
        for (int k = 0; k < 5; ++k)
        {
            auto const c = random_classic(rng);
            th.push_back({c.rho1, c.rho2, 0.2, -1});
        }
        auto const fam = hysteresis::preisach_family(th);
        auto path = oracle::random_path_1d(rng, 8, 4.0, -1.5, 1.5);
        path.x[0] = {-2.0};
        Signal const u = to_signal(path);
        auto const rep = hysteresis::analyze_monotropy(fam, u);
        for (int k = 0; k < 10; ++k)
        {
            double const t = u.start_time() + (u.end_time() - u.start_time()) * unit(rng);
            if (hysteresis::monotropy_distance(fam, u.at(t)) > 0.0)
            {
                ++tested;
                violations += rep.in_interval(t) ? 0 : 1;
            }
        }
    }
    return {violations == 0, fmt::format("{} times tested, {} violations", tested, violations)};
}

//---------------------------------------------------------------------------//
// 4. Local wiping-out
//---------------------------------------------------------------------------//

Outcome criterion4()
{
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t eligible = 0, failures = 0, ineligible_differ = 0, without_eligible = 0;
    for (int sc = 0; sc < 20; ++sc)
    {
        // Thresholds with sorted, well separated up-switching values.
        std::vector<hysteresis::PreisachThreshold> th;
        std::vector<double> up;
        for (int k = 0; k < 6; ++k)
            up.push_back(-0.9 + 0.3 * k + 0.1 * unit(rng));
        for (double r1 : up)
            th.push_back({r1, r1 - 0.2 - 0.8 * unit(rng), 1.0 / 6.0, -1});
        auto const fam = hysteresis::preisach_family(th);

        // -2, M1, m1, M2 > M1, m2, M3 < M2, end
        std::size_t const k = 1 + static_cast<std::size_t>(unit(rng) * 2.99);
        double const m_1 = 0.5 * (up[k] + up[k + 1]);
        double const m_2 = 0.5 * (up[k + 2] + up[k + 3]);
        double max_down = -inf;
        for (auto const& t : th)
            if (t.rho1 < m_1)
                max_down = std::max(max_down, t.rho2);
        double const low1 = max_down - 0.05;
        double const low2 = low1 - 0.1 - 0.3 * unit(rng);
        double const m_3 = 0.5 * (up[k] + up[k + 1]) + 0.05;
        Signal const u({0, 1, 2, 3, 4, 5, 6},
                       {{-2.0}, {m_1}, {low1}, {m_2}, {low2}, {m_3}, {-2.0}});

        auto const rep = hysteresis::check_local_wipeout(fam, u, Region::interval(-3, 3), 0, 1);
        eligible += rep.eligible_count();
        failures += rep.failures();
        if (rep.eligible_count() == 0)
            ++without_eligible;
        for (auto const& p : rep.pairs)
            if (!p.eligible && p.comparable && !p.states_equal)
                ++ineligible_differ;
    }
    return {failures == 0 && without_eligible == 0 && ineligible_differ >= 1,
            fmt::format("20 scenarios, {} eligible pairs, {} failures, {} scenarios without an "
                        "eligible pair, {} ineligible pairs that differ",
                        eligible, failures, without_eligible, ineligible_differ)};
}

//---------------------------------------------------------------------------//
// Markov helpers
//---------------------------------------------------------------------------//

markov::MatrixFn constant(Matrix m)
{
    return [m](double, Vec const&) { return m; };
}

markov::SemiFlow still()
{
    return markov::SemiFlow::closed_form(1, [](double, double, Vec const& xi) { return xi; });
}

markov::SemiFlow rotation()
{
    return markov::SemiFlow::closed_form(2, [](double s, double t, Vec const& xi) {
        double const c = std::cos(t - s), sn = std::sin(t - s);
        return Vec{c * xi[0] - sn * xi[1], sn * xi[0] + c * xi[1]};
    });
}

markov::MarkovField three_state(std::vector<markov::ImpulseSurface> imps)
{
    return markov::MarkovField(
        3,
        [](double t, Vec const& x) {
            return Vec{1.0 + 0.5 * std::sin(t), 0.8 + 0.6 * x[0] * x[0], 0.5 + 0.4 * x[1] * x[1]};
        },
        [](double t, Vec const&) {
            double const a = 0.5 + 0.3 * std::sin(t);
            return Matrix{{0, a, 1 - a}, {0.2, 0, 0.8}, {0.6, 0.4, 0}};
        },
        std::move(imps));
}

//---------------------------------------------------------------------------//
// 6. Closed-form two-state chain
//---------------------------------------------------------------------------//

Outcome criterion6()
{
    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 2.0})
    {
        markov::MarkovField const f(
            2, [lambda](double, Vec const&) { return Vec{lambda, lambda}; },
            constant(Matrix{{0, 1}, {1, 0}}));
        for (int k = 1; k <= 30; ++k)
        {
            double const t = 0.1 * k;
            auto const pi = markov::propagate(f, still(), 0.0, t, {0.0});
            worst = std::max(worst, std::abs(pi.entries(0, 0) - 0.5 * (1 + std::exp(-2 * lambda * t))));
        }
    }
    return {worst < kClosedFormTol,
            fmt::format("lambda in {{0.5, 1, 2}}, 30 times each, max error {:.2e}", worst)};
}

//---------------------------------------------------------------------------//
// 7. Product formula against the series method
//---------------------------------------------------------------------------//

Outcome criterion7()
{
    auto const t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-1.0, 1.0), unit(0.0, 1.0);
    double worst = 0.0;
    std::size_t max_terms = 0;
    for (int i = 0; i < 10; ++i)
    {
        std::size_t const n = 2 + static_cast<std::size_t>(i % 3);
        std::size_t const nimp = static_cast<std::size_t>(i % 4);
        double const horizon = 1.0 + unit(rng);
        Matrix a0(n, n), a1(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
            {
                a0(r, c) = u(rng);
                a1(r, c) = u(rng);
            }
        auto inf_norm = [](Matrix const& m) {
            double best = 0;
            for (std::size_t r = 0; r < m.rows(); ++r)
            {
                double s = 0;
                for (std::size_t c = 0; c < m.cols(); ++c)
                    s += std::abs(m(r, c));
                best = std::max(best, s);
            }
            return best;
        };
        double const scale = 1.0 / (inf_norm(a0) + inf_norm(a1));
        a0 *= scale;
        a1 *= scale;
        double const omega = 1.0 + 4.0 * unit(rng);
        std::vector<double> times;
        while (times.size() < nimp)
        {
            double const t = 0.1 + (horizon - 0.2) * unit(rng);
            if (std::all_of(times.begin(), times.end(), [&](double s) { return std::abs(s - t) > 0.05; }))
                times.push_back(t);
        }
        std::sort(times.begin(), times.end());
        std::vector<markov::Impulse> imps;
        for (double t : times)
        {
            Matrix b = Matrix::identity(n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    b(r, c) += 0.3 * u(rng);
            imps.push_back({t, b});
        }
        markov::ImpulsiveSystem const sys(
            n, [a0, a1, omega](double t) { return a0 + std::cos(omega * t) * a1; }, imps, 0.0, horizon);
        auto const prod = markov::fundamental_matrix_product(sys, 0.0, horizon);
        auto const ser = markov::fundamental_matrix_series(sys, 0.0, horizon);
        worst = std::max(worst, max_abs_diff(prod, ser.phi));
        max_terms = std::max(max_terms, ser.terms);
    }
    double const secs = seconds_since(t0);
    return {worst < kCrossTol && max_terms < markov::kMaxSeriesTerms && secs < kSeriesBudgetSeconds,
            fmt::format("10 instances, max residual {:.2e}, most series terms {}, {:.1f} s", worst,
                        max_terms, secs)};
}

//---------------------------------------------------------------------------//
// 8. Semigroup property
//---------------------------------------------------------------------------//

Outcome criterion8()
{
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(0.0, 1.0), u(-1.0, 1.0);
    auto const f = three_state({});
    auto const flow = rotation();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        double a = 3 * unit(rng), b = 3 * unit(rng), c = 3 * unit(rng);
        double tri[3] = {a, b, c};
        std::sort(tri, tri + 3);
        double const s = tri[0], t = tri[1], r = tri[2];
        Vec const xi{u(rng), u(rng)};
        auto const direct = markov::propagate(f, flow, s, r, xi).entries;
        auto const split = markov::propagate(f, flow, s, t, xi).entries
                           * markov::propagate(f, flow, t, r, flow(s, t, xi)).entries;
        worst = std::max(worst, max_abs_diff(direct, split));
    }
    return {worst < kSemigroupTol, fmt::format("100 triples, max residual {:.2e}", worst)};
}

//---------------------------------------------------------------------------//
// 5. Stochasticity across every propagate call (runs after 6 and 8)
//---------------------------------------------------------------------------//

Outcome criterion5()
{
    // Add impulsive runs: a time impulse and a facet crossed by the rotation.
    auto const f = three_state(
        {markov::ImpulseSurface::at_time(0.7, constant(Matrix{{0.8, 0.2, 0}, {0, 0.9, 0.1}, {0.3, 0, 0.7}})),
         markov::ImpulseSurface::on_facet(
             geometry::BoundaryFacet(Region(2, {geometry::HalfSpace({-1, 0}, 0)}), 0),
             constant(Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}))});
    auto const flow = rotation();
    std::size_t impulsive_runs = 0;
    for (int k = 1; k <= 200; ++k)
    {
        double const t = 0.02 * k;
        markov::propagate(f, flow, 0.0, t, {0.6, 0.3});
        ++impulsive_runs;
    }
    auto const st = markov::stochasticity_stats();
    return {st.checks >= kMinChecks && st.max_row_residual < kRowSumTol && st.min_entry >= kMinEntry,
            fmt::format("{} checks ({} impulsive runs), max row residual {:.2e}, min entry {:.2e}",
                        st.checks, impulsive_runs, st.max_row_residual, st.min_entry)};
}

//---------------------------------------------------------------------------//
// 9. Game reductions
//---------------------------------------------------------------------------//

game::StateGrid box_grid(std::size_t n, double half)
{
    std::vector<double> a;
    for (std::size_t i = 0; i < n; ++i)
        a.push_back(-half + 2 * half * static_cast<double>(i) / static_cast<double>(n - 1));
    return game::StateGrid({a, a});
}

Outcome criterion9()
{
    std::ostringstream detail;
    bool pass = true;

    // (a) f = 0, F = 0
    {
        auto const fam = hysteresis::preisach_family({{0.5, -0.5}, {1.0, 0.0}});
        game::GameSpec spec{
            [](double, Vec const&, Vec const&, Vec const&) { return Vec{0.0, 0.0}; },
            [](double, Vec const&, Vec const&, Vec const&) { return 0.0; },
            [](Vec const& y) { return std::sin(y[0]) + y[1] * y[1]; },
            {{-0.5}, {0.0}, {0.5}, {1.0}},
            {{-1.0}, {1.0}},
            fam,
            [fam](double, game::Profile const& p) { return hysteresis::aggregate(fam, p); },
            1.0,
            6};
        auto const grid = box_grid(7, 1.0);
        auto const t = game::solve(spec, grid);
        std::size_t bad = 0;
        for (auto const& layer : t.values)
            for (auto const& prof : layer)
                for (std::size_t i = 0; i < grid.size(); ++i)
                    bad += prof[i] == spec.terminal_cost(grid.node(i)) ? 0 : 1;
        pass = pass && bad == 0;
        detail << "(a) " << bad << " entries differ from F0";
    }

    // (b) one step against enumeration
    {
        double const r1 = 0.5, r2 = -0.5;
        auto const fam = hysteresis::preisach_family({{r1, r2}, {1.0, 0.0}});
        auto gfun = [](std::vector<std::size_t> const& p) {
            return 0.5 * ((p[0] ? 1.0 : -1.0) + (p[1] ? 1.0 : -1.0));
        };
        auto dyn = [](double, Vec const& y, Vec const& c1, Vec const& c2) {
            // Vanishes on the edges of [-1, 1]^2, so every step stays on the grid.
            return Vec{(1 - y[0] * y[0]) * (c1[0] - c2[1] + 0.3 * c2[0]),
                       (1 - y[1] * y[1]) * (0.5 * c2[0] - 0.2 * y[0] + c2[1] * c1[0])};
        };
        auto run = [](double, Vec const& y, Vec const& c1, Vec const& c2) {
            return y[0] * c1[0] - 0.5 * c2[1] * c2[1] + 0.2 * c2[0] * y[1];
        };
        Vec const w{0.7, -1.3};
        game::GameSpec spec{dyn,
                            run,
                            [w](Vec const& y) { return w[0] * y[0] + w[1] * y[1]; },
                            {{-0.5}, {0.0}, {0.5}, {1.0}},
                            {{-1.0}, {0.0}, {1.0}},
                            fam,
                            [gfun](double, game::Profile const& p) { return Vec{gfun(p)}; },
                            0.2,
                            1};
        auto const grid = box_grid(5, 1.0);
        auto const t = game::solve(spec, grid);
        game::ProfileSpace const space(fam);
        double const dt = 0.2;
        double worst = 0.0;
        for (std::size_t q = 0; q < space.size(); ++q)
        {
            auto const prof = space.profile(q);
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                Vec const x = grid.node(i);
                double best = -inf;
                for (auto const& c1 : spec.c1_grid)
                {
                    // Independent transition rule: switch only on the threshold itself.
                    std::vector<std::size_t> next = prof;
                    double const th1[2] = {r1, 1.0}, th2[2] = {r2, 0.0};
                    for (std::size_t m = 0; m < 2; ++m)
                    {
                        if (prof[m] == 0 && c1[0] == th1[m])
                            next[m] = 1;
                        if (prof[m] == 1 && c1[0] == th2[m])
                            next[m] = 0;
                    }
                    double worst_c2 = inf;
                    for (auto const& c2 : spec.c2_grid)
                    {
                        Vec const full{gfun(next), c2[0]};
                        Vec const d = dyn(0, x, c1, full);
                        Vec const y{std::clamp(x[0] + d[0] * dt, -1.0, 1.0),
                                    std::clamp(x[1] + d[1] * dt, -1.0, 1.0)};
                        worst_c2 = std::min(worst_c2, run(0, x, c1, full) * dt + w[0] * y[0] + w[1] * y[1]);
                    }
                    best = std::max(best, worst_c2);
                }
                worst = std::max(worst, std::abs(best - t.values[0][q][i]));
            }
        }
        pass = pass && worst <= kEnumerationTol;
        detail << "; (b) max deviation " << fmt::format("{:.2e}", worst);
    }

    // (c) relay never switches: plain minimax DP
    {
        auto const fam = hysteresis::preisach_family({{5.0, -5.0}});
        auto dyn = [](double t, Vec const& y, Vec const& c1, Vec const& c2) {
            // Vanishes on the edges of [-2, 2]^2.
            return Vec{(4 - y[0] * y[0]) * (c1[0] - 0.5 * c2[1] + 0.1 * std::sin(y[1])),
                       (4 - y[1] * y[1]) * (0.3 * c2[0] * c1[0] - 0.2 * y[0] + 0.1 * t)};
        };
        auto run = [](double, Vec const& y, Vec const& c1, Vec const& c2) {
            return y[0] * y[0] - y[1] * c1[0] + 0.3 * c2[1] * c2[1] - 0.1 * c1[0] * c1[0];
        };
        auto term = [](Vec const& y) { return std::cos(y[0]) - 0.5 * y[1] * y[1]; };
        std::vector<Vec> c1{{-1.0}, {-0.5}, {0.0}, {0.5}, {1.0}};
        std::vector<Vec> c2{{-1.0}, {0.0}, {1.0}};
        game::GameSpec spec{dyn, run, term, c1, c2, fam,
                            [](double, game::Profile const&) { return Vec{-1.0}; }, 1.0, 10};
        auto const grid = box_grid(9, 2.0);
        auto const t = game::solve(spec, grid);

        oracle::PlainGame pg;
        pg.f = dyn;
        pg.F = run;
        pg.F0 = term;
        pg.c1 = c1;
        for (auto const& c : c2)
            pg.c2.push_back({-1.0, c[0]});
        pg.ax = grid.axes()[0];
        pg.ay = grid.axes()[1];
        pg.horizon = 1.0;
        pg.steps = 10;
        auto const v = oracle::plain_minimax(pg);
        double worst = 0.0;
        for (std::size_t i = 0; i < pg.ax.size(); ++i)
            for (std::size_t j = 0; j < pg.ay.size(); ++j)
                worst = std::max(worst, std::abs(v[i][j] - t.values[0][0][i * pg.ay.size() + j]));
        pass = pass && worst <= kPlainDpTol;
        detail << "; (c) max deviation " << fmt::format("{:.2e}", worst);
    }
    return {pass, detail.str()};
}

//---------------------------------------------------------------------------//
// 10. CLI determinism and cross-check
//---------------------------------------------------------------------------//

std::string slurp(fs::path const& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

int run_command(std::string const& cmd, std::string* output = nullptr)
{
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return -1;
    char buf[4096];
    std::string out;
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
        out.append(buf, n);
    int const status = pclose(pipe);
    if (output)
        *output = out;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion10(std::string const& tool, std::string const& scenarios)
{
    fs::path const base = fs::temp_directory_path() / "hystk_acceptance";
    fs::remove_all(base);
    std::size_t runs = 0, csvs = 0, differing = 0;
    std::vector<fs::path> files;
    for (auto const& e : fs::directory_iterator(scenarios))
        if (e.path().extension() == ".yaml")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (auto const& file : files)
    {
        std::string const stem = file.stem().string();
        int codes[2];
        for (int k = 0; k < 2; ++k)
        {
            fs::path const out = base / (k == 0 ? "a" : "b");
            codes[k] = run_command(fmt::format("'{}' run '{}' --out '{}' 2>/dev/null", tool,
                                               file.string(), out.string()));
            ++runs;
        }
        fs::path const a = base / "a" / (stem + ".csv"), b = base / "b" / (stem + ".csv");
        bool same = codes[0] == codes[1] && fs::exists(a) == fs::exists(b);
        if (fs::exists(a))
        {
            ++csvs;
            same = same && slurp(a) == slurp(b);
        }
        same = same && slurp(base / "a" / (stem + ".report.txt")) == slurp(base / "b" / (stem + ".report.txt"));
        differing += same ? 0 : 1;
    }

    std::string out;
    int const code = run_command(fmt::format("'{}' xcheck '{}/impulsive.yaml'", tool, scenarios), &out);
    double residual = inf;
    if (auto pos = out.find("max_residual "); pos != std::string::npos)
        residual = std::stod(out.substr(pos + 13));
    return {!files.empty() && differing == 0 && csvs + 1 >= files.size() && code == 0
                && residual < kXcheckTol,
            fmt::format("{} scenarios run twice, {} CSV files, {} differ; xcheck exit {} residual {:.2e}",
                        files.size(), csvs, differing, code, residual)};
}

}  // namespace

int main(int argc, char** argv)
{
    std::string const tool = argc > 1 ? argv[1] : HYSTK_TOOL_PATH;
    std::string const scenarios = argc > 2 ? argv[2] : HYSTK_SCENARIO_DIR;

    std::map<int, Outcome> results;
    auto attempt = [&](int id, std::function<Outcome()> const& fn) {
        try
        {
            results[id] = fn();
        }
        catch (std::exception const& e)
        {
            results[id] = {false, std::string("exception: ") + e.what()};
        }
    };

    attempt(1, criterion1);
    attempt(2, criterion2);
    attempt(3, criterion3);
    attempt(4, criterion4);
    markov::reset_stochasticity_stats();
    attempt(6, criterion6);
    attempt(7, criterion7);
    attempt(8, criterion8);
    attempt(5, criterion5);
    attempt(9, criterion9);
    attempt(10, [&] { return criterion10(tool, scenarios); });

    static char const* const names[] = {"",
                                        "relay events vs dense sampling",
                                        "causality and rate independence",
                                        "monotropy intervals",
                                        "local wiping-out",
                                        "stochasticity conservation",
                                        "closed-form two-state chain",
                                        "product vs series fundamental matrix",
                                        "semigroup property",
                                        "game reductions",
                                        "CLI determinism and cross-check"};
    bool all = true;
    for (auto const& [id, r] : results)
    {
        std::cout << fmt::format("criterion {:2d} {:<40} {}  {}\n", id, names[id],
                                 r.pass ? "PASS" : "FAIL", r.detail);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
