// SPDX-License-Identifier: Apache-2.0
#include "hystk/cli/builders.hpp"

#include <cmath>
#include <sstream>

#include "hystk/fixtures.hpp"

namespace hystk::cli {

using geometry::BoundaryFacet;
using geometry::ClipConstraint;
using geometry::HalfSpace;
using geometry::Region;

//---------------------------------------------------------------------------//
// Geometry
//---------------------------------------------------------------------------//

namespace {

HalfSpace parse_halfspace(YAML::Node const& n)
{
    try
    {
        return HalfSpace(as_vec(require(n, "normal")), get_double(n, "offset"));
    }
    catch (ScenarioError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

std::vector<ClipConstraint> parse_clip(YAML::Node const& n)
{
    std::vector<ClipConstraint> out;
    if (!n)
        return out;
    if (!n.IsSequence())
        fail(n, "clip must be a list");
    for (auto const& c : n)
    {
        bool const closed = c["closed"] ? c["closed"].as<bool>() : false;
        out.push_back({parse_halfspace(c), closed});
    }
    return out;
}

BoundaryFacet parse_facet(YAML::Node const& n, Region const& owner)
{
    std::size_t const support = get_size(n, "support");
    try
    {
        if (YAML::Node seg = n["segment"])
            return BoundaryFacet::segment(
                owner, support, as_vec(require(seg, "p")), as_vec(require(seg, "q")),
                seg["p_closed"] ? seg["p_closed"].as<bool>() : false,
                seg["q_closed"] ? seg["q_closed"].as<bool>() : false);
        return BoundaryFacet(owner, support, parse_clip(n["clip"]));
    }
    catch (ScenarioError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

}  // namespace

Region build_region(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "regions", ref);
    try
    {
        if (YAML::Node iv = n["interval"])
        {
            Vec const b = as_vec(iv);
            if (b.size() != 2)
                fail(iv, "interval needs [lo, hi]");
            return Region::interval(b[0], b[1]);
        }
        std::size_t const dim = get_size(n, "dim");
        std::vector<HalfSpace> hs;
        if (YAML::Node list = n["halfspaces"])
        {
            if (!list.IsSequence())
                fail(list, "halfspaces must be a list");
            for (auto const& h : list)
                hs.push_back(parse_halfspace(h));
        }
        return Region(dim, std::move(hs));
    }
    catch (ScenarioError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

//---------------------------------------------------------------------------//
// Relays and families
//---------------------------------------------------------------------------//

std::size_t state_index(relay::RelaySpec const& spec, YAML::Node const& node)
{
    if (!node.IsScalar())
        fail(node, "expected a state index or name");
    for (auto const& s : spec.states())
        if (s.name == node.Scalar())
            return s.index;
    double const v = as_double(node);
    if (v < 0 || v >= static_cast<double>(spec.state_count()) || v != std::floor(v))
        fail(node, "no state '" + node.Scalar() + "'");
    return static_cast<std::size_t>(v);
}

relay::RelaySpec build_relay(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "relays", ref);
    if (YAML::Node c = n["classic"])
        return relay::classic_relay(get_double(c, "rho1"), get_double(c, "rho2"));
    if (YAML::Node f = n["fixture"])
    {
        if (f.Scalar() != "triangle")
            fail(f, "unknown fixture '" + f.Scalar() + "'");
        return relay::triangle_relay();
    }

    Region const omega = build_region(sc, require(n, "omega"));
    YAML::Node states = require(n, "states");
    if (!states.IsSequence())
        fail(states, "states must be a list");
    std::vector<relay::StateId> ids;
    std::vector<Region> cont;
    for (auto const& s : states)
    {
        ids.push_back({ids.size(), as_vec(require(s, "payload")),
                       get_string(s, "name", std::to_string(ids.size()))});
        cont.push_back(build_region(sc, require(s, "region")));
    }
    auto resolve = [&](YAML::Node const& v) {
        if (!v.IsScalar())
            fail(v, "expected a state index or name");
        for (auto const& s : ids)
            if (s.name == v.Scalar())
                return s.index;
        double const x = as_double(v);
        if (x < 0 || x >= static_cast<double>(ids.size()) || x != std::floor(x))
            fail(v, "no state '" + v.Scalar() + "'");
        return static_cast<std::size_t>(x);
    };
    std::map<relay::RelaySpec::FacetKey, BoundaryFacet> facets;
    if (YAML::Node fl = n["facets"])
        for (auto const& f : fl)
        {
            std::size_t const a = resolve(require(f, "from"));
            std::size_t const b = resolve(require(f, "to"));
            if (!facets.emplace(relay::RelaySpec::FacetKey{a, b},
                                parse_facet(f, cont[a]))
                     .second)
                fail(f, "duplicate facet");
        }
    try
    {
        return relay::RelaySpec(omega, std::move(ids), std::move(cont),
                                std::move(facets));
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

hysteresis::RelayFamily build_family(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "families", ref);
    std::vector<hysteresis::Member> ms;
    auto add_classic = [&](double r1, double r2, double w, int initial,
                           YAML::Node const& at) {
        if (initial != -1 && initial != 1)
            fail(at, "initial must be -1 or +1");
        std::ostringstream label;
        label.precision(12);
        label << '(' << r1 << ',' << r2 << ')';
        ms.push_back({label.str(), relay::classic_relay(r1, r2), w,
                      initial < 0 ? 0u : 1u});
    };
    try
    {
        if (YAML::Node p = n["preisach"])
        {
            if (!p.IsSequence())
                fail(p, "preisach must be a list");
            for (auto const& e : p)
                add_classic(get_double(e, "rho1"), get_double(e, "rho2"),
                            get_double(e, "weight", 1.0),
                            static_cast<int>(get_double(e, "initial", -1.0)), e);
        }
        else if (YAML::Node g = n["preisach_grid"])
        {
            return hysteresis::preisach_grid(
                get_double(g, "lo"), get_double(g, "hi"), get_size(g, "n"),
                static_cast<int>(get_double(g, "initial", -1.0)));
        }
        else
        {
            YAML::Node list = require(n, "members");
            if (!list.IsSequence())
                fail(list, "members must be a list");
            for (auto const& e : list)
            {
                auto spec = build_relay(sc, require(e, "relay"));
                std::size_t const init = e["initial"] ? state_index(spec, e["initial"]) : 0;
                ms.push_back({get_string(e, "label", std::to_string(ms.size())),
                              std::move(spec), get_double(e, "weight", 1.0), init});
            }
        }
        return hysteresis::RelayFamily(std::move(ms));
    }
    catch (ScenarioError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

//---------------------------------------------------------------------------//
// Markov
//---------------------------------------------------------------------------//

markov::MarkovField build_field(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "fields", ref);
    std::size_t const ns = get_size(n, "states");

    YAML::Node in = require(n, "intensities");
    std::string const it = get_string(in, "type");
    markov::VectorFn phi;
    if (it == "constant")
    {
        Vec v = as_vec(require(in, "values"));
        if (v.size() != ns)
            fail(in, "one intensity per state required");
        phi = [v](double, Vec const&) { return v; };
    }
    else if (it == "periodic")
    {
        Vec mean = as_vec(require(in, "mean"));
        Vec amp = as_vec(require(in, "amplitude"));
        double const om = get_double(in, "omega");
        if (mean.size() != ns || amp.size() != ns)
            fail(in, "one mean and amplitude per state required");
        phi = [mean, amp, om](double t, Vec const&) {
            Vec r(mean.size());
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = mean[i] + amp[i] * std::sin(om * t);
            return r;
        };
    }
    else if (it == "affine")
    {
        Vec base = as_vec(require(in, "base"));
        Matrix grad = as_matrix(require(in, "gradient"));
        if (base.size() != ns || grad.rows() != ns)
            fail(in, "one base value and gradient row per state required");
        phi = [base, grad](double, Vec const& x) {
            Vec r = base + grad * x;
            for (double& v : r)
                v = std::max(0.0, v);
            return r;
        };
    }
    else
    {
        fail(in, "unknown intensity type '" + it + "'");
    }

    markov::MatrixFn g;
    YAML::Node jk = require(n, "jump_kernel");
    std::string const jt = get_string(jk, "type");
    if (jt == "uniform")
    {
        Matrix m(ns, ns);
        for (std::size_t a = 0; a < ns; ++a)
            for (std::size_t b = 0; b < ns; ++b)
                m(a, b) = (a == b || ns == 1) ? 0.0 : 1.0 / static_cast<double>(ns - 1);
        g = [m](double, Vec const&) { return m; };
    }
    else if (jt == "matrix")
    {
        Matrix m = as_matrix(require(jk, "values"));
        g = [m](double, Vec const&) { return m; };
    }
    else
    {
        fail(jk, "unknown jump kernel type '" + jt + "'");
    }

    std::vector<markov::ImpulseSurface> imps;
    if (YAML::Node list = n["impulses"])
        for (auto const& e : list)
        {
            Matrix p = as_matrix(require(e, "p"));
            markov::MatrixFn pf = [p](double, Vec const&) { return p; };
            if (e["time"])
            {
                imps.push_back(markov::ImpulseSurface::at_time(get_double(e, "time"), pf));
            }
            else
            {
                YAML::Node f = require(e, "facet");
                Region const owner = build_region(sc, require(f, "region"));
                imps.push_back(markov::ImpulseSurface::on_facet(parse_facet(f, owner), pf));
            }
        }
    try
    {
        return markov::MarkovField(ns, std::move(phi), std::move(g), std::move(imps));
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

markov::SemiFlow build_flow(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "flows", ref);
    std::string const type = get_string(n, "type");
    if (type == "translation")
        return markov::SemiFlow::translation(as_vec(require(n, "velocity")));
    if (type == "stationary")
    {
        std::size_t const dim = get_size(n, "dim");
        return markov::SemiFlow::closed_form(
            dim, [](double, double, Vec const& xi) { return xi; });
    }
    if (type == "rotation")
    {
        double const om = get_double(n, "omega");
        return markov::SemiFlow::closed_form(
            2, [om](double s, double t, Vec const& xi) {
                double const c = std::cos(om * (t - s)), sn = std::sin(om * (t - s));
                return Vec{c * xi[0] - sn * xi[1], sn * xi[0] + c * xi[1]};
            });
    }
    if (type == "linear")
    {
        Matrix m = as_matrix(require(n, "matrix"));
        if (!m.square())
            fail(n, "linear flow needs a square matrix");
        return markov::SemiFlow::from_velocity(
            m.rows(), [m](double, Vec const& x) { return m * x; },
            get_double(n, "max_step", 1e-3));
    }
    fail(n, "unknown flow type '" + type + "'");
}

markov::ImpulsiveSystem build_system(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "systems", ref);
    double const start = get_double(n, "start", 0.0);
    double const horizon = get_double(n, "horizon");
    try
    {
        if (n["field"])
        {
            auto field = build_field(sc, n["field"]);
            auto flow = build_flow(sc, require(n, "flow"));
            return markov::kolmogorov_system(field, flow, start, horizon,
                                             as_vec(require(n, "xi")));
        }
        std::size_t const size = get_size(n, "size");
        YAML::Node gen = require(n, "generator");
        std::string const gt = get_string(gen, "type");
        markov::ImpulsiveSystem::Generator a;
        if (gt == "constant")
        {
            Matrix m = as_matrix(require(gen, "matrix"));
            a = [m](double) { return m; };
        }
        else if (gt == "cosine")
        {
            Matrix base = as_matrix(require(gen, "base"));
            Matrix amp = as_matrix(require(gen, "amplitude"));
            double const om = get_double(gen, "omega");
            a = [base, amp, om](double t) { return base + std::cos(om * t) * amp; };
        }
        else
        {
            fail(gen, "unknown generator type '" + gt + "'");
        }
        std::vector<markov::Impulse> imps;
        if (YAML::Node list = n["impulses"])
            for (auto const& e : list)
                imps.push_back({get_double(e, "time"), as_matrix(require(e, "b"))});
        return markov::ImpulsiveSystem(size, std::move(a), std::move(imps), start,
                                       horizon);
    }
    catch (ScenarioError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

//---------------------------------------------------------------------------//
// Game
//---------------------------------------------------------------------------//

namespace {

std::vector<Vec> parse_grid_list(YAML::Node const& n)
{
    if (!n.IsSequence() || n.size() == 0)
        fail(n, "control grid must be a nonempty list");
    std::vector<Vec> out;
    for (auto const& e : n)
        out.push_back(as_vec(e));
    return out;
}

double sq(Vec const& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return s;
}

}  // namespace

GameSetup build_game(Scenario const& sc, YAML::Node const& ref)
{
    YAML::Node n = lookup(sc, "games", ref);
    auto family = build_family(sc, require(n, "family"));

    YAML::Node dy = require(n, "dynamics");
    std::string const dt = get_string(dy, "type");
    game::GameSpec::Dynamics f;
    if (dt == "zero")
        f = [](double, Vec const& y, Vec const&, Vec const&) { return Vec(y.size(), 0.0); };
    else if (dt == "linear")
    {
        Matrix a = as_matrix(require(dy, "a"));
        Matrix b1 = as_matrix(require(dy, "b1"));
        Matrix b2 = as_matrix(require(dy, "b2"));
        f = [a, b1, b2](double, Vec const& y, Vec const& c1, Vec const& c2) {
            return a * y + b1 * c1 + b2 * c2;
        };
    }
    else
        fail(dy, "unknown dynamics type '" + dt + "'");

    YAML::Node rc = require(n, "running_cost");
    std::string const rt = get_string(rc, "type");
    game::GameSpec::RunningCost F;
    if (rt == "zero")
        F = [](double, Vec const&, Vec const&, Vec const&) { return 0.0; };
    else if (rt == "quadratic")
    {
        double const q = get_double(rc, "q", 0.0), r1 = get_double(rc, "r1", 0.0),
                     r2 = get_double(rc, "r2", 0.0);
        F = [q, r1, r2](double, Vec const& y, Vec const& c1, Vec const& c2) {
            return q * sq(y) + r1 * sq(c1) - r2 * sq(c2);
        };
    }
    else if (rt == "bilinear")
    {
        double const k = get_double(rc, "k", 1.0);
        F = [k](double, Vec const& y, Vec const& c1, Vec const&) {
            return k * c1.at(0) * y.at(0);
        };
    }
    else
        fail(rc, "unknown running cost type '" + rt + "'");

    YAML::Node tc = require(n, "terminal_cost");
    std::string const tt = get_string(tc, "type");
    game::GameSpec::TerminalCost F0;
    if (tt == "zero")
        F0 = [](Vec const&) { return 0.0; };
    else if (tt == "quadratic")
    {
        double const q = get_double(tc, "q", 1.0);
        F0 = [q](Vec const& y) { return q * sq(y); };
    }
    else if (tt == "linear")
    {
        Vec w = as_vec(require(tc, "w"));
        F0 = [w](Vec const& y) { return dot(w, y); };
    }
    else
        fail(tc, "unknown terminal cost type '" + tt + "'");

    game::GameSpec::Feedback G;
    YAML::Node fb = n["feedback"];
    std::string const ft = fb ? get_string(fb, "type") : "none";
    if (ft == "none")
        G = [](double, game::Profile const&) { return Vec{}; };
    else if (ft == "aggregate")
    {
        double const gain = get_double(fb, "gain", 1.0);
        G = [family, gain](double, game::Profile const& p) {
            return gain * hysteresis::aggregate(family, p);
        };
    }
    else
        fail(fb, "unknown feedback type '" + ft + "'");

    YAML::Node gr = require(n, "grid");
    std::vector<std::vector<double>> axes;
    for (auto const& ax : require(gr, "axes"))
    {
        double const lo = get_double(ax, "lo"), hi = get_double(ax, "hi");
        std::size_t const cnt = get_size(ax, "n");
        if (cnt < 2 || !(hi > lo))
            fail(ax, "axis needs lo < hi and n >= 2");
        std::vector<double> a;
        for (std::size_t i = 0; i < cnt; ++i)
            a.push_back(i + 1 == cnt ? hi : lo + (hi - lo) * i / (cnt - 1.0));
        axes.push_back(std::move(a));
    }

    try
    {
        GameSetup setup{game::GameSpec{std::move(f), std::move(F), std::move(F0),
                                       parse_grid_list(require(n, "c1_grid")),
                                       parse_grid_list(require(n, "c2_grid")),
                                       std::move(family), std::move(G),
                                       get_double(n, "horizon"),
                                       get_size(n, "time_steps")},
                        game::StateGrid(std::move(axes))};
        setup.spec.check();
        return setup;
    }
    catch (ScenarioError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        fail(n, e.what());
    }
}

}  // namespace hystk::cli
