// SPDX-License-Identifier: Apache-2.0
#include "hystk/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "hystk/cli/builders.hpp"
#include "hystk/cli/signal_gen.hpp"

namespace hystk::cli {

namespace {

std::string num(double v)
{
    if (v == 0.0)
        v = 0.0;  // no "-0"
    return fmt::format("{:.12g}", v);
}

class Csv
{
  public:
    explicit Csv(std::vector<std::string> const& header) { row(header); }

    void row(std::vector<std::string> const& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
                buf_ += ',';
            buf_ += cells[i];
        }
        buf_ += '\n';
    }

    std::string const& str() const { return buf_; }

  private:
    std::string buf_;
};

void write_file(std::filesystem::path const& p, std::string const& content)
{
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw ScenarioError("cannot write '" + p.string() + "'");
    f << content;
    if (!f)
        throw ScenarioError("failed writing '" + p.string() + "'");
}

std::vector<double> output_times(YAML::Node const& root, double lo_default,
                                 double hi_default)
{
    YAML::Node n = root["times"];
    double const from = n ? get_double(n, "from", lo_default) : lo_default;
    double const to = n ? get_double(n, "to", hi_default) : hi_default;
    std::size_t const count = n ? get_size(n, "count", 11) : 11;
    if (count == 0 || !(to >= from))
        fail(n ? n : root, "times need count >= 1 and from <= to");
    if (count == 1)
        return {to};
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k)
        t[k] = k + 1 == count ? to
                              : from + (to - from) * static_cast<double>(k)
                                           / static_cast<double>(count - 1);
    return t;
}

std::vector<std::string> matrix_columns(std::string const& prefix, std::size_t r,
                                        std::size_t c)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out.push_back(fmt::format("{}_{}_{}", prefix, i + 1, j + 1));
    return out;
}

void append_matrix(std::vector<std::string>& row, Matrix const& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(num(m(i, j)));
}

std::vector<std::string> payload_columns(std::string const& prefix, std::size_t n)
{
    if (n == 1)
        return {prefix};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(fmt::format("{}_{}", prefix, i + 1));
    return out;
}

//---------------------------------------------------------------------------//
// Validation
//---------------------------------------------------------------------------//

// Writes violations to the report; returns their number.
std::size_t report_violations(relay::RelaySpec const& spec,
                              std::string const& label, std::uint64_t seed,
                              std::ostream& report)
{
    relay::ValidationOptions opts;
    opts.seed = seed;
    auto const vs = relay::validate(spec, opts);
    for (auto const& v : vs)
    {
        std::string w;
        for (std::size_t i = 0; i < v.witness.size(); ++i)
            w += (i ? ", " : "") + num(v.witness[i]);
        report << "violation [" << label << "] " << relay::to_string(v.condition)
               << ": " << v.message;
        if (!w.empty())
            report << " at (" << w << ")";
        report << '\n';
    }
    return vs.size();
}

std::size_t validate_family(hysteresis::RelayFamily const& fam,
                            std::uint64_t seed, std::ostream& report)
{
    std::size_t n = 0;
    for (auto const& m : fam.members())
        n += report_violations(m.spec, m.label, seed, report);
    return n;
}

class ValidationFailed : public ScenarioError
{
  public:
    using ScenarioError::ScenarioError;
};

void require_valid(std::size_t violations)
{
    if (violations)
        throw ValidationFailed(fmt::format("{} relay validation violation(s)", violations));
}

geometry::Signal scenario_signal(Scenario const& sc, std::size_t dim)
{
    YAML::Node n = require(sc.root, "signal");
    auto s = generate_signal(parse_generator(n));
    if (s.dim() != dim)
        fail(n, fmt::format("signal has dimension {}, relays expect {}", s.dim(), dim));
    return s;
}

//---------------------------------------------------------------------------//
// Kinds
//---------------------------------------------------------------------------//

struct Output
{
    std::string csv;
};

Output run_relay(Scenario const& sc, std::ostream& report)
{
    auto const spec = build_relay(sc, require(sc.root, "relay"));
    require_valid(report_violations(spec, "relay", sc.seed, report));
    std::size_t const init
        = sc.root["initial"] ? state_index(spec, sc.root["initial"]) : 0;
    auto const sig = scenario_signal(sc, spec.dim());
    auto const traj = relay::evolve(spec, sig, init);

    std::vector<std::string> head{"time", "state"};
    for (auto const& c : payload_columns("payload", spec.payload_dim()))
        head.push_back(c);
    Csv csv(head);
    auto emit = [&](double t, std::size_t a) {
        std::vector<std::string> row{num(t), std::to_string(a)};
        for (double v : spec.state(a).payload)
            row.push_back(num(v));
        csv.row(row);
    };
    emit(traj.start_time, traj.initial_state);
    for (auto const& e : traj.events)
        emit(e.time, e.to);

    report << "events: " << traj.events.size() << '\n';
    for (auto const& e : traj.events)
        report << "  t = " << num(e.time) << ": " << spec.state(e.from).name
               << " -> " << spec.state(e.to).name << '\n';
    report << "final state: " << spec.state(traj.final_state()).name << '\n';
    return {csv.str()};
}

Output run_hysteresis(Scenario const& sc, std::ostream& report)
{
    auto const fam = build_family(sc, require(sc.root, "family"));
    require_valid(validate_family(fam, sc.seed, report));
    auto const sig = scenario_signal(sc, fam.dim());
    auto const out = hysteresis::apply(fam, sig);

    std::vector<std::string> head{"time"};
    for (auto const& c : payload_columns("H_output", fam.payload_dim()))
        head.push_back(c);
    Csv csv(head);
    for (std::size_t k = 0; k < out.times.size(); ++k)
    {
        std::vector<std::string> row{num(out.times[k])};
        for (double v : out.values[k])
            row.push_back(num(v));
        csv.row(row);
    }

    std::size_t events = 0;
    for (auto const& tr : out.trajectories)
        events += tr.events.size();
    report << "members: " << fam.size() << ", switch events: " << events << '\n';

    auto const mono = hysteresis::analyze_monotropy(fam, sig);
    report << "monotropy intervals: " << mono.intervals.size() << '\n';
    for (auto const& tp : mono.transition_points)
        report << "  transition t = " << num(tp.time) << " (" << tp.pair.first
               << " -> " << tp.pair.second << ", member " << tp.rho_label << ")\n";

    if (YAML::Node w = sc.root["wipeout"])
    {
        auto const window = build_region(sc, require(w, "window"));
        auto const rep = hysteresis::check_local_wipeout(
            fam, sig, window, get_size(w, "alpha0", 0), get_size(w, "alpha1", 1));
        report << "wiping-out pairs: " << rep.pairs.size()
               << ", eligible: " << rep.eligible_count()
               << ", failures: " << rep.failures() << '\n';
        for (auto const& v : rep.precondition_violations)
            report << "  precondition: " << v << '\n';
        if (rep.failures())
            throw NumericalInvariantError("local wiping-out failed on an eligible pair");
    }
    return {csv.str()};
}

Output run_markov(Scenario const& sc, std::ostream& report)
{
    auto const field = build_field(sc, require(sc.root, "field"));
    auto const flow = build_flow(sc, require(sc.root, "flow"));
    Vec const xi = as_vec(require(sc.root, "xi"));
    if (xi.size() != flow.dim())
        fail(sc.root["xi"], "xi does not match the flow dimension");
    double const s = get_double(sc.root, "start", 0.0);
    auto const times = output_times(sc.root, s, s + 1.0);
    if (times.front() < s)
        fail(sc.root["times"], "output times precede the start time");

    markov::reset_stochasticity_stats();
    std::size_t const n = field.state_count();
    std::vector<std::string> head{"time"};
    for (auto const& c : matrix_columns("pi", n, n))
        head.push_back(c);
    Csv csv(head);
    for (double t : times)
    {
        auto const pi = markov::propagate(field, flow, s, t, xi);
        // Re-check the block exactly as it is written.
        markov::check_stochastic(pi.entries, fmt::format("pi at t = {}", num(t)));
        std::vector<std::string> row{num(t)};
        append_matrix(row, pi.entries);
        csv.row(row);
    }

    auto const imp = markov::detect_impulse_times(field, flow, s, times.back(), xi);
    report << "impulse times:";
    for (double t : imp)
        report << ' ' << num(t);
    report << (imp.empty() ? " none\n" : "\n");
    auto const st = markov::stochasticity_stats();
    report << "stochasticity checks: " << st.checks
           << ", max row residual: " << fmt::format("{:.3e}", st.max_row_residual)
           << ", min entry: " << fmt::format("{:.3e}", st.min_entry) << '\n';
    return {csv.str()};
}

struct CrossCheck
{
    std::vector<double> times;
    std::vector<Matrix> product;
    double max_residual = 0.0;
    std::size_t max_terms = 0;
};

CrossCheck cross_check(Scenario const& sc, markov::ImpulsiveSystem const& sys,
                       std::ostream& report)
{
    CrossCheck cc;
    double const tp = get_double(sc.root, "t_prime", sys.start());
    cc.times = output_times(sc.root, tp + 0.1 * (sys.horizon() - tp), sys.horizon());
    if (!(cc.times.front() > tp) || cc.times.back() > sys.horizon())
        fail(sc.root["times"] ? sc.root["times"] : sc.root,
             "output times must lie in (t_prime, horizon]");
    for (double t : cc.times)
    {
        Matrix const prod = markov::fundamental_matrix_product(sys, tp, t);
        auto const ser = markov::fundamental_matrix_series(sys, tp, t);
        double const r = max_abs_diff(prod, ser.phi);
        cc.max_residual = std::max(cc.max_residual, r);
        cc.max_terms = std::max(cc.max_terms, ser.terms);
        report << "  t = " << num(t) << ": residual " << fmt::format("{:.3e}", r)
               << ", series terms " << ser.terms << '\n';
        cc.product.push_back(prod);
    }
    report << "max cross-method residual: " << fmt::format("{:.3e}", cc.max_residual)
           << " (series terms <= " << cc.max_terms << ")\n";
    return cc;
}

Output run_fundamental(Scenario const& sc, std::ostream& report)
{
    auto const sys = build_system(sc, require(sc.root, "system"));
    report << "impulses:";
    for (auto const& im : sys.impulses())
        report << ' ' << num(im.time);
    report << (sys.impulses().empty() ? " none\n" : "\n");
    auto const cc = cross_check(sc, sys, report);

    std::vector<std::string> head{"time"};
    for (auto const& c : matrix_columns("phi", sys.size(), sys.size()))
        head.push_back(c);
    Csv csv(head);
    for (std::size_t k = 0; k < cc.times.size(); ++k)
    {
        std::vector<std::string> row{num(cc.times[k])};
        append_matrix(row, cc.product[k]);
        csv.row(row);
    }
    if (!(cc.max_residual < kCrossMethodTol))
        throw NumericalInvariantError(
            fmt::format("fundamental matrix methods disagree by {:.3e}", cc.max_residual));
    return {csv.str()};
}

std::string profile_name(game::Profile const& p)
{
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "-" : "") + std::to_string(p[i]);
    return s;
}

Output run_game(Scenario const& sc, std::ostream& report)
{
    auto const setup = build_game(sc, require(sc.root, "game"));
    auto const& spec = setup.spec;
    auto const& grid = setup.grid;
    require_valid(validate_family(spec.family, sc.seed, report));
    auto const table = game::solve(spec, grid);
    game::ProfileSpace const space(spec.family);

    std::vector<std::string> head{"time", "profile"};
    for (std::size_t d = 0; d < grid.dim(); ++d)
        head.push_back(fmt::format("y_{}", d + 1));
    head.push_back("value");
    Csv csv(head);
    for (std::size_t k = 0; k <= spec.time_steps; ++k)
        for (std::size_t q = 0; q < space.size(); ++q)
            for (std::size_t node = 0; node < grid.size(); ++node)
            {
                std::vector<std::string> row{num(static_cast<double>(k) * spec.dt()),
                                             profile_name(space.profile(q))};
                for (double y : grid.node(node))
                    row.push_back(num(y));
                row.push_back(num(table.values[k][q][node]));
                csv.row(row);
            }

    report << "profiles: " << space.size() << ", grid nodes: " << grid.size()
           << ", time steps: " << spec.time_steps << '\n';
    report << "clamped lookups: " << table.clamped << " of " << table.lookups << '\n';
    auto const pol = game::extract_policy(table, spec, grid);
    report << "initial-layer policy (profile: c1 index / c2 index per node):\n";
    for (std::size_t q = 0; q < space.size(); ++q)
    {
        report << "  " << profile_name(space.profile(q)) << ':';
        for (auto const& e : pol[0][q])
            report << ' ' << e.c1_index << '/' << e.c2_index;
        report << '\n';
    }
    return {csv.str()};
}

Output run_kind(Scenario const& sc, std::ostream& report)
{
    if (sc.kind == "relay")
        return run_relay(sc, report);
    if (sc.kind == "hysteresis")
        return run_hysteresis(sc, report);
    if (sc.kind == "markov")
        return run_markov(sc, report);
    if (sc.kind == "fundamental-matrix")
        return run_fundamental(sc, report);
    return run_game(sc, report);
}

//---------------------------------------------------------------------------//
// Error classification
//---------------------------------------------------------------------------//

int guarded(std::function<int()> const& body, std::ostream& err,
            std::ostream* report)
{
    auto fail_with = [&](int code, char const* what, std::string const& msg) {
        err << "hystk: " << what << ": " << msg << '\n';
        if (report)
            *report << what << ": " << msg << '\n';
        return code;
    };
    try
    {
        return body();
    }
    catch (ValidationFailed const& e)
    {
        return fail_with(kExitScenario, "validation error", e.what());
    }
    catch (ScenarioError const& e)
    {
        return fail_with(kExitScenario, "scenario error", e.what());
    }
    catch (NumericalInvariantError const& e)
    {
        return fail_with(kExitNumerical, "numerical invariant failed", e.what());
    }
    catch (ConvergenceError const& e)
    {
        return fail_with(kExitNumerical, "no convergence", e.what());
    }
    catch (GrazingCrossing const& e)
    {
        return fail_with(kExitNumerical, "grazing crossing", e.what());
    }
    catch (YAML::Exception const& e)
    {
        return fail_with(kExitScenario, "scenario error", e.what());
    }
    catch (Error const& e)
    {
        return fail_with(kExitScenario, "invalid scenario", e.what());
    }
}

}  // namespace

//---------------------------------------------------------------------------//

int cmd_validate(std::string const& path, std::ostream& out, std::ostream& err)
{
    std::ostringstream report;
    int const code = guarded(
        [&] {
            auto const sc = load_scenario(path);
            std::size_t v = 0;
            if (sc.kind == "relay")
                v = report_violations(build_relay(sc, require(sc.root, "relay")),
                                      "relay", sc.seed, report);
            else if (sc.kind == "hysteresis")
                v = validate_family(build_family(sc, require(sc.root, "family")),
                                    sc.seed, report);
            else if (sc.kind == "markov")
            {
                build_field(sc, require(sc.root, "field"));
                build_flow(sc, require(sc.root, "flow"));
            }
            else if (sc.kind == "fundamental-matrix")
                build_system(sc, require(sc.root, "system"));
            else
                v = validate_family(build_game(sc, require(sc.root, "game")).spec.family,
                                    sc.seed, report);
            require_valid(v);
            return kExitOk;
        },
        err, nullptr);
    out << report.str();
    if (code == kExitOk)
        out << path << ": ok\n";
    return code;
}

int cmd_run(std::string const& path, std::string const& out_dir,
            std::ostream& out, std::ostream& err)
{
    namespace fs = std::filesystem;
    std::ostringstream report;
    std::string name = fs::path(path).stem().string();
    report << "scenario: " << fs::path(path).filename().string() << '\n';
    int const code = guarded(
        [&] {
            auto const sc = load_scenario(path);
            report << "kind: " << sc.kind << "\nseed: " << sc.seed << '\n';
            auto const o = run_kind(sc, report);
            fs::create_directories(out_dir);
            write_file(fs::path(out_dir) / (name + ".csv"), o.csv);
            report << "status: ok\n";
            return kExitOk;
        },
        err, &report);
    try
    {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / (name + ".report.txt"), report.str());
    }
    catch (std::exception const& e)
    {
        err << "hystk: " << e.what() << '\n';
        return code == kExitOk ? kExitScenario : code;
    }
    if (code == kExitOk)
        out << "wrote " << (fs::path(out_dir) / (name + ".csv")).string() << '\n';
    return code;
}

int cmd_game_solve(std::string const& path, std::size_t refine,
                   std::ostream& out, std::ostream& err)
{
    return guarded(
        [&] {
            auto const sc = load_scenario(path);
            if (sc.kind != "game")
                throw ScenarioError("game-solve needs a scenario of kind 'game'");
            auto setup = build_game(sc, require(sc.root, "game"));
            std::ostringstream report;
            require_valid(validate_family(setup.spec.family, sc.seed, report));
            out << report.str();

            game::ProfileSpace const space(setup.spec.family);
            std::vector<Vec> const base_nodes = [&] {
                std::vector<Vec> v;
                for (std::size_t i = 0; i < setup.grid.size(); ++i)
                    v.push_back(setup.grid.node(i));
                return v;
            }();
            std::vector<std::vector<double>> prev;
            out << "level,time_steps,grid_nodes,clamped_fraction,max_change_V0\n";
            for (std::size_t level = 0; level <= refine; ++level)
            {
                auto const table = game::solve(setup.spec, setup.grid);
                std::vector<std::vector<double>> v0(space.size());
                for (std::size_t q = 0; q < space.size(); ++q)
                    for (auto const& x : base_nodes)
                    {
                        bool cl = false;
                        v0[q].push_back(setup.grid.interpolate(table.values[0][q], x, cl));
                    }
                double change = 0.0;
                for (std::size_t q = 0; q < prev.size(); ++q)
                    for (std::size_t i = 0; i < v0[q].size(); ++i)
                        change = std::max(change, std::abs(v0[q][i] - prev[q][i]));
                double const frac = table.lookups ? static_cast<double>(table.clamped)
                                                        / static_cast<double>(table.lookups)
                                                  : 0.0;
                out << level << ',' << setup.spec.time_steps << ',' << setup.grid.size()
                    << ',' << num(frac) << ',' << (level ? num(change) : "") << '\n';
                prev = std::move(v0);
                if (level < refine)
                {
                    setup.spec.time_steps *= 2;
                    setup.grid = setup.grid.refined();
                }
            }
            return kExitOk;
        },
        err, nullptr);
}

int cmd_xcheck(std::string const& path, std::ostream& out, std::ostream& err)
{
    return guarded(
        [&] {
            auto const sc = load_scenario(path);
            if (sc.kind != "fundamental-matrix")
                throw ScenarioError("xcheck needs a scenario of kind 'fundamental-matrix'");
            auto const sys = build_system(sc, require(sc.root, "system"));
            std::ostringstream report;
            auto const cc = cross_check(sc, sys, report);
            out << report.str();
            out << "max_residual " << fmt::format("{:.6e}", cc.max_residual) << '\n';
            if (!(cc.max_residual < kCrossMethodTol))
                throw NumericalInvariantError("cross-method residual above tolerance");
            return kExitOk;
        },
        err, nullptr);
}

}  // namespace hystk::cli
