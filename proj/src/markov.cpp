// SPDX-License-Identifier: Apache-2.0
#include "hystk/markov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "hystk/errors.hpp"
#include "markov_detail.hpp"
#include "rk4.hpp"

namespace hystk::markov {

namespace {

std::string where(double t, Vec const& x)
{
    std::ostringstream os;
    os.precision(12);
    os << " at t = " << t << ", x = (";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << (i ? ", " : "") << x[i];
    os << ')';
    return os.str();
}

std::mutex g_stats_mutex;
StochasticityStats g_stats;

constexpr std::size_t kMaxCrossings = 10'000;

}  // namespace

//---------------------------------------------------------------------------//
// Field
//---------------------------------------------------------------------------//

ImpulseSurface ImpulseSurface::at_time(double tau, MatrixFn p)
{
    ImpulseSurface s;
    s.time = tau;
    s.p = std::move(p);
    return s;
}

ImpulseSurface ImpulseSurface::on_facet(BoundaryFacet facet, MatrixFn p)
{
    ImpulseSurface s;
    s.facet = std::move(facet);
    s.p = std::move(p);
    return s;
}

MarkovField::MarkovField(std::size_t state_count, VectorFn intensities,
                         MatrixFn jump_kernel,
                         std::vector<ImpulseSurface> impulses)
    : n_(state_count),
      phi_(std::move(intensities)),
      g_(std::move(jump_kernel)),
      impulses_(std::move(impulses))
{
    if (n_ == 0)
        throw PreconditionViolation("MarkovField: need at least one state");
    if (!phi_ || !g_)
        throw PreconditionViolation("MarkovField: intensities and jump kernel required");
    for (auto const& s : impulses_)
    {
        if (s.time.has_value() == s.facet.has_value())
            throw PreconditionViolation(
                "MarkovField: impulse surface needs exactly one of time or facet");
        if (!s.p)
            throw PreconditionViolation("MarkovField: impulse surface without p");
    }
}

Vec MarkovField::intensities(double t, Vec const& x) const
{
    Vec phi = phi_(t, x);
    if (phi.size() != n_)
        throw DimensionMismatch("intensities: wrong length" + where(t, x));
    for (double v : phi)
        if (!std::isfinite(v) || v < 0.0)
            throw PreconditionViolation("intensities must be finite and >= 0"
                                        + where(t, x));
    return phi;
}

Matrix MarkovField::jump_kernel(double t, Vec const& x) const
{
    Matrix g = g_(t, x);
    if (g.rows() != n_ || g.cols() != n_)
        throw DimensionMismatch("jump kernel: wrong shape" + where(t, x));
    for (std::size_t a = 0; a < n_; ++a)
    {
        if (std::abs(g(a, a)) > 1e-12)
            throw PreconditionViolation("jump kernel: nonzero diagonal"
                                        + where(t, x));
        for (std::size_t b = 0; b < n_; ++b)
            if (!std::isfinite(g(a, b)) || g(a, b) < -1e-12)
                throw PreconditionViolation("jump kernel: negative entry"
                                            + where(t, x));
        if (n_ > 1 && std::abs(g.row_sum(a) - 1.0) > 1e-10)
            throw PreconditionViolation("jump kernel: row does not sum to 1"
                                        + where(t, x));
    }
    return g;
}

Matrix MarkovField::generator(double t, Vec const& x) const
{
    Vec const phi = intensities(t, x);
    Matrix const g = jump_kernel(t, x);
    Matrix q(n_, n_);
    for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t b = 0; b < n_; ++b)
            q(c, b) = c == b ? -phi[b] : phi[c] * g(c, b);
    return q;
}

Matrix MarkovField::jump_matrix(std::size_t k, double t, Vec const& x) const
{
    Matrix p = impulses_.at(k).p(t, x);
    if (p.rows() != n_ || p.cols() != n_)
        throw DimensionMismatch("impulse matrix: wrong shape" + where(t, x));
    for (std::size_t a = 0; a < n_; ++a)
    {
        for (std::size_t b = 0; b < n_; ++b)
            if (!std::isfinite(p(a, b)) || p(a, b) < -1e-12)
                throw PreconditionViolation("impulse matrix: negative entry"
                                            + where(t, x));
        if (std::abs(p.row_sum(a) - 1.0) > 1e-10)
            throw PreconditionViolation("impulse matrix: row does not sum to 1"
                                        + where(t, x));
    }
    return p;
}

//---------------------------------------------------------------------------//
// Semi-flows
//---------------------------------------------------------------------------//

namespace {

Vec rk4_step(VectorFn const& v, double t, Vec const& x, double h)
{
    Vec const k1 = v(t, x);
    Vec const k2 = v(t + 0.5 * h, x + (0.5 * h) * k1);
    Vec const k3 = v(t + 0.5 * h, x + (0.5 * h) * k2);
    Vec const k4 = v(t + h, x + h * k3);
    Vec y = x;
    for (std::size_t d = 0; d < y.size(); ++d)
        y[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
    return y;
}

std::size_t step_count(double span, double max_step)
{
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(span / max_step - 1e-9)));
}

}  // namespace

SemiFlow SemiFlow::closed_form(std::size_t dim, Evaluator eval)
{
    if (dim == 0 || !eval)
        throw PreconditionViolation("SemiFlow: need a dimension and an evaluator");
    SemiFlow f;
    f.dim_ = dim;
    f.eval_ = std::move(eval);
    return f;
}

SemiFlow SemiFlow::from_velocity(std::size_t dim, VectorFn velocity,
                                 double max_step)
{
    if (dim == 0 || !velocity || !(max_step > 0.0))
        throw PreconditionViolation("SemiFlow: invalid velocity flow");
    SemiFlow f;
    f.dim_ = dim;
    f.velocity_ = std::move(velocity);
    f.max_step_ = max_step;
    return f;
}

SemiFlow SemiFlow::translation(Vec velocity)
{
    std::size_t const n = velocity.size();
    return closed_form(n, [v = std::move(velocity)](double s, double t,
                                                    Vec const& xi) {
        return xi + (t - s) * v;
    });
}

Vec SemiFlow::operator()(double s, double t, Vec const& xi) const
{
    if (xi.size() != dim_)
        throw DimensionMismatch("SemiFlow: point dimension");
    if (t < s)
        throw PreconditionViolation("SemiFlow: need s <= t");
    if (eval_)
        return eval_(s, t, xi);
    if (t == s)
        return xi;
    std::size_t const n = step_count(t - s, max_step_);
    double const h = (t - s) / static_cast<double>(n);
    Vec x = xi;
    for (std::size_t k = 0; k < n; ++k)
        x = rk4_step(velocity_, s + static_cast<double>(k) * h, x, h);
    return x;
}

std::function<Vec(double)> SemiFlow::path(double s, double t_end,
                                          Vec const& xi) const
{
    if (xi.size() != dim_)
        throw DimensionMismatch("SemiFlow: point dimension");
    if (t_end < s)
        throw PreconditionViolation("SemiFlow: need s <= t_end");
    if (eval_)
        return [eval = eval_, s, xi](double tau) { return eval(s, tau, xi); };

    struct Dense
    {
        double s, h;
        std::vector<Vec> x, v;
    };
    auto d = std::make_shared<Dense>();
    std::size_t const n = t_end > s ? step_count(t_end - s, max_step_) : 1;
    d->s = s;
    d->h = t_end > s ? (t_end - s) / static_cast<double>(n) : 1.0;
    d->x.push_back(xi);
    for (std::size_t k = 0; k < n; ++k)
        d->x.push_back(rk4_step(velocity_, s + static_cast<double>(k) * d->h,
                                d->x.back(), d->h));
    for (std::size_t k = 0; k <= n; ++k)
        d->v.push_back(velocity_(s + static_cast<double>(k) * d->h, d->x[k]));

    return [d, n](double tau) {
        double const u = (tau - d->s) / d->h;
        auto k = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0,
                                                     static_cast<double>(n - 1)));
        double const th = std::clamp(u - static_cast<double>(k), 0.0, 1.0);
        double const h00 = (1 + 2 * th) * (1 - th) * (1 - th);
        double const h10 = th * (1 - th) * (1 - th);
        double const h01 = th * th * (3 - 2 * th);
        double const h11 = th * th * (th - 1);
        Vec out(d->x[k].size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = h00 * d->x[k][i] + h10 * d->h * d->v[k][i]
                     + h01 * d->x[k + 1][i] + h11 * d->h * d->v[k + 1][i];
        return out;
    };
}

SemiFlowResidual check_semiflow(SemiFlow const& flow, double r, double s,
                                double t, Vec const& xi)
{
    if (!(r <= s && s <= t))
        throw PreconditionViolation("check_semiflow: need r <= s <= t");
    auto dist = [](Vec const& a, Vec const& b) { return norm2(a - b); };
    return {dist(flow(s, s, xi), xi),
            dist(flow(s, t, flow(r, s, xi)), flow(r, t, xi))};
}

//---------------------------------------------------------------------------//
// Stochasticity
//---------------------------------------------------------------------------//

StochasticityStats stochasticity_stats()
{
    std::lock_guard lock(g_stats_mutex);
    return g_stats;
}

void reset_stochasticity_stats()
{
    std::lock_guard lock(g_stats_mutex);
    g_stats = {};
}

TransitionMatrix check_stochastic(Matrix m, std::string const& what,
                                  double row_sum)
{
    TransitionMatrix out;
    double scale = std::max(1.0, std::abs(row_sum));
    for (std::size_t a = 0; a < m.rows(); ++a)
    {
        out.row_residual
            = std::max(out.row_residual, std::abs(m.row_sum(a) - row_sum));
        for (std::size_t b = 0; b < m.cols(); ++b)
            out.min_entry = std::min(out.min_entry, m(a, b));
    }
    {
        std::lock_guard lock(g_stats_mutex);
        ++g_stats.checks;
        g_stats.max_row_residual
            = std::max(g_stats.max_row_residual, out.row_residual / scale);
        g_stats.min_entry = std::min(g_stats.min_entry, out.min_entry / scale);
    }
    if (!(out.row_residual <= kProbEps * scale))
    {
        std::ostringstream os;
        os << what << ": row sums off by " << out.row_residual;
        throw NumericalInvariantError(os.str());
    }
    if (out.min_entry < -kNegEps * scale)
    {
        std::ostringstream os;
        os << what << ": negative probability " << out.min_entry;
        throw NumericalInvariantError(os.str());
    }
    for (double& v : m.data())
        if (v < 0.0)
            v = 0.0;
    out.entries = std::move(m);
    return out;
}

//---------------------------------------------------------------------------//
// Impulse detection and propagation
//---------------------------------------------------------------------------//

namespace detail {

std::vector<ImpulseEvent>
impulse_events(MarkovField const& field, std::function<Vec(double)> const& path,
               double s, double t_end, PropagateOptions const& opts)
{
    std::vector<ImpulseEvent> ev;
    auto const& surfaces = field.impulses();
    for (std::size_t k = 0; k < surfaces.size(); ++k)
    {
        auto const& surf = surfaces[k];
        if (surf.time)
        {
            if (*surf.time > s && *surf.time <= t_end)
                ev.push_back({*surf.time, k});
            continue;
        }
        if (!(t_end > s))
            continue;
        auto const& facet = *surf.facet;
        auto const& plane = facet.hyperplane();
        if (plane.dim() != path(s).size())
            throw DimensionMismatch("impulse facet dimension differs from flow");
        double const tol = plane.tolerance();

        auto on_facet = [&](double tau) {
            Vec x = path(tau);
            double const g = plane.slack(x);
            for (std::size_t d = 0; d < x.size(); ++d)
                x[d] -= g * plane.normal[d];
            return geometry::facet_contains(facet, x);
        };
        auto push = [&](double tau) {
            if (ev.size() >= kMaxCrossings)
                throw Error("detect_impulse_times: more than 10^4 crossings");
            ev.push_back({tau, k});
        };

        auto const n = std::max<std::size_t>(
            64, static_cast<std::size_t>(
                    std::ceil(opts.scan_density * (t_end - s))));
        std::vector<double> ts(n + 1), gs(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
        {
            ts[i] = i == n ? t_end : s + (t_end - s) * i / static_cast<double>(n);
            gs[i] = plane.slack(path(ts[i]));
        }
        auto sign = [&](double g) { return g > tol ? 1 : (g < -tol ? -1 : 0); };

        std::size_t i = 0;
        while (i < n)
        {
            int const sa = sign(gs[i]);
            int const sb = sign(gs[i + 1]);
            if (sa != 0 && sb != 0)
            {
                if (sa != sb)
                {
                    double lo = ts[i], hi = ts[i + 1];
                    double glo = gs[i];
                    while (hi - lo > 1e-10)
                    {
                        double const mid = 0.5 * (lo + hi);
                        double const gm = plane.slack(path(mid));
                        if ((gm < 0) == (glo < 0))
                        {
                            lo = mid;
                            glo = gm;
                        }
                        else
                        {
                            hi = mid;
                        }
                    }
                    double const root = 0.5 * (lo + hi);
                    if (on_facet(root))
                        push(root);
                }
                ++i;
                continue;
            }
            if (sa == 0)
            {
                // Start of the scan on the surface: excluded.
                ++i;
                continue;
            }
            // Entered the band at node i+1: find where it is left again.
            std::size_t j = i + 1;
            while (j <= n && sign(gs[j]) == 0)
                ++j;
            // Touch point: the band node closest to the plane.
            std::size_t best = i + 1;
            for (std::size_t q = i + 1; q < j; ++q)
                if (std::abs(gs[q]) < std::abs(gs[best]))
                    best = q;
            if (on_facet(ts[best]))
            {
                if (j > n)
                    push(ts[best]);  // reaches the surface at the end
                else if (sign(gs[j]) != sa)
                    push(ts[best]);
                else
                {
                    std::ostringstream os;
                    os.precision(12);
                    os << "detect_impulse_times: flow touches impulse facet "
                       << k << " without crossing at t = " << ts[best];
                    throw GrazingCrossing(os.str());
                }
            }
            i = j;
        }
    }
    std::stable_sort(ev.begin(), ev.end(),
                     [](ImpulseEvent const& a, ImpulseEvent const& b) {
                         return a.time < b.time;
                     });
    return ev;
}

}  // namespace detail

std::vector<double> detect_impulse_times(MarkovField const& field,
                                         SemiFlow const& flow, double s,
                                         double t_end, Vec const& xi,
                                         PropagateOptions const& opts)
{
    auto const ev = detail::impulse_events(field, flow.path(s, t_end, xi), s, t_end, opts);
    std::vector<double> out;
    for (auto const& e : ev)
        if (out.empty() || e.time > out.back())
            out.push_back(e.time);
    return out;
}

TransitionMatrix propagate(MarkovField const& field, SemiFlow const& flow,
                           double s, double t, Vec const& xi,
                           PropagateOptions const& opts)
{
    if (t < s)
        throw PreconditionViolation("propagate: need s <= t");
    if (xi.size() != flow.dim())
        throw DimensionMismatch("propagate: xi dimension differs from flow");
    std::size_t const n = field.state_count();
    Matrix pi = Matrix::identity(n);
    if (t == s)
        return check_stochastic(std::move(pi), "propagate");

    auto const path = flow.path(s, t, xi);
    auto const events = detail::impulse_events(field, path, s, t, opts);
    auto rhs = [&](double tau, Matrix const& y) {
        return y * field.generator(tau, path(tau));
    };

    double a = s;
    std::size_t k = 0;
    while (k < events.size())
    {
        double const tau = events[k].time;
        pi = check_stochastic(hystk::detail::rk4_converged(rhs, a, tau, pi, opts.step_tol),
                              "propagate")
                 .entries;
        Vec const x = path(tau);
        for (; k < events.size() && events[k].time == tau; ++k)
            pi = pi * field.jump_matrix(events[k].surface, tau, x);
        pi = check_stochastic(std::move(pi), "propagate impulse").entries;
        a = tau;
    }
    return check_stochastic(hystk::detail::rk4_converged(rhs, a, t, pi, opts.step_tol),
                            "propagate");
}

TransitionMatrix stochastic_relay_output(MarkovField const& field,
                                         SemiFlow const& flow, double s,
                                         double t, Vec const& xi,
                                         PropagateOptions const& opts)
{
    return propagate(field, flow, s, t, xi, opts);
}

Matrix stochastic_hysteresis(std::vector<StochasticMember> const& family,
                             SemiFlow const& flow, double s, double t,
                             Vec const& xi, PropagateOptions const& opts)
{
    if (family.empty())
        throw PreconditionViolation("stochastic_hysteresis: empty family");
    std::size_t const n = family.front().field.state_count();
    Matrix sum(n, n);
    double total = 0.0;
    for (auto const& m : family)
    {
        if (!std::isfinite(m.weight) || !(m.weight > 0.0))
            throw PreconditionViolation("stochastic_hysteresis: member '"
                                        + m.label + "' needs a positive weight");
        if (m.field.state_count() != n)
            throw DimensionMismatch("stochastic_hysteresis: member '" + m.label
                                    + "' has a different state count");
        try
        {
            sum.add_scaled(m.weight, propagate(m.field, flow, s, t, xi, opts).entries);
        }
        catch (NumericalInvariantError const& e)
        {
            throw NumericalInvariantError("member '" + m.label + "': " + e.what());
        }
        catch (Error const& e)
        {
            throw MemberError(m.label, e.what());
        }
        total += m.weight;
    }
    return check_stochastic(std::move(sum), "stochastic_hysteresis", total).entries;
}

}  // namespace hystk::markov
