// SPDX-License-Identifier: Apache-2.0
#include "hystk/fundamental.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>

#include "hystk/errors.hpp"
#include "markov_detail.hpp"
#include "rk4.hpp"

namespace hystk::markov {

ImpulsiveSystem::ImpulsiveSystem(std::size_t n, Generator a,
                                 std::vector<Impulse> impulses, double start,
                                 double horizon)
    : n_(n), a_(std::move(a)), impulses_(std::move(impulses)),
      start_(start), horizon_(horizon)
{
    if (n_ == 0 || !a_)
        throw PreconditionViolation("ImpulsiveSystem: need size and generator");
    if (!(horizon_ > start_))
        throw PreconditionViolation("ImpulsiveSystem: need start < horizon");
    for (std::size_t i = 0; i < impulses_.size(); ++i)
    {
        auto const& imp = impulses_[i];
        if (!(imp.time > start_) || imp.time > horizon_)
            throw PreconditionViolation(
                "ImpulsiveSystem: impulse times must lie in (start, horizon]");
        if (i > 0 && !(imp.time > impulses_[i - 1].time))
            throw PreconditionViolation(
                "ImpulsiveSystem: impulse times must be strictly increasing");
        if (imp.b.rows() != n_ || imp.b.cols() != n_)
            throw DimensionMismatch("ImpulsiveSystem: impulse matrix shape");
    }
}

Matrix ImpulsiveSystem::generator(double t) const
{
    Matrix a = a_(t);
    if (a.rows() != n_ || a.cols() != n_)
        throw DimensionMismatch("ImpulsiveSystem: generator shape");
    return a;
}

ImpulsiveSystem kolmogorov_system(MarkovField const& field,
                                  SemiFlow const& flow, double s,
                                  double horizon, Vec const& xi)
{
    auto path = std::make_shared<std::function<Vec(double)>>(
        flow.path(s, horizon, xi));
    auto const events = detail::impulse_events(field, *path, s, horizon, {});
    std::size_t const n = field.state_count();
    std::vector<Impulse> imps;
    for (std::size_t k = 0; k < events.size();)
    {
        double const tau = events[k].time;
        Vec const x = (*path)(tau);
        Matrix p = Matrix::identity(n);
        for (; k < events.size() && events[k].time == tau; ++k)
            p = p * field.jump_matrix(events[k].surface, tau, x);
        imps.push_back({tau, p.transposed()});
    }
    return ImpulsiveSystem(
        n,
        [field, path](double t) {
            return field.generator(t, (*path)(t)).transposed();
        },
        std::move(imps), s, horizon);
}

//---------------------------------------------------------------------------//

std::vector<std::vector<std::size_t>> enumerate_paths(std::size_t i,
                                                      std::size_t j)
{
    if (i > j)
        throw PreconditionViolation("enumerate_paths: need i <= j");
    if (i == j)
        return {{i}};
    std::size_t const inner = j - i - 1;
    if (inner >= 30)
        throw PreconditionViolation("enumerate_paths: too many interior indices");
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << inner); ++mask)
    {
        std::vector<std::size_t> path{i};
        for (std::size_t b = 0; b < inner; ++b)
            if (mask & (std::size_t{1} << b))
                path.push_back(i + 1 + b);
        path.push_back(j);
        out.push_back(std::move(path));
    }
    return out;
}

Matrix smooth_fundamental(ImpulsiveSystem const& sys, double t0, double t1,
                          double step_tol)
{
    if (t1 < t0)
        throw PreconditionViolation("smooth_fundamental: need t0 <= t1");
    auto rhs = [&](double tau, Matrix const& y) { return sys.generator(tau) * y; };
    return hystk::detail::rk4_converged(rhs, t0, t1, Matrix::identity(sys.size()),
                                 step_tol);
}

namespace {

void check_window(ImpulsiveSystem const& sys, double t_prime, double t)
{
    if (!(t_prime < t))
        throw PreconditionViolation("fundamental matrix: need t' < t");
    if (t_prime < sys.start() || t > sys.horizon())
        throw PreconditionViolation("fundamental matrix: window outside horizon");
}

// Impulses applied on (t', t].
std::vector<Impulse const*> active(ImpulsiveSystem const& sys, double t_prime,
                                   double t)
{
    std::vector<Impulse const*> out;
    for (auto const& imp : sys.impulses())
        if (imp.time > t_prime && imp.time <= t)
            out.push_back(&imp);
    return out;
}

}  // namespace

Matrix fundamental_matrix_product(ImpulsiveSystem const& sys, double t_prime,
                                  double t)
{
    check_window(sys, t_prime, t);
    Matrix phi = Matrix::identity(sys.size());
    double a = t_prime;
    for (Impulse const* imp : active(sys, t_prime, t))
    {
        phi = imp->b * (smooth_fundamental(sys, a, imp->time) * phi);
        a = imp->time;
    }
    return smooth_fundamental(sys, a, t) * phi;
}

//---------------------------------------------------------------------------//
// Series construction
//---------------------------------------------------------------------------//

namespace {

constexpr std::size_t kNodes = 32;

struct GaussRule
{
    std::array<double, kNodes> x{};
    std::array<double, kNodes> w{};
    //! s[i][j]: integral from -1 to x_i of the j-th Lagrange basis function.
    std::array<std::array<double, kNodes>, kNodes> s{};
};

// Legendre values P_0..P_n at x.
std::array<double, kNodes + 2> legendre(double x)
{
    std::array<double, kNodes + 2> p{};
    p[0] = 1.0;
    p[1] = x;
    for (std::size_t k = 1; k + 1 < p.size(); ++k)
        p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
    return p;
}

GaussRule make_rule()
{
    GaussRule r;
    std::size_t const n = kNodes;
    for (std::size_t i = 0; i < n; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it)
        {
            auto const p = legendre(x);
            double const dp = n * (x * p[n] - p[n - 1]) / (x * x - 1.0);
            double const dx = p[n] / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        auto const p = legendre(x);
        double const dp = n * (x * p[n] - p[n - 1]) / (x * x - 1.0);
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Lagrange basis L_j = sum_k c_jk P_k with c_jk = w_j P_k(x_j) (2k+1)/2.
    std::array<std::array<double, kNodes + 2>, kNodes> pv{};
    for (std::size_t j = 0; j < n; ++j)
        pv[j] = legendre(r.x[j]);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto const p = legendre(r.x[i]);
        std::array<double, kNodes> ip{};  // int_{-1}^{x_i} P_k
        ip[0] = r.x[i] + 1.0;
        for (std::size_t k = 1; k < n; ++k)
            ip[k] = (p[k + 1] - p[k - 1]) / (2.0 * k + 1.0);
        for (std::size_t j = 0; j < n; ++j)
        {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += r.w[j] * pv[j][k] * (2.0 * k + 1.0) / 2.0 * ip[k];
            r.s[i][j] = acc;
        }
    }
    return r;
}

GaussRule const& rule()
{
    static GaussRule const r = make_rule();
    return r;
}

// Product of the impulse matrices with indices in [first, last), later ones
// on the left, as I plus the sum over increasing paths of D = B - I terms.
Matrix jump_product(std::vector<Matrix> const& d, std::size_t first,
                    std::size_t last, std::size_t n)
{
    Matrix out = Matrix::identity(n);
    for (std::size_t j = first; j < last; ++j)
        for (std::size_t i = first; i <= j; ++i)
            for (auto const& path : enumerate_paths(i, j))
            {
                // V(sigma) = D_{k_r} ... D_{k_1} D_i, I for sigma = {i}
                Matrix v = Matrix::identity(n);
                for (std::size_t q = 0; q + 1 < path.size(); ++q)
                    v = d[path[q]] * v;
                out += d[j] * v;
            }
    return out;
}

}  // namespace

SeriesResult fundamental_matrix_series(ImpulsiveSystem const& sys,
                                       double t_prime, double t, double tol,
                                       std::size_t max_terms)
{
    check_window(sys, t_prime, t);
    if (!(tol > 0.0))
        throw PreconditionViolation("fundamental_matrix_series: need tol > 0");
    std::size_t const n = sys.size();
    auto const& gl = rule();

    auto const imps = active(sys, t_prime, t);
    std::vector<Matrix> d;
    for (Impulse const* imp : imps)
        d.push_back(imp->b - Matrix::identity(n));

    // Panels between t' and t split at the impulses strictly inside.
    std::vector<double> bounds{t_prime};
    for (Impulse const* imp : imps)
        if (imp->time < t)
            bounds.push_back(imp->time);
    bounds.push_back(t);
    std::size_t const panels = bounds.size() - 1;
    std::size_t const k_total = imps.size();

    // jumps(p', p): impulses in (panel p', panel p] are those with indices
    // [p', p); jumps to the end also take the impulse sitting at t.
    auto jumps = [&](std::size_t from, std::size_t to) {
        return jump_product(d, from, to, n);
    };
    std::vector<std::vector<Matrix>> tpan(panels);
    for (std::size_t a = 0; a < panels; ++a)
        for (std::size_t b = 0; b < panels; ++b)
            tpan[a].push_back(b > a ? jumps(a, b) : Matrix::identity(n));
    std::vector<Matrix> tend;
    for (std::size_t a = 0; a < panels; ++a)
        tend.push_back(jumps(a, k_total));

    // Generator at every node.
    std::vector<std::array<Matrix, kNodes>> a_at(panels);
    std::vector<double> half(panels);
    for (std::size_t p = 0; p < panels; ++p)
    {
        double const lo = bounds[p], hi = bounds[p + 1];
        half[p] = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < kNodes; ++i)
            a_at[p][i] = sys.generator(lo + half[p] * (gl.x[i] + 1.0));
    }

    // term_0(x) = T(t', x)
    std::vector<std::array<Matrix, kNodes>> term(panels);
    for (std::size_t p = 0; p < panels; ++p)
        term[p].fill(tpan[0][p]);
    SeriesResult res;
    res.phi = jumps(0, k_total);

    for (std::size_t m = 1;; ++m)
    {
        if (m > max_terms)
            throw ConvergenceError("fundamental_matrix_series: no convergence",
                                   res.last_term_norm);
        std::vector<std::array<Matrix, kNodes>> f(panels);
        std::vector<Matrix> whole(panels, Matrix(n, n));
        for (std::size_t p = 0; p < panels; ++p)
            for (std::size_t j = 0; j < kNodes; ++j)
            {
                f[p][j] = a_at[p][j] * term[p][j];
                whole[p].add_scaled(half[p] * gl.w[j], f[p][j]);
            }
        std::vector<std::array<Matrix, kNodes>> next(panels);
        for (std::size_t p = 0; p < panels; ++p)
        {
            Matrix carry(n, n);
            for (std::size_t q = 0; q < p; ++q)
                carry += tpan[q][p] * whole[q];
            for (std::size_t i = 0; i < kNodes; ++i)
            {
                Matrix v = carry;
                for (std::size_t j = 0; j < kNodes; ++j)
                    v.add_scaled(half[p] * gl.s[i][j], f[p][j]);
                next[p][i] = std::move(v);
            }
        }
        Matrix at_end(n, n);
        for (std::size_t q = 0; q < panels; ++q)
            at_end += tend[q] * whole[q];

        double norm = at_end.max_abs();
        for (auto const& pn : next)
            for (auto const& v : pn)
                norm = std::max(norm, v.max_abs());
        res.phi += at_end;
        res.terms = m;
        res.last_term_norm = norm;
        term = std::move(next);
        if (norm < tol)
            break;
    }
    return res;
}

}  // namespace hystk::markov
