// SPDX-License-Identifier: Apache-2.0
// Fixed-step classical RK4 for small matrix ODEs, with step doubling.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hystk/errors.hpp"
#include "hystk/linalg.hpp"

namespace hystk::detail {

template<class Rhs>
Matrix rk4_fixed(Rhs const& f, double a, double b, Matrix y, std::size_t steps)
{
    double const h = (b - a) / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k)
    {
        double const t = a + static_cast<double>(k) * h;
        Matrix const k1 = f(t, y);
        Matrix const k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
        Matrix const k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
        Matrix const k4 = f(k + 1 == steps ? b : t + h, y + h * k3);
        y.add_scaled(h / 6.0, k1);
        y.add_scaled(h / 3.0, k2);
        y.add_scaled(h / 3.0, k3);
        y.add_scaled(h / 6.0, k4);
    }
    return y;
}

// Doubles the step count until two successive results differ by less than
// tol * (1 + |y|).
template<class Rhs>
Matrix rk4_converged(Rhs const& f, double a, double b, Matrix const& y0,
                     double tol, std::size_t max_steps = std::size_t{1} << 18)
{
    if (!(b > a))
        return y0;
    auto n = static_cast<std::size_t>(std::ceil(8.0 * (b - a)));
    n = std::clamp<std::size_t>(n, 8, max_steps / 2);
    Matrix prev = rk4_fixed(f, a, b, y0, n);
    double change = 0.0;
    while (n < max_steps)
    {
        n *= 2;
        Matrix cur = rk4_fixed(f, a, b, y0, n);
        change = max_abs_diff(cur, prev);
        if (change < tol * (1.0 + cur.max_abs()))
            return cur;
        prev = std::move(cur);
    }
    throw ConvergenceError("rk4: step doubling did not settle", change);
}

}  // namespace hystk::detail
