// SPDX-License-Identifier: Apache-2.0
//! \file fundamental.hpp
//! Fundamental matrix of the linear impulsive system
//!   psi' = A(t) psi between impulses,  psi(tau+) = B psi(tau-).
//!
//! Impulses in (t', t] are applied: one sitting exactly at t' is excluded,
//! one at t is included.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hystk/linalg.hpp"
#include "hystk/markov.hpp"

namespace hystk::markov {

struct Impulse
{
    double time;
    Matrix b;
};

class ImpulsiveSystem
{
  public:
    using Generator = std::function<Matrix(double t)>;

    //! Impulse times strictly increasing and inside (start, horizon).
    ImpulsiveSystem(std::size_t n, Generator a, std::vector<Impulse> impulses,
                    double start, double horizon);

    std::size_t size() const noexcept { return n_; }
    Matrix generator(double t) const;
    std::vector<Impulse> const& impulses() const noexcept { return impulses_; }
    double start() const noexcept { return start_; }
    double horizon() const noexcept { return horizon_; }

  private:
    std::size_t n_;
    Generator a_;
    std::vector<Impulse> impulses_;
    double start_;
    double horizon_;
};

/*!
 * Transposed Kolmogorov system along the flow: A(t) = Q(t, x(t))^T and
 * B = p^T at the detected impulse times in (s, horizon).
 */
ImpulsiveSystem kolmogorov_system(MarkovField const& field,
                                  SemiFlow const& flow, double s,
                                  double horizon, Vec const& xi);

//! Index sets {i, k_1, ..., k_r, j} with i < k_1 < ... < k_r < j, or {i}.
std::vector<std::vector<std::size_t>> enumerate_paths(std::size_t i,
                                                      std::size_t j);

//! Fundamental matrix of psi' = A psi on [t0, t1], ignoring impulses.
Matrix smooth_fundamental(ImpulsiveSystem const& sys, double t0, double t1,
                          double step_tol = 1e-13);

//! Chain of smooth-piece fundamental matrices and impulse matrices.
Matrix fundamental_matrix_product(ImpulsiveSystem const& sys, double t_prime,
                                  double t);

struct SeriesResult
{
    Matrix phi;
    std::size_t terms = 0;  //!< number of correction terms summed
    double last_term_norm = 0.0;
};

inline constexpr std::size_t kMaxSeriesTerms = 50;

/*!
 * Successive approximations for the fundamental matrix.
 *
 * Solves psi(x) = T(t', x) + int_{t'}^x T(t1, x) A(t1) psi(t1) dt1, where
 * T(t1, x) is the product of the impulse matrices in (t1, x]. T - I is
 * assembled as a sum over increasing paths of products of B - I. Integrals
 * use 32-point Gauss-Legendre panels between impulses. Terms are added
 * until one has max-norm below tol; more than max_terms throws
 * ConvergenceError.
 */
SeriesResult fundamental_matrix_series(ImpulsiveSystem const& sys,
                                       double t_prime, double t,
                                       double tol = 1e-12,
                                       std::size_t max_terms = kMaxSeriesTerms);

}  // namespace hystk::markov
