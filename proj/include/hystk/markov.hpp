// SPDX-License-Identifier: Apache-2.0
//! \file markov.hpp
//! Stochastic relays: impulsive forward Kolmogorov equations along a
//! semi-flow.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hystk/geometry.hpp"
#include "hystk/linalg.hpp"

namespace hystk::markov {

using geometry::BoundaryFacet;

inline constexpr double kProbEps = 1e-8;  //!< row-sum tolerance
inline constexpr double kNegEps = 1e-10;  //!< clipping range for entries

using VectorFn = std::function<Vec(double t, Vec const& x)>;
using MatrixFn = std::function<Matrix(double t, Vec const& x)>;

//---------------------------------------------------------------------------//
/*!
 * Part of the impulse set: either the time hyperplane t = tau or a spatial
 * facet crossed by the flow. p gives the jump matrix at the crossing.
 */
struct ImpulseSurface
{
    std::optional<double> time;
    std::optional<BoundaryFacet> facet;
    MatrixFn p;

    static ImpulseSurface at_time(double tau, MatrixFn p);
    static ImpulseSurface on_facet(BoundaryFacet facet, MatrixFn p);
};

/*!
 * Intensities phi, jump kernel g and impulse set of one stochastic relay.
 *
 * The user-supplied functions are validated at every point where they are
 * evaluated.
 */
class MarkovField
{
  public:
    MarkovField(std::size_t state_count, VectorFn intensities,
                MatrixFn jump_kernel, std::vector<ImpulseSurface> impulses = {});

    std::size_t state_count() const noexcept { return n_; }
    std::vector<ImpulseSurface> const& impulses() const noexcept
    {
        return impulses_;
    }

    Vec intensities(double t, Vec const& x) const;
    Matrix jump_kernel(double t, Vec const& x) const;
    //! Q with Q(c, b) = phi_c g_cb and Q(b, b) = -phi_b, so pi' = pi Q.
    Matrix generator(double t, Vec const& x) const;
    //! Validated jump matrix of impulse surface k.
    Matrix jump_matrix(std::size_t k, double t, Vec const& x) const;

  private:
    std::size_t n_;
    VectorFn phi_;
    MatrixFn g_;
    std::vector<ImpulseSurface> impulses_;
};

//---------------------------------------------------------------------------//
/*!
 * Two-parameter evolution u(s, t; xi), either closed-form or obtained by
 * integrating a velocity field.
 */
class SemiFlow
{
  public:
    using Evaluator = std::function<Vec(double s, double t, Vec const& xi)>;

    static SemiFlow closed_form(std::size_t dim, Evaluator eval);
    //! x' = v(t, x), integrated with classical RK4 at steps <= max_step.
    static SemiFlow from_velocity(std::size_t dim, VectorFn velocity,
                                  double max_step = 1e-3);
    //! u(s, t; xi) = xi + (t - s) v
    static SemiFlow translation(Vec velocity);

    std::size_t dim() const noexcept { return dim_; }
    Vec operator()(double s, double t, Vec const& xi) const;

    //! tau -> u(s, tau; xi) on [s, t_end]; velocity flows are sampled once
    //! and interpolated with cubic Hermite polynomials.
    std::function<Vec(double)> path(double s, double t_end, Vec const& xi) const;

  private:
    SemiFlow() = default;
    std::size_t dim_ = 0;
    Evaluator eval_;
    VectorFn velocity_;
    double max_step_ = 0.0;
};

struct SemiFlowResidual
{
    double identity;     //!< |u(s,s;xi) - xi|
    double composition;  //!< |u(s,t;u(r,s;xi)) - u(r,t;xi)|
};

SemiFlowResidual check_semiflow(SemiFlow const& flow, double r, double s,
                                double t, Vec const& xi);

//---------------------------------------------------------------------------//
/*!
 * Row-stochastic matrix with the residuals measured before clipping.
 */
struct TransitionMatrix
{
    Matrix entries;
    double row_residual = 0.0;  //!< max |row sum - 1|
    double min_entry = 0.0;
};

//! Running totals over every stochasticity check in this process.
struct StochasticityStats
{
    std::size_t checks = 0;
    double max_row_residual = 0.0;
    double min_entry = 0.0;
};

StochasticityStats stochasticity_stats();
void reset_stochasticity_stats();

/*!
 * Check and clean a probability matrix: entries in [-1e-10, 0) are clipped
 * to zero, anything more negative or a row sum off by more than 1e-8 throws
 * NumericalInvariantError. Updates the process-wide statistics. The
 * expected row sum defaults to one.
 */
TransitionMatrix check_stochastic(Matrix m, std::string const& what,
                                  double row_sum = 1.0);

struct PropagateOptions
{
    //! Brackets per unit time when scanning the flow for facet crossings.
    std::size_t scan_density = 2000;
    //! Step doubling stops when the max change is below this.
    double step_tol = 1e-12;
};

/*!
 * Times in (s, t_end] at which the curve tau -> (tau, u(s,tau;xi)) meets the
 * impulse set. Facet crossings are bracketed by sign changes of the
 * supporting hyperplane and refined by bisection to 1e-10; a touch without
 * a sign change throws GrazingCrossing. Strictly increasing.
 */
std::vector<double> detect_impulse_times(MarkovField const& field,
                                         SemiFlow const& flow, double s,
                                         double t_end, Vec const& xi,
                                         PropagateOptions const& opts = {});

/*!
 * pi(s, t, u(s,t;xi)): forward Kolmogorov equations along the flow with
 * pi(t+) = pi(t-) p at every impulse in (s, t].
 */
TransitionMatrix propagate(MarkovField const& field, SemiFlow const& flow,
                           double s, double t, Vec const& xi,
                           PropagateOptions const& opts = {});

//! The output of the stochastic relay driven by the flow; same as propagate.
TransitionMatrix stochastic_relay_output(MarkovField const& field,
                                         SemiFlow const& flow, double s,
                                         double t, Vec const& xi,
                                         PropagateOptions const& opts = {});

struct StochasticMember
{
    std::string label;
    MarkovField field;
    double weight = 1.0;
};

//! Weighted sum of member outputs; rows sum to the total weight.
Matrix stochastic_hysteresis(std::vector<StochasticMember> const& family,
                             SemiFlow const& flow, double s, double t,
                             Vec const& xi, PropagateOptions const& opts = {});

}  // namespace hystk::markov
