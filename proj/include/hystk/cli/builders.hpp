// SPDX-License-Identifier: Apache-2.0
//! \file builders.hpp
//! Construct library objects from scenario sections.
//!
//! Every builder accepts either an inline definition or the name of an entry
//! in the matching top-level section (`regions`, `relays`, `families`,
//! `fields`, `flows`, `systems`, `games`).
#pragma once

#include "hystk/cli/scenario.hpp"
#include "hystk/fundamental.hpp"
#include "hystk/game.hpp"
#include "hystk/hysteresis.hpp"
#include "hystk/markov.hpp"
#include "hystk/relay.hpp"

namespace hystk::cli {

/*!
 * Region: `{dim, halfspaces: [{normal, offset}, ...]}` (no half-spaces is
 * the whole space) or `{interval: [lo, hi]}` with .inf allowed.
 */
geometry::Region build_region(Scenario const& sc, YAML::Node const& node);

/*!
 * Relay: `{classic: {rho1, rho2}}`, `{fixture: triangle}`, or a custom
 * `{omega, states: [{name, payload, region}], facets: [...]}` where each
 * facet is `{from, to, support, clip: [{normal, offset, closed}]}` or
 * `{from, to, support, segment: {p, q, p_closed, q_closed}}`.
 */
relay::RelaySpec build_relay(Scenario const& sc, YAML::Node const& node);

//! Resolve a state given by index or by name.
std::size_t state_index(relay::RelaySpec const& spec, YAML::Node const& node);

/*!
 * Family: `{preisach: [{rho1, rho2, weight, initial}]}`,
 * `{preisach_grid: {lo, hi, n, initial}}` or
 * `{members: [{label, relay, weight, initial}]}`.
 */
hysteresis::RelayFamily build_family(Scenario const& sc, YAML::Node const& node);

/*!
 * Markov field: `{states, intensities, jump_kernel, impulses}`.
 *
 * intensities: `{type: constant, values}`, `{type: periodic, mean,
 * amplitude, omega}` (mean_a + amplitude_a sin(omega t)) or `{type: affine,
 * base, gradient}` (max(0, base_a + gradient_a . x)).
 * jump_kernel: `{type: uniform}` or `{type: matrix, values}`.
 * impulses: `{time, p}` or `{facet: {region, support, clip}, p}`.
 */
markov::MarkovField build_field(Scenario const& sc, YAML::Node const& node);

/*!
 * Semi-flow: `{type: translation, velocity}`, `{type: stationary, dim}`,
 * `{type: rotation, omega}` (2-D, closed form) or `{type: linear, matrix,
 * max_step}` (x' = M x, integrated).
 */
markov::SemiFlow build_flow(Scenario const& sc, YAML::Node const& node);

/*!
 * Impulsive system: `{size, generator, impulses: [{time, b}], start,
 * horizon}` with generator `{type: constant, matrix}` or `{type: cosine,
 * base, amplitude, omega}` (base + cos(omega t) amplitude); or
 * `{field, flow, xi, start, horizon}` for the transposed Kolmogorov system.
 */
markov::ImpulsiveSystem build_system(Scenario const& sc, YAML::Node const& node);

struct GameSetup
{
    game::GameSpec spec;
    game::StateGrid grid;
};

/*!
 * Game: `{family, horizon, time_steps, c1_grid, c2_grid, dynamics,
 * running_cost, terminal_cost, feedback, grid: {axes: [{lo, hi, n}]}}`.
 */
GameSetup build_game(Scenario const& sc, YAML::Node const& node);

}  // namespace hystk::cli
