// SPDX-License-Identifier: Apache-2.0
//! \file signal_gen.hpp
//! Deterministic input signals for scenarios.
#pragma once

#include <string>
#include <vector>

#include "hystk/cli/scenario.hpp"
#include "hystk/geometry.hpp"

namespace hystk::cli {

struct GeneratorSpec
{
    enum class Kind
    {
        ramp,
        triangle,
        list,
        sinusoid
    };
    Kind kind = Kind::ramp;

    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t samples = 2;  //!< ramp and sinusoid

    double from = 0.0;  //!< ramp
    double to = 1.0;

    double amplitude = 1.0;  //!< triangle and sinusoid
    double period = 1.0;
    double offset = 0.0;
    double phase = 0.0;  //!< sinusoid, radians
    std::size_t half_periods = 1;  //!< triangle

    std::vector<double> times;  //!< list
    std::vector<Vec> points;

    //! Scalar values v are embedded as origin + v * direction when set.
    Vec origin;
    Vec direction;
};

/*!
 * Build the signal.
 *
 * ramp: `samples` equally spaced points from `from` to `to` on [t0, t1].
 * triangle: starts at offset - amplitude at t0 and turns every period / 2,
 * giving half_periods + 1 breakpoints. sinusoid: `samples` points of
 * offset + amplitude sin(2 pi (t - t0) / period + phase) on [t0, t1].
 */
geometry::Signal generate_signal(GeneratorSpec const& spec);

GeneratorSpec parse_generator(YAML::Node const& node);

}  // namespace hystk::cli
