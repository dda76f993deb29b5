// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "hystk/markov.hpp"

namespace hystk::markov::detail {

struct ImpulseEvent
{
    double time;
    std::size_t surface;
};

// Crossings of the impulse set in (s, t_end], sorted by time; surfaces met
// at the same time keep their declaration order.
std::vector<ImpulseEvent>
impulse_events(MarkovField const& field, std::function<Vec(double)> const& path,
               double s, double t_end, PropagateOptions const& opts);

}  // namespace hystk::markov::detail
