// SPDX-License-Identifier: Apache-2.0
#include "hystk/cli/signal_gen.hpp"

#include <cmath>
#include <numbers>

namespace hystk::cli {

geometry::Signal generate_signal(GeneratorSpec const& spec)
{
    using K = GeneratorSpec::Kind;
    std::vector<double> ts;
    std::vector<double> vs;
    std::vector<Vec> pts;

    auto spaced = [&](std::size_t n) {
        if (n < 2)
            throw PreconditionViolation("generate_signal: need at least 2 samples");
        if (!(spec.t1 > spec.t0))
            throw PreconditionViolation("generate_signal: need t0 < t1");
        for (std::size_t i = 0; i < n; ++i)
            ts.push_back(i + 1 == n ? spec.t1
                                    : spec.t0 + (spec.t1 - spec.t0) * i / (n - 1.0));
    };

    switch (spec.kind)
    {
        case K::ramp:
            spaced(spec.samples);
            for (std::size_t i = 0; i < ts.size(); ++i)
                vs.push_back(i + 1 == ts.size()
                                 ? spec.to
                                 : spec.from + (spec.to - spec.from) * i / (ts.size() - 1.0));
            break;
        case K::triangle:
            if (!(spec.period > 0.0) || spec.half_periods < 1)
                throw PreconditionViolation(
                    "generate_signal: triangle needs period > 0 and half_periods >= 1");
            for (std::size_t i = 0; i <= spec.half_periods; ++i)
            {
                ts.push_back(spec.t0 + 0.5 * spec.period * static_cast<double>(i));
                vs.push_back(spec.offset + (i % 2 == 0 ? -spec.amplitude : spec.amplitude));
            }
            break;
        case K::sinusoid:
            if (!(spec.period > 0.0))
                throw PreconditionViolation("generate_signal: sinusoid needs period > 0");
            spaced(spec.samples);
            for (double t : ts)
                vs.push_back(spec.offset
                             + spec.amplitude
                                   * std::sin(2.0 * std::numbers::pi * (t - spec.t0)
                                                  / spec.period
                                              + spec.phase));
            break;
        case K::list:
            ts = spec.times;
            pts = spec.points;
            break;
    }

    if (spec.kind != K::list)
    {
        bool const embed = !spec.direction.empty();
        if (embed && spec.origin.size() != spec.direction.size())
            throw DimensionMismatch("generate_signal: origin and direction sizes differ");
        for (double v : vs)
            pts.push_back(embed ? spec.origin + v * spec.direction : Vec{v});
    }
    else if (!spec.direction.empty())
    {
        std::vector<Vec> emb;
        for (auto const& p : pts)
        {
            if (p.size() != 1)
                throw DimensionMismatch("generate_signal: embedding needs scalar points");
            emb.push_back(spec.origin + p[0] * spec.direction);
        }
        pts = std::move(emb);
    }
    return geometry::Signal(std::move(ts), std::move(pts));
}

GeneratorSpec parse_generator(YAML::Node const& node)
{
    GeneratorSpec g;
    std::string const kind = get_string(node, "generator");
    using K = GeneratorSpec::Kind;
    if (kind == "ramp")
    {
        g.kind = K::ramp;
        g.from = get_double(node, "from");
        g.to = get_double(node, "to");
        g.samples = get_size(node, "samples", 2);
    }
    else if (kind == "triangle")
    {
        g.kind = K::triangle;
        g.amplitude = get_double(node, "amplitude");
        g.period = get_double(node, "period");
        g.half_periods = get_size(node, "half_periods");
        g.offset = get_double(node, "offset", 0.0);
    }
    else if (kind == "sinusoid")
    {
        g.kind = K::sinusoid;
        g.amplitude = get_double(node, "amplitude");
        g.period = get_double(node, "period");
        g.samples = get_size(node, "samples");
        g.offset = get_double(node, "offset", 0.0);
        g.phase = get_double(node, "phase", 0.0);
    }
    else if (kind == "list")
    {
        g.kind = K::list;
        g.times = as_vec(require(node, "times"));
        YAML::Node pts = require(node, "points");
        if (!pts.IsSequence())
            fail(pts, "points must be a list");
        for (auto const& p : pts)
            g.points.push_back(as_vec(p));
        if (g.points.size() != g.times.size())
            fail(pts, "points and times differ in length");
    }
    else
    {
        fail(node["generator"], "unknown signal generator '" + kind + "'");
    }
    g.t0 = get_double(node, "t0", 0.0);
    g.t1 = get_double(node, "t1", 1.0);
    if (node["direction"])
    {
        g.direction = as_vec(node["direction"]);
        g.origin = node["origin"] ? as_vec(node["origin"]) : Vec(g.direction.size(), 0.0);
    }
    return g;
}

}  // namespace hystk::cli
