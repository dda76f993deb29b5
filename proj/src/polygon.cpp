// SPDX-License-Identifier: Apache-2.0
// Vertex enumeration of clipped polytopes in dimensions 1 and 2.
#include <algorithm>
#include <cmath>
#include <limits>

#include "hystk/errors.hpp"
#include "hystk/geometry.hpp"

namespace hystk::geometry {

namespace {

std::vector<Vec> clip_interval(std::vector<HalfSpace> const& hs, double m)
{
    double lo = -m;
    double hi = m;
    for (auto const& h : hs)
    {
        // unit normal in 1-D is +1 or -1
        if (h.normal[0] > 0)
            hi = std::min(hi, h.offset);
        else
            lo = std::max(lo, -h.offset);
    }
    if (lo > hi)
        return {};
    return {Vec{lo}, Vec{hi}};
}

std::vector<Vec> clip_polygon(std::vector<HalfSpace> const& hs, double m)
{
    std::vector<Vec> poly{{-m, -m}, {m, -m}, {m, m}, {-m, m}};
    std::vector<Vec> next;
    for (auto const& h : hs)
    {
        next.clear();
        std::size_t const n = poly.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            Vec const& p = poly[i];
            Vec const& q = poly[(i + 1) % n];
            double const sp = h.slack(p);
            double const sq = h.slack(q);
            bool const pin = sp <= 0.0;
            bool const qin = sq <= 0.0;
            if (pin)
                next.push_back(p);
            if (pin != qin)
            {
                double const lam = sp / (sp - sq);
                next.push_back(
                    {p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1])});
            }
        }
        poly.swap(next);
        if (poly.empty())
            break;
    }
    // Drop consecutive duplicates produced by vertices on a clip line.
    std::vector<Vec> out;
    for (auto const& v : poly)
    {
        if (!out.empty() && std::abs(out.back()[0] - v[0]) < 1e-15 * m
            && std::abs(out.back()[1] - v[1]) < 1e-15 * m)
            continue;
        out.push_back(v);
    }
    if (out.size() > 1 && std::abs(out.front()[0] - out.back()[0]) < 1e-15 * m
        && std::abs(out.front()[1] - out.back()[1]) < 1e-15 * m)
        out.pop_back();
    return out;
}

}  // namespace

std::vector<Vec> clipped_vertices(std::vector<HalfSpace> const& halfspaces,
                                  std::size_t dim, double half_width)
{
    for (auto const& h : halfspaces)
        if (h.dim() != dim)
            throw DimensionMismatch("clipped_vertices: half-space dimension");
    if (dim == 1)
        return clip_interval(halfspaces, half_width);
    if (dim == 2)
        return clip_polygon(halfspaces, half_width);
    throw UnsupportedDimension("vertex enumeration supports dimensions 1 and 2");
}

double clipped_measure(std::vector<Vec> const& v, std::size_t dim)
{
    if (dim == 1)
        return v.size() == 2 ? v[1][0] - v[0][0] : 0.0;
    if (v.size() < 3)
        return 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        Vec const& p = v[i];
        Vec const& q = v[(i + 1) % v.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::abs(a);
}

double clipping_half_width(std::vector<HalfSpace> const& halfspaces)
{
    double m = 0.0;
    for (auto const& h : halfspaces)
        m = std::max(m, std::abs(h.offset));
    return 1e4 * (1.0 + m);
}

std::optional<std::pair<Vec, Vec>>
facet_closure_extent(BoundaryFacet const& facet, double half_width)
{
    HalfSpace const& sup = facet.hyperplane();
    std::vector<HalfSpace> cons = facet.owner_constraints();
    for (auto const& c : facet.clip())
        cons.push_back(c.halfspace);

    if (facet.dim() == 1)
    {
        Vec y{sup.offset * sup.normal[0]};
        for (auto const& c : cons)
            if (c.slack(y) > c.tolerance())
                return std::nullopt;
        return std::make_pair(y, y);
    }
    if (facet.dim() != 2)
        throw UnsupportedDimension("facet extent supports dimensions 1 and 2");

    Vec const y0{sup.offset * sup.normal[0], sup.offset * sup.normal[1]};
    Vec const d{-sup.normal[1], sup.normal[0]};
    double lo = -half_width;
    double hi = half_width;
    for (auto const& c : cons)
    {
        double const md = dot(c.normal, d);
        double const rhs = c.offset - dot(c.normal, y0) + c.tolerance();
        if (std::abs(md) < 1e-14)
        {
            if (rhs < 0.0)
                return std::nullopt;
            continue;
        }
        if (md > 0)
            hi = std::min(hi, rhs / md);
        else
            lo = std::max(lo, rhs / md);
    }
    if (lo > hi)
        return std::nullopt;
    return std::make_pair(Vec{y0[0] + lo * d[0], y0[1] + lo * d[1]},
                          Vec{y0[0] + hi * d[0], y0[1] + hi * d[1]});
}

}  // namespace hystk::geometry
