// SPDX-License-Identifier: Apache-2.0
#include "hystk/fixtures.hpp"

#include <limits>

namespace hystk::relay {

using geometry::HalfSpace;

RelaySpec classic_relay(double rho1, double rho2)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    Region const omega = Region::whole_space(1);
    Region lower = Region::interval(-inf, rho1);
    Region upper = Region::interval(rho2, inf);
    std::map<RelaySpec::FacetKey, BoundaryFacet> facets;
    facets.emplace(RelaySpec::FacetKey{0, 1}, BoundaryFacet(lower, 0));
    facets.emplace(RelaySpec::FacetKey{1, 0}, BoundaryFacet(upper, 0));
    std::vector<StateId> states{{0, {-1.0}, "-1"}, {1, {1.0}, "+1"}};
    return RelaySpec(omega, std::move(states), {lower, upper},
                     std::move(facets));
}

TriangleGeometry triangle_geometry()
{
    TriangleGeometry g;
    g.b1 = {4.0 / 13.0, 4.0 / 13.0};
    g.b2 = {1.0 / 7.0, 5.0 / 14.0};
    g.b3 = {5.0 / 14.0, 1.0 / 7.0};
    g.d1 = 0.5 * (g.b2 + g.b3);
    g.d2 = 0.5 * (g.b3 + g.b1);
    g.d3 = 0.5 * (g.b1 + g.b2);
    g.s1_up = {0.0, 0.5};
    g.s1_right = {0.5, 0.0};
    g.s2_right = {0.4, 0.0};
    g.s2_top = {1.0 / 7.0, 6.0 / 7.0};
    g.s3_up = {0.0, 0.4};
    g.s3_top = {6.0 / 7.0, 1.0 / 7.0};
    return g;
}

RelaySpec triangle_relay()
{
    std::vector<HalfSpace> const tri{HalfSpace({-1.0, 0.0}, 0.0),
                                     HalfSpace({0.0, -1.0}, 0.0),
                                     HalfSpace({1.0, 1.0}, 1.0)};
    auto with = [&](HalfSpace h) {
        auto hs = tri;
        hs.push_back(std::move(h));
        return Region(2, std::move(hs));
    };
    Region const omega(2, tri);
    Region const c1 = with(HalfSpace({-1.0, -1.0}, -0.5));
    Region const c2 = with(HalfSpace({1.0, 0.3}, 0.4));
    Region const c3 = with(HalfSpace({0.3, 1.0}, 0.4));

    auto const g = triangle_geometry();
    std::map<RelaySpec::FacetKey, BoundaryFacet> facets;
    auto add = [&](std::size_t a, std::size_t b, Region const& owner,
                   Vec const& p, Vec const& q, bool p_closed) {
        facets.emplace(RelaySpec::FacetKey{a, b},
                       BoundaryFacet::segment(owner, 3, p, q, p_closed, false));
    };
    add(0, 1, c1, g.d1, g.s1_up, true);
    add(0, 2, c1, g.d1, g.s1_right, false);
    add(1, 2, c2, g.d2, g.s2_right, true);
    add(1, 0, c2, g.d2, g.s2_top, false);
    add(2, 1, c3, g.d3, g.s3_up, true);
    add(2, 0, c3, g.d3, g.s3_top, false);

    std::vector<StateId> states{{0, {1.0, 1.0}, "alpha1"},
                                {1, {0.0, 1.0}, "alpha2"},
                                {2, {1.0, 0.0}, "alpha3"}};
    return RelaySpec(omega, std::move(states), {c1, c2, c3},
                     std::move(facets));
}

}  // namespace hystk::relay
