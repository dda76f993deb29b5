// SPDX-License-Identifier: Apache-2.0
//! \file fixtures.hpp
//! Named relay constructors: the classic two-state relay and the
//! three-state triangular relay.
#pragma once

#include "hystk/relay.hpp"

namespace hystk::relay {

/*!
 * Classic relay on the real line.
 *
 * State 0 ("-1", payload -1) persists on (-inf, rho1), state 1 ("+1",
 * payload +1) on (rho2, +inf); it switches up at rho1 and down at rho2.
 * No ordering of the thresholds is enforced here so that malformed relays
 * can still be built and validated.
 */
RelaySpec classic_relay(double rho1, double rho2);

//! Points of the triangular fixture, exposed for tests and scenarios.
struct TriangleGeometry
{
    Vec b1, b2, b3;  //!< pairwise intersections of the threshold lines
    Vec d1, d2, d3;  //!< tie-breaking points on the lines S1, S2, S3
    //! Ends of each threshold line on the boundary of the triangle.
    Vec s1_up, s1_right;  // (0, 0.5), (0.5, 0)
    Vec s2_right, s2_top;  // (0.4, 0), (1/7, 6/7)
    Vec s3_up, s3_top;  // (0, 0.4), (6/7, 1/7)
};

/*!
 * Three-state relay on the triangle u1 > 0, u2 > 0, u1 + u2 < 1.
 *
 * C1 = {u1 + u2 > 0.5}, C2 = {u1 + 0.3 u2 < 0.4}, C3 = {0.3 u1 + u2 < 0.4},
 * each intersected with the triangle (extra constraint at index 3). Payloads
 * are (1,1), (0,1) and (1,0).
 */
RelaySpec triangle_relay();
TriangleGeometry triangle_geometry();

}  // namespace hystk::relay
