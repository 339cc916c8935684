// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>

#include "common/vec3.hpp"

namespace corsurf {

using Triangle = std::array<Vec3, 3>;

struct Segment {
  Vec3 a;
  Vec3 b;
};

// Plane-side tolerance in mm.
inline constexpr double kPlaneEpsilon = 1e-10;
// Triangles at or below this area (mm^2) are degenerate.
inline constexpr double kDegenerateArea = 1e-12;

double triangle_area(const Triangle& t);

// Intersection segment of two triangles, or nothing when they are disjoint or
// only touch in a single point. Coplanar overlap with positive area counts as
// an intersection; the returned segment is then one edge of the overlap
// polygon. Throws kArgument for a degenerate triangle.
std::optional<Segment> tri_tri_intersect(const Triangle& t1, const Triangle& t2);

// Same test without the degeneracy check; callers must skip degenerate input.
std::optional<Segment> tri_tri_intersect_unchecked(const Triangle& t1, const Triangle& t2);

}  // namespace corsurf
