// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "meshing/triangle_mesh.hpp"
#include "metrics/kdtree.hpp"

namespace corsurf {

// Nearest reference point for every query point (k-d tree, ties to the
// smallest index). Throws kArgument for an empty reference.
std::vector<Neighbor> nearest_neighbor_index(const PointCloud& query, const PointCloud& reference);

// Mean squared nearest-neighbour distance from p to q plus the same from q to
// p, in mm^2.
double chamfer(const PointCloud& p, const PointCloud& q);

// Sum of nearest-neighbour distances in both directions over |p| + |q|, mm.
double assd(const PointCloud& p, const PointCloud& q);

// Larger of the two directed percentiles of nearest-neighbour distances
// (nearest-rank definition). percentile 100 is the classical Hausdorff
// distance.
double hausdorff(const PointCloud& p, const PointCloud& q, double percentile = 100.0);

// All three at once, sharing the two nearest-neighbour passes.
struct SurfaceDistances {
  double chamfer_mm2 = 0.0;
  double assd_mm = 0.0;
  double hausdorff_mm = 0.0;
};
SurfaceDistances surface_distances(const PointCloud& p, const PointCloud& q, double percentile = 100.0);

}  // namespace corsurf
