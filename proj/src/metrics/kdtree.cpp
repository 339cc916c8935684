// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "metrics/kdtree.hpp"

#include <algorithm>
#include <limits>

#include "common/error.hpp"

namespace corsurf {

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)) {
  require(!points_.empty(), ErrorCategory::kArgument, "nearest-neighbour reference cloud is empty");
  require(points_.size() < std::numeric_limits<std::uint32_t>::max(), ErrorCategory::kArgument, "point cloud too large");
  order_.resize(points_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
  nodes_.reserve(2 * points_.size() / kLeafSize + 2);
  build(0, static_cast<std::uint32_t>(points_.size()));
}

std::uint32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({begin, end, 0, 0, -1, 0.0});
  if (end - begin <= kLeafSize) return id;
  Vec3 lo = points_[order_[begin]], hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    lo = min(lo, points_[order_[i]]);
    hi = max(hi, points_[order_[i]]);
  }
  const Vec3 extent = hi - lo;
  const int axis = extent.x >= extent.y && extent.x >= extent.z ? 0 : (extent.y >= extent.z ? 1 : 2);
  if (extent[axis] == 0.0) return id;  // all points coincide
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double pa = points_[a][axis], pb = points_[b][axis];
                     return pa != pb ? pa < pb : a < b;
                   });
  const double split = points_[order_[mid]][axis];
  const std::uint32_t left = build(begin, mid);
  const std::uint32_t right = build(mid, end);
  Node& n = nodes_[id];
  n.axis = axis;
  n.split = split;
  n.left = left;
  n.right = right;
  return id;
}

Neighbor KdTree::nearest(const Vec3& q) const {
  Neighbor best{std::numeric_limits<std::uint32_t>::max(), std::numeric_limits<double>::infinity()};
  struct Pending {
    std::uint32_t node;
    double bound;  // lower bound on the squared distance to anything inside
  };
  Pending stack[128];
  int top = 0;
  stack[top++] = {0, 0.0};
  while (top > 0) {
    const Pending p = stack[--top];
    // Equal bounds are still visited so that the index tie-break holds.
    if (p.bound > best.squared_distance) continue;
    const Node& n = nodes_[p.node];
    if (n.axis < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const std::uint32_t idx = order_[i];
        const double d2 = squared_distance(q, points_[idx]);
        if (d2 < best.squared_distance || (d2 == best.squared_distance && idx < best.index)) best = {idx, d2};
      }
      continue;
    }
    const double diff = q[n.axis] - n.split;
    stack[top++] = {diff < 0.0 ? n.right : n.left, std::max(p.bound, diff * diff)};
    stack[top++] = {diff < 0.0 ? n.left : n.right, p.bound};
  }
  return best;
}

}  // namespace corsurf
