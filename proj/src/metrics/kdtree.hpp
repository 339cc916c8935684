// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "common/vec3.hpp"

namespace corsurf {

struct Neighbor {
  std::uint32_t index = 0;
  double squared_distance = 0.0;
};

// Static k-d tree for exact nearest-neighbour queries. Among equidistant
// points the smallest index wins, which makes results identical to a linear
// scan.
class KdTree {
 public:
  explicit KdTree(std::vector<Vec3> points);

  Neighbor nearest(const Vec3& query) const;
  std::size_t size() const { return points_.size(); }

 private:
  static constexpr std::uint32_t kLeafSize = 8;
  struct Node {
    std::uint32_t begin = 0, end = 0;  // range in order_
    std::uint32_t left = 0, right = 0;
    int axis = -1;  // -1 for leaves
    double split = 0.0;
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Vec3> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace corsurf
