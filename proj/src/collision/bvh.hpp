// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "meshing/triangle_mesh.hpp"

namespace corsurf {

struct Aabb {
  Vec3 lo;
  Vec3 hi;
  bool overlaps(const Aabb& o) const {
    return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y && lo.z <= o.hi.z && o.lo.z <= hi.z;
  }
};

// Bounding-volume hierarchy over the faces of one mesh. Nodes split at the
// median face centroid along the widest centroid axis; leaves hold at most
// kLeafSize faces.
class Bvh {
 public:
  static constexpr std::size_t kLeafSize = 4;

  struct Node {
    Aabb box;
    std::uint32_t left = 0;   // child node ids, valid when count == 0
    std::uint32_t right = 0;
    std::uint32_t first = 0;  // range into face_order() for leaves
    std::uint32_t count = 0;
  };

  explicit Bvh(const TriangleMesh& mesh);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& face_order() const { return order_; }
  const Aabb& face_box(std::uint32_t face) const { return boxes_[face]; }

  // Unordered candidate pairs (f < g) whose boxes overlap, within this mesh.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> self_candidates() const;
  // Candidate pairs (face of this mesh, face of other) whose boxes overlap.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates(const Bvh& other) const;

 private:
  std::uint32_t build(std::uint32_t first, std::uint32_t count, const std::vector<Vec3>& centroids);

  std::vector<Aabb> boxes_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace corsurf
