// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "collision/tri_tri.hpp"
#include "json.hpp"
#include "meshing/triangle_mesh.hpp"

namespace corsurf {

struct SelfIntersectionResult {
  double percent = 0.0;                // 100 * |flagged faces| / |faces|
  std::vector<std::uint32_t> faces;    // sorted face ids in at least one intersecting pair
  std::size_t pair_count = 0;          // intersecting face pairs
  std::size_t skipped_degenerate = 0;  // faces ignored for zero area
};

// Faces sharing a vertex index are never tested against each other.
SelfIntersectionResult self_intersection_fraction(const TriangleMesh& mesh);

struct IntersectionReport {
  std::string surface_a;
  std::string surface_b;
  std::size_t faces_a = 0;  // faces of a meeting b
  std::size_t faces_b = 0;
  double percent_a = 0.0;
  double percent_b = 0.0;
  std::size_t contacts = 0;  // intersecting triangle pairs, one segment each
  std::vector<std::uint32_t> face_ids_a;
  std::vector<std::uint32_t> face_ids_b;

  bool clear() const { return contacts == 0; }
};

IntersectionReport mesh_pair_intersections(const TriangleMesh& a, const TriangleMesh& b,
                                           const std::string& name_a = "a", const std::string& name_b = "b");

nlohmann::ordered_json to_json(const IntersectionReport& report);

}  // namespace corsurf
