// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "meshing/triangle_mesh.hpp"

namespace corsurf {

// Mean squared length over the undirected edges, mm^2. Throws kArgument for a
// mesh without edges.
double edge_loss(const TriangleMesh& mesh);

struct NormalConsistency {
  double loss = 0.0;              // mean of 1 - cos over adjacent face pairs
  std::size_t pair_count = 0;
  std::size_t skipped_edges = 0;  // edges shared by more than two faces
};

NormalConsistency normal_consistency_loss(const TriangleMesh& mesh);

}  // namespace corsurf
