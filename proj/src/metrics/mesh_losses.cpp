// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "metrics/mesh_losses.hpp"

#include <algorithm>
#include <tuple>

namespace corsurf {

double edge_loss(const TriangleMesh& mesh) {
  validate_mesh(mesh);
  const auto edges = unique_edges(mesh);
  require(!edges.empty(), ErrorCategory::kArgument, "edge loss needs at least one edge");
  double sum = 0.0;
  for (const auto& e : edges) sum += squared_distance(mesh.vertices[e[0]], mesh.vertices[e[1]]);
  return sum / static_cast<double>(edges.size());
}

NormalConsistency normal_consistency_loss(const TriangleMesh& mesh) {
  validate_mesh(mesh);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> incidence;  // (a, b, face)
  incidence.reserve(mesh.faces.size() * 3);
  for (std::uint32_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    for (int e = 0; e < 3; ++e)
      incidence.emplace_back(std::min(t[e], t[(e + 1) % 3]), std::max(t[e], t[(e + 1) % 3]), f);
  }
  std::sort(incidence.begin(), incidence.end());
  std::vector<Vec3> normals(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) normals[f] = face_normal(mesh, f);

  NormalConsistency out;
  double sum = 0.0;
  for (std::size_t i = 0; i < incidence.size();) {
    std::size_t j = i;
    while (j < incidence.size() && std::get<0>(incidence[j]) == std::get<0>(incidence[i]) &&
           std::get<1>(incidence[j]) == std::get<1>(incidence[i]))
      ++j;
    if (j - i == 2) {
      sum += 1.0 - dot(normals[std::get<2>(incidence[i])], normals[std::get<2>(incidence[i + 1])]);
      ++out.pair_count;
    } else if (j - i > 2) {
      ++out.skipped_edges;
    }
    i = j;
  }
  if (out.pair_count > 0) out.loss = sum / static_cast<double>(out.pair_count);
  return out;
}

}  // namespace corsurf
