// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "meshing/mc_table.hpp"
#include "meshing/triangle_mesh.hpp"

namespace corsurf {
namespace {

// Keeps generated vertices off the lattice points so that vertices belonging
// to different cell edges never coincide.
constexpr double kEdgeClamp = 1e-4;

}  // namespace

TriangleMesh marching_cubes(const ScalarField& field, double iso, GridBoundary boundary) {
  const GridGeometry& g = field.geometry();
  const auto [lo_it, hi_it] = std::minmax_element(field.storage().begin(), field.storage().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  require(std::isfinite(iso) && lo < iso && iso < hi, ErrorCategory::kEmptySurface,
          "iso-value " + std::to_string(iso) + " outside field range (" + std::to_string(lo) + ", " +
              std::to_string(hi) + ")");
  const double pad = std::max(hi, iso) + (hi - lo) + 1.0;

  const int nx = g.dims[0], ny = g.dims[1], nz = g.dims[2];
  // Lattice points run from -1 to n inclusive; out-of-grid points hold `pad`.
  auto value = [&](int i, int j, int k) { return g.contains(i, j, k) ? field.at(i, j, k) : pad; };
  const std::uint64_t lx = static_cast<std::uint64_t>(nx) + 2;
  const std::uint64_t ly = static_cast<std::uint64_t>(ny) + 2;
  auto edge_key = [&](int i, int j, int k, int axis) -> std::uint64_t {
    return (((static_cast<std::uint64_t>(k + 1) * ly) + static_cast<std::uint64_t>(j + 1)) * lx +
            static_cast<std::uint64_t>(i + 1)) * 3 + static_cast<std::uint64_t>(axis);
  };

  const auto& table = mc::case_table();
  std::unordered_map<std::uint64_t, Vec3> positions;
  std::vector<std::array<std::uint64_t, 3>> key_faces;

  const int first = boundary == GridBoundary::kClosed ? -1 : 0;
  const int trim = boundary == GridBoundary::kClosed ? 0 : 1;
  double corner_value[8];
  for (int k = first; k < nz - trim; ++k) {
    for (int j = first; j < ny - trim; ++j) {
      for (int i = first; i < nx - trim; ++i) {
        int mask = 0;
        for (int c = 0; c < 8; ++c) {
          corner_value[c] = value(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
          if (corner_value[c] < iso) mask |= 1 << c;
        }
        if (mask == 0 || mask == 255) continue;
        for (const auto& tri : table[mask]) {
          std::array<std::uint64_t, 3> keys;
          for (int v = 0; v < 3; ++v) {
            const int e = tri[v];
            const int ca = mc::kEdgeCorners[e][0];
            const int cb = mc::kEdgeCorners[e][1];
            const int bi = i + (ca & 1), bj = j + ((ca >> 1) & 1), bk = k + ((ca >> 2) & 1);
            const std::uint64_t key = edge_key(bi, bj, bk, mc::kEdgeAxis[e]);
            keys[v] = key;
            if (positions.find(key) != positions.end()) continue;
            const double fa = corner_value[ca];
            const double fb = corner_value[cb];
            const double t = std::clamp((iso - fa) / (fb - fa), kEdgeClamp, 1.0 - kEdgeClamp);
            Vec3 p = g.world(bi, bj, bk);
            p[mc::kEdgeAxis[e]] += t * g.spacing[mc::kEdgeAxis[e]];
            positions.emplace(key, p);
          }
          key_faces.push_back(keys);
        }
      }
    }
  }

  // Vertex ids follow global edge-key order.
  std::vector<std::uint64_t> keys;
  keys.reserve(positions.size());
  for (const auto& [key, pos] : positions) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  TriangleMesh mesh;
  mesh.vertices.reserve(keys.size());
  for (std::uint64_t key : keys) mesh.vertices.push_back(positions.at(key));
  auto id_of = [&](std::uint64_t key) {
    return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), key) - keys.begin());
  };
  mesh.faces.reserve(key_faces.size());
  for (const auto& kf : key_faces) mesh.faces.push_back({id_of(kf[0]), id_of(kf[1]), id_of(kf[2])});
  return mesh;
}

}  // namespace corsurf
