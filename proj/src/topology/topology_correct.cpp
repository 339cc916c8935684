// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "topology/topology_correct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

#include "topology/simple_point.hpp"

namespace corsurf {
namespace {

enum State : std::uint8_t { kUnseen, kQueued, kAccepted, kDeferred };

struct Entry {
  double key;
  std::uint64_t arrival;
  std::size_t voxel;
  bool operator>(const Entry& o) const { return key != o.key ? key > o.key : arrival > o.arrival; }
};

}  // namespace

TopologyCorrectionResult topology_correct(const ScalarField& sdf, int fg_connectivity) {
  require(fg_connectivity == 18 || fg_connectivity == 26, ErrorCategory::kArgument,
          "foreground connectivity must be 18 or 26");
  const GridGeometry& g = sdf.geometry();
  const auto& values = sdf.storage();
  for (double v : values) require(std::isfinite(v), ErrorCategory::kArgument, "field contains non-finite values");
  const std::size_t seed = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  require(values[seed] < 0.0, ErrorCategory::kDegenerate, "field has no negative voxel to grow from");

  const double eps = 1e-4 * g.max_spacing();
  const auto& discover = neighbor_offsets(fg_connectivity);
  const auto& n26 = neighbor_offsets(26);

  TopologyCorrectionResult result{sdf, 0, seed};
  auto& out = result.corrected.storage();
  VoxelGrid<std::uint8_t> region(g, 0);
  std::vector<std::uint8_t> state(values.size(), kUnseen);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::uint64_t arrivals = 0;
  double level = -std::numeric_limits<double>::infinity();

  auto accept = [&](std::size_t voxel, double key) {
    out[voxel] = key;
    level = key;
    state[voxel] = kAccepted;
    region[voxel] = 1;
    const Index3 c = g.coords(voxel);
    for (const Index3& o : discover) {
      const int i = c[0] + o[0], j = c[1] + o[1], k = c[2] + o[2];
      if (!g.contains(i, j, k)) continue;
      const std::size_t nb = g.index(i, j, k);
      if (state[nb] != kUnseen) continue;
      state[nb] = kQueued;
      heap.push({std::max(values[nb], level), arrivals++, nb});
    }
    for (const Index3& o : n26) {
      const int i = c[0] + o[0], j = c[1] + o[1], k = c[2] + o[2];
      if (!g.contains(i, j, k)) continue;
      const std::size_t nb = g.index(i, j, k);
      if (state[nb] != kDeferred) continue;
      if (is_simple_configuration(gather_neighborhood(region, nb), fg_connectivity)) {
        state[nb] = kQueued;
        heap.push({level + eps, arrivals++, nb});
      }
    }
  };

  accept(seed, values[seed]);
  while (!heap.empty()) {
    const Entry e = heap.top();
    heap.pop();
    if (is_simple_configuration(gather_neighborhood(region, e.voxel), fg_connectivity)) {
      accept(e.voxel, e.key);
    } else {
      state[e.voxel] = kDeferred;
    }
  }

  for (std::size_t n = 0; n < out.size(); ++n) {
    if (state[n] != kAccepted) out[n] = std::max(values[n], level + eps);
    if (out[n] != values[n]) ++result.modified_voxel_count;
  }
  return result;
}

}  // namespace corsurf
