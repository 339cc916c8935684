// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "volume/labels.hpp"

#include <algorithm>
#include <string>

namespace corsurf {

LabelSet pial_labels(Hemisphere h) {
  if (h == Hemisphere::kLeft) {
    return {static_cast<int>(Label::kLeftWhiteMatter), static_cast<int>(Label::kLeftCortex),
            static_cast<int>(Label::kLeftVentricle)};
  }
  return {static_cast<int>(Label::kRightWhiteMatter), static_cast<int>(Label::kRightCortex),
          static_cast<int>(Label::kRightVentricle)};
}

LabelSet white_labels(Hemisphere h) {
  if (h == Hemisphere::kLeft) {
    return {static_cast<int>(Label::kLeftWhiteMatter), static_cast<int>(Label::kLeftVentricle)};
  }
  return {static_cast<int>(Label::kRightWhiteMatter), static_cast<int>(Label::kRightVentricle)};
}

void validate_labels(const LabelVolume& labels) {
  const auto& g = labels.grid;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (g[n] > kMaxLabel) {
      const Index3 c = g.geometry().coords(n);
      fail(ErrorCategory::kValidation, "label " + std::to_string(g[n]) + " outside 0..8 at voxel (" +
                                           std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                                           std::to_string(c[2]) + ") index " + std::to_string(n));
    }
  }
}

BinaryMask build_mask(const LabelVolume& labels, const LabelSet& label_set) {
  require(!label_set.empty(), ErrorCategory::kArgument, "label set must not be empty");
  bool member[256] = {};
  for (int l : label_set) {
    require(l >= 0 && l <= kMaxLabel, ErrorCategory::kArgument, "label id " + std::to_string(l) + " outside 0..8");
    member[l] = true;
  }
  BinaryMask mask{VoxelGrid<std::uint8_t>(labels.grid.geometry(), 0), label_set};
  std::sort(mask.label_set.begin(), mask.label_set.end());
  mask.label_set.erase(std::unique(mask.label_set.begin(), mask.label_set.end()), mask.label_set.end());
  for (std::size_t n = 0; n < labels.grid.size(); ++n) mask.grid[n] = member[labels.grid[n]] ? 1 : 0;
  return mask;
}

const std::vector<Index3>& neighbor_offsets(int connectivity) {
  static const auto build = [](int conn) {
    std::vector<Index3> out;
    for (int dk = -1; dk <= 1; ++dk)
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int order = std::abs(di) + std::abs(dj) + std::abs(dk);
          if (order == 0) continue;
          if (conn == 6 && order > 1) continue;
          if (conn == 18 && order > 2) continue;
          out.push_back({di, dj, dk});
        }
    return out;
  };
  static const std::vector<Index3> n6 = build(6);
  static const std::vector<Index3> n18 = build(18);
  static const std::vector<Index3> n26 = build(26);
  switch (connectivity) {
    case 6: return n6;
    case 18: return n18;
    case 26: return n26;
    default: fail(ErrorCategory::kArgument, "connectivity must be 6, 18 or 26");
  }
}

BinaryMask largest_component(const BinaryMask& mask, int connectivity) {
  const auto& offsets = neighbor_offsets(connectivity);
  const GridGeometry& g = mask.grid.geometry();
  std::vector<int> component(g.voxel_count(), -1);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < g.voxel_count(); ++seed) {
    if (!mask.grid[seed] || component[seed] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t count = 0;
    component[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      ++count;
      const Index3 c = g.coords(cur);
      for (const Index3& o : offsets) {
        const int i = c[0] + o[0], j = c[1] + o[1], k = c[2] + o[2];
        if (!g.contains(i, j, k)) continue;
        const std::size_t nb = g.index(i, j, k);
        if (mask.grid[nb] && component[nb] < 0) {
          component[nb] = id;
          stack.push_back(nb);
        }
      }
    }
    sizes.push_back(count);
  }
  BinaryMask out{VoxelGrid<std::uint8_t>(g, 0), mask.label_set};
  if (sizes.empty()) return out;
  // Components are numbered in order of their smallest voxel index, so the
  // first maximum is the tie-break winner.
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  for (std::size_t n = 0; n < component.size(); ++n) out.grid[n] = component[n] == keep ? 1 : 0;
  return out;
}

}  // namespace corsurf
