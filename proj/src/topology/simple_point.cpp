// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "topology/simple_point.hpp"

#include <array>
#include <bit>
#include <cstdlib>

namespace corsurf {
namespace {

constexpr int kCenter = 13;

constexpr int bit_of(int di, int dj, int dk) { return (dk + 1) * 9 + (dj + 1) * 3 + (di + 1); }

struct Tables {
  // adjacency[c][p]: bits 6/18/26-adjacent to position p inside the cube,
  // centre excluded.
  std::array<std::array<std::uint32_t, 27>, 3> adjacency{};
  std::uint32_t ring6 = 0, ring18 = 0, ring26 = 0;
};

int order_of(int p) {
  const int di = p % 3 - 1, dj = (p / 3) % 3 - 1, dk = p / 9 - 1;
  return std::abs(di) + std::abs(dj) + std::abs(dk);
}

const Tables& tables() {
  static const Tables t = [] {
    Tables out;
    for (int p = 0; p < 27; ++p) {
      const int o = order_of(p);
      if (o == 0) continue;
      if (o == 1) out.ring6 |= 1u << p;
      if (o <= 2) out.ring18 |= 1u << p;
      out.ring26 |= 1u << p;
    }
    for (int p = 0; p < 27; ++p) {
      for (int q = 0; q < 27; ++q) {
        if (p == q || q == kCenter) continue;
        const int d = std::abs(p % 3 - q % 3) + std::abs((p / 3) % 3 - (q / 3) % 3) + std::abs(p / 9 - q / 9);
        const bool within = std::abs(p % 3 - q % 3) <= 1 && std::abs((p / 3) % 3 - (q / 3) % 3) <= 1 &&
                            std::abs(p / 9 - q / 9) <= 1;
        if (!within) continue;
        if (d == 1) out.adjacency[0][p] |= 1u << q;
        if (d <= 2) out.adjacency[1][p] |= 1u << q;
        out.adjacency[2][p] |= 1u << q;
      }
    }
    return out;
  }();
  return t;
}

// Number of components of `set` (under the given adjacency) that contain at
// least one bit of `touching`.
int count_components(std::uint32_t set, const std::array<std::uint32_t, 27>& adjacency, std::uint32_t touching) {
  int count = 0;
  while (set != 0) {
    std::uint32_t component = set & (~set + 1);
    std::uint32_t frontier = component;
    while (frontier != 0) {
      std::uint32_t grown = 0;
      for (std::uint32_t f = frontier; f != 0; f &= f - 1) grown |= adjacency[std::countr_zero(f)];
      grown &= set & ~component;
      component |= grown;
      frontier = grown;
    }
    set &= ~component;
    if (component & touching) ++count;
  }
  return count;
}

}  // namespace

bool is_simple_configuration(Neighborhood cube, int fg_connectivity) {
  const Tables& t = tables();
  const std::uint32_t fg = cube & t.ring26;
  int fg_count = 0;
  if (fg_connectivity == 26) {
    fg_count = count_components(fg, t.adjacency[2], t.ring26);
  } else if (fg_connectivity == 18) {
    fg_count = count_components(fg, t.adjacency[1], t.ring18);
  } else {
    fail(ErrorCategory::kArgument, "foreground connectivity must be 26 or 18");
  }
  if (fg_count != 1) return false;
  const std::uint32_t bg = ~cube & t.ring18;
  return count_components(bg, t.adjacency[0], t.ring6) == 1;
}

Neighborhood gather_neighborhood(const VoxelGrid<std::uint8_t>& grid, std::size_t voxel) {
  const GridGeometry& g = grid.geometry();
  const Index3 c = g.coords(voxel);
  const bool interior = c[0] > 0 && c[1] > 0 && c[2] > 0 && c[0] + 1 < g.dims[0] && c[1] + 1 < g.dims[1] &&
                        c[2] + 1 < g.dims[2];
  Neighborhood cube = 0;
  for (int dk = -1; dk <= 1; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int i = c[0] + di, j = c[1] + dj, k = c[2] + dk;
        if (!interior && !g.contains(i, j, k)) continue;
        if (grid.at(i, j, k)) cube |= 1u << bit_of(di, dj, dk);
      }
  return cube;
}

bool is_simple_point(const BinaryMask& mask, std::size_t voxel, int fg_connectivity, int bg_connectivity) {
  require(voxel < mask.grid.size(), ErrorCategory::kArgument, "voxel index outside grid");
  require(bg_connectivity == 6, ErrorCategory::kArgument, "background connectivity must be 6");
  return is_simple_configuration(gather_neighborhood(mask.grid, voxel), fg_connectivity);
}

}  // namespace corsurf
