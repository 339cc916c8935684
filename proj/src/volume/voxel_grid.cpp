// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "volume/voxel_grid.hpp"

#include <cmath>

#include "common/parallel.hpp"

namespace corsurf {

void validate_geometry(const GridGeometry& g) {
  for (int a = 0; a < 3; ++a) {
    require(g.dims[a] > 0, ErrorCategory::kArgument, "grid dimensions must be positive");
    require(g.spacing[a] > 0.0 && std::isfinite(g.spacing[a]), ErrorCategory::kArgument,
            "grid spacing must be strictly positive");
    require(std::isfinite(g.origin[a]), ErrorCategory::kArgument, "grid origin must be finite");
  }
}

std::vector<double> gaussian_kernel(double sigma_mm, double spacing_mm) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma_mm / spacing_mm));
  std::vector<double> taps(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double d = k * spacing_mm;
    taps[k + radius] = std::exp(-(d * d) / (2.0 * sigma_mm * sigma_mm));
    total += taps[k + radius];
  }
  for (double& t : taps) t /= total;
  return taps;
}

namespace {

template <class T>
void convolve_axis(const VoxelGrid<T>& in, VoxelGrid<T>& out, int axis, const std::vector<double>& taps) {
  const GridGeometry& g = in.geometry();
  const int radius = static_cast<int>(taps.size() / 2);
  const int n = g.dims[axis];
  const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(g.dims[0])
                                                        : static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
  // Lines along `axis` are enumerated by the two remaining coordinates.
  const int other_a = axis == 0 ? 1 : 0;
  const int other_b = axis == 2 ? 1 : 2;
  const std::size_t lines = static_cast<std::size_t>(g.dims[other_a]) * g.dims[other_b];
  parallel_for(lines, [&](std::size_t begin, std::size_t end) {
    for (std::size_t line = begin; line < end; ++line) {
      Index3 c{0, 0, 0};
      c[other_a] = static_cast<int>(line % g.dims[other_a]);
      c[other_b] = static_cast<int>(line / g.dims[other_a]);
      const std::size_t start = g.index(c[0], c[1], c[2]);
      for (int i = 0; i < n; ++i) {
        T acc{};
        for (int k = -radius; k <= radius; ++k) {
          int j = i + k;
          j = j < 0 ? 0 : (j >= n ? n - 1 : j);
          acc += in[start + stride * j] * taps[k + radius];
        }
        out[start + stride * i] = acc;
      }
    }
  });
}

}  // namespace

template <class T>
VoxelGrid<T> gaussian_smooth(const VoxelGrid<T>& field, double sigma_mm) {
  require(sigma_mm >= 0.0 && std::isfinite(sigma_mm), ErrorCategory::kArgument,
          "gaussian sigma must be non-negative");
  if (sigma_mm == 0.0) return field;
  VoxelGrid<T> a = field;
  VoxelGrid<T> b = field;
  for (int axis = 0; axis < 3; ++axis) {
    const auto taps = gaussian_kernel(sigma_mm, field.geometry().spacing[axis]);
    convolve_axis(a, b, axis, taps);
    std::swap(a, b);
  }
  return a;
}

template VoxelGrid<double> gaussian_smooth(const VoxelGrid<double>&, double);
template VoxelGrid<Vec3> gaussian_smooth(const VoxelGrid<Vec3>&, double);

}  // namespace corsurf
