// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "common/vec3.hpp"

namespace corsurf {

using Index3 = std::array<int, 3>;

// Shape and placement of a uniform grid. World position of voxel (i,j,k) is
// origin + (i*sx, j*sy, k*sz); data is stored x-fastest.
struct GridGeometry {
  Index3 dims{1, 1, 1};
  Vec3 spacing{1.0, 1.0, 1.0};
  Vec3 origin{};

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * k);
  }
  Index3 coords(std::size_t linear) const {
    const auto nx = static_cast<std::size_t>(dims[0]);
    const auto ny = static_cast<std::size_t>(dims[1]);
    return {static_cast<int>(linear % nx), static_cast<int>((linear / nx) % ny), static_cast<int>(linear / (nx * ny))};
  }
  bool contains(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < dims[0] && j < dims[1] && k < dims[2];
  }
  Vec3 world(int i, int j, int k) const {
    return {origin.x + i * spacing.x, origin.y + j * spacing.y, origin.z + k * spacing.z};
  }
  // Continuous voxel coordinates of a world point (not clamped).
  Vec3 to_voxel(const Vec3& p) const {
    return {(p.x - origin.x) / spacing.x, (p.y - origin.y) / spacing.y, (p.z - origin.z) / spacing.z};
  }
  double max_spacing() const { return std::max({spacing.x, spacing.y, spacing.z}); }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

// Throws kArgument unless dims and spacing are valid.
void validate_geometry(const GridGeometry& geometry);

template <class T>
class VoxelGrid {
 public:
  VoxelGrid() = default;
  explicit VoxelGrid(const GridGeometry& geometry, T fill = T{})
      : geometry_(geometry), data_((validate_geometry(geometry), geometry.voxel_count()), fill) {}
  VoxelGrid(const GridGeometry& geometry, std::vector<T> data) : geometry_(geometry), data_(std::move(data)) {
    validate_geometry(geometry);
    require(data_.size() == geometry_.voxel_count(), ErrorCategory::kArgument,
            "voxel data length " + std::to_string(data_.size()) + " does not match dims");
  }

  const GridGeometry& geometry() const { return geometry_; }
  const Index3& dims() const { return geometry_.dims; }
  std::size_t size() const { return data_.size(); }

  T& operator[](std::size_t linear) { return data_[linear]; }
  const T& operator[](std::size_t linear) const { return data_[linear]; }
  T& at(int i, int j, int k) { return data_[geometry_.index(i, j, k)]; }
  const T& at(int i, int j, int k) const { return data_[geometry_.index(i, j, k)]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  std::vector<T>& storage() { return data_; }
  const std::vector<T>& storage() const { return data_; }

 private:
  GridGeometry geometry_;
  std::vector<T> data_;
};

// Clamped trilinear interpolation at a world-space point. Coordinates outside
// the grid box are clamped to the nearest in-bounds position. Uses the
// a + t*(b - a) form so constant fields are reproduced exactly.
template <class T>
T trilinear_sample(const VoxelGrid<T>& grid, const Vec3& world_point) {
  const GridGeometry& g = grid.geometry();
  const Vec3 p = g.to_voxel(world_point);
  int base[3];
  double frac[3];
  for (int a = 0; a < 3; ++a) {
    const int n = g.dims[a];
    double c = p[a];
    if (!(c > 0.0)) c = 0.0;  // also maps NaN to the boundary
    if (c > n - 1) c = n - 1;
    if (n == 1) {
      base[a] = 0;
      frac[a] = 0.0;
      continue;
    }
    int i0 = static_cast<int>(std::floor(c));
    if (i0 > n - 2) i0 = n - 2;
    base[a] = i0;
    frac[a] = c - i0;
  }
  const int step[3] = {g.dims[0] > 1 ? 1 : 0, g.dims[1] > 1 ? 1 : 0, g.dims[2] > 1 ? 1 : 0};
  auto v = [&](int di, int dj, int dk) -> const T& {
    return grid.at(base[0] + di * step[0], base[1] + dj * step[1], base[2] + dk * step[2]);
  };
  auto lerp = [](const T& a, const T& b, double t) -> T { return a + (b - a) * t; };
  const T c00 = lerp(v(0, 0, 0), v(1, 0, 0), frac[0]);
  const T c10 = lerp(v(0, 1, 0), v(1, 1, 0), frac[0]);
  const T c01 = lerp(v(0, 0, 1), v(1, 0, 1), frac[0]);
  const T c11 = lerp(v(0, 1, 1), v(1, 1, 1), frac[0]);
  const T c0 = lerp(c00, c10, frac[1]);
  const T c1 = lerp(c01, c11, frac[1]);
  return lerp(c0, c1, frac[2]);
}

// Normalised 1-D Gaussian taps for offsets -radius..radius, radius =
// ceil(3*sigma/spacing).
std::vector<double> gaussian_kernel(double sigma_mm, double spacing_mm);

// Separable Gaussian convolution with edge replication. sigma == 0 returns the
// input unchanged; negative sigma is an argument error.
template <class T>
VoxelGrid<T> gaussian_smooth(const VoxelGrid<T>& field, double sigma_mm);

}  // namespace corsurf
