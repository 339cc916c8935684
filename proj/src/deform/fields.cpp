// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "deform/fields.hpp"

#include "volume/volume_io.hpp"

namespace corsurf {

DeformationField identity_deformation(const GridGeometry& geometry) {
  return {VoxelGrid<Vec3>(geometry, Vec3{})};
}

VelocityField load_velocity_field(const std::string& path) {
  RawVolume raw = read_volume(path);
  require(raw.components == 3, ErrorCategory::kFormat, path + ": velocity field needs 3 components per voxel");
  VelocityField v{VoxelGrid<Vec3>(raw.geometry, Vec3{})};
  for (std::size_t n = 0; n < v.grid.size(); ++n) {
    const Vec3 c{raw.data[3 * n], raw.data[3 * n + 1], raw.data[3 * n + 2]};
    require(std::isfinite(c.x) && std::isfinite(c.y) && std::isfinite(c.z), ErrorCategory::kValidation,
            path + ": non-finite velocity at voxel index " + std::to_string(n));
    v.grid[n] = c;
  }
  return v;
}

void save_velocity_field(const VelocityField& field, const std::string& path) {
  RawVolume raw{field.grid.geometry(), 3, std::vector<double>(3 * field.grid.size())};
  for (std::size_t n = 0; n < field.grid.size(); ++n)
    for (int c = 0; c < 3; ++c) raw.data[3 * n + c] = field.grid[n][c];
  write_volume(path, raw, VoxelType::kFloat32);
}

}  // namespace corsurf
