// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "volume/labels.hpp"

namespace corsurf {

enum class VoxelType { kUInt8, kInt16, kFloat32 };

// Volume data decoded to doubles. Voxels are x-fastest; with components == 3
// the three values of a voxel are stored next to each other.
struct RawVolume {
  GridGeometry geometry;
  int components = 1;
  std::vector<double> data;
};

// Reads NIfTI-1 (.nii or .nii.gz) or the JSON raw-sidecar format (path ending
// in .json). Malformed headers raise kFormat.
RawVolume read_volume(const std::string& path);

// Writes NIfTI-1 (gzipped when the path ends in .gz) or, for .json paths, the
// raw sidecar header plus a .raw data file next to it.
void write_volume(const std::string& path, const RawVolume& volume, VoxelType type);

LabelVolume load_label_volume(const std::string& path);
void save_label_volume(const LabelVolume& labels, const std::string& path);

ScalarField load_scalar_field(const std::string& path);
void save_scalar_field(const ScalarField& field, const std::string& path);

}  // namespace corsurf
