// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "volume/voxel_grid.hpp"

namespace corsurf {

// Tissue classes of the nine-class segmentation. Hemisphere blocks are laid
// out as {white matter, cortex, amygdala-hippocampus, lateral ventricle}.
enum class Label : std::uint8_t {
  kBackground = 0,
  kLeftWhiteMatter = 1,
  kLeftCortex = 2,
  kLeftAmygdalaHippocampus = 3,
  kLeftVentricle = 4,
  kRightWhiteMatter = 5,
  kRightCortex = 6,
  kRightAmygdalaHippocampus = 7,
  kRightVentricle = 8,
};

inline constexpr int kMaxLabel = 8;

enum class Hemisphere { kLeft, kRight };

using LabelSet = std::vector<int>;

// Pial mask composition: white matter, cortex and lateral ventricle.
LabelSet pial_labels(Hemisphere h);
// White mask composition: white matter and lateral ventricle.
LabelSet white_labels(Hemisphere h);

struct LabelVolume {
  VoxelGrid<std::uint8_t> grid;
};

// Throws kValidation naming the first voxel whose label is outside 0..8.
void validate_labels(const LabelVolume& labels);

struct BinaryMask {
  VoxelGrid<std::uint8_t> grid;  // 0 or 1 per voxel
  LabelSet label_set;            // labels the mask was built from, sorted
};

using ScalarField = VoxelGrid<double>;

BinaryMask build_mask(const LabelVolume& labels, const LabelSet& label_set);

// Keeps only the component with the most voxels; ties go to the component
// whose first voxel has the smallest linear index. connectivity is 6, 18 or 26.
BinaryMask largest_component(const BinaryMask& mask, int connectivity = 26);

// Exact Euclidean signed distance in mm: inside voxels carry minus the
// distance to the nearest outside voxel centre, outside voxels the distance to
// the nearest inside voxel centre. Throws kDegenerate for all-true/all-false.
ScalarField signed_distance(const BinaryMask& mask);

// Squared Euclidean distance (mm^2) from every voxel to the nearest voxel with
// feature != 0; infinity when there are no feature voxels.
std::vector<double> squared_distance_transform(const GridGeometry& geometry, const std::vector<std::uint8_t>& feature);

// Neighbour offsets for 6/18/26 connectivity (excluding the centre).
const std::vector<Index3>& neighbor_offsets(int connectivity);

}  // namespace corsurf
