// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "volume/labels.hpp"

namespace corsurf {

struct TopologyCorrectionResult {
  ScalarField corrected;
  std::size_t modified_voxel_count = 0;
  std::size_t seed = 0;  // linear index of the starting voxel
};

// Region-growing march from the global minimum. Voxels are accepted in
// ascending value order as long as they are simple with respect to the region
// grown so far; voxels that are not simple wait until a later acceptance makes
// them simple and then receive a value just above that acceptance. Every
// sublevel set of the result is therefore a digital ball, and its marching
// cubes surface is a sphere.
//
// fg_connectivity selects the foreground adjacency (18 or 26; background is
// 6). The default of 18 matches the adjacency the marching cubes table
// realises, so the genus guarantee carries over to extracted meshes.
//
// Throws kDegenerate if no voxel is negative.
TopologyCorrectionResult topology_correct(const ScalarField& sdf, int fg_connectivity = 18);

}  // namespace corsurf
