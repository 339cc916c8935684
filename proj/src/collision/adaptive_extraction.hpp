// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "collision/intersections.hpp"

namespace corsurf {

enum SurfaceIndex { kLhPial = 0, kRhPial = 1, kLhWhite = 2, kRhWhite = 3 };
inline constexpr std::array<const char*, 4> kSurfaceIds = {"lh_pial", "rh_pial", "lh_white", "rh_white"};

// The four pairs reported by default (left/right pial, left/right white,
// pial/white per hemisphere) followed by the two cross-hemisphere pairs.
inline constexpr std::array<std::pair<int, int>, 6> kSurfacePairs = {{
    {kLhPial, kRhPial},
    {kLhWhite, kRhWhite},
    {kLhPial, kLhWhite},
    {kRhPial, kRhWhite},
    {kLhPial, kRhWhite},
    {kRhPial, kLhWhite},
}};
inline constexpr std::size_t kDefaultPairCount = 4;

struct ExtractionConfig {
  double lambda_pial_init = -0.1;
  double pial_step = -0.05;
  double wm_offset = -0.1;
  double wm_step = -0.1;
  int max_iterations = 20;
  int smoothing_iterations = 5;
  double smoothing_step = 0.5;
};

void validate_extraction_config(const ExtractionConfig& config);

struct ExtractionResult {
  std::array<TriangleMesh, 4> meshes;  // indexed by SurfaceIndex
  double lambda_pial = 0.0;
  double lambda_white = 0.0;
  int pial_adjustments = 0;
  int white_adjustments = 0;
  std::vector<IntersectionReport> reports;  // all six pairs of the final meshes
};

// Marching cubes at `lambda`, Laplacian smoothing, then rounding to float so
// that collision checks see exactly what gets written to disk.
TriangleMesh extract_surface(const ScalarField& field, double lambda, const ExtractionConfig& config);

// Lowers the shared pial iso-value until the two pial surfaces are disjoint,
// then lowers the shared white iso-value (starting wm_offset below the pial
// one) until each white surface is disjoint from all other surfaces. Pial
// meshes are not re-extracted during the white loop.
//
// Throws kNonConvergence (message carries the last reports) after
// max_iterations adjustments in either loop, and kTopology if a final mesh is
// not a closed genus-0 surface.
ExtractionResult adaptive_threshold_extraction(const ScalarField& pial_lh, const ScalarField& pial_rh,
                                               const ScalarField& white_lh, const ScalarField& white_rh,
                                               const ExtractionConfig& config = {});

}  // namespace corsurf
