// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "collision/adaptive_extraction.hpp"

namespace corsurf {
namespace {

std::string reports_json(const std::vector<IntersectionReport>& reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : reports) j.push_back(to_json(r));
  return j.dump();
}

}  // namespace

void validate_extraction_config(const ExtractionConfig& c) {
  require(c.pial_step < 0.0 && c.wm_step < 0.0, ErrorCategory::kArgument, "iso-value steps must be negative");
  require(c.wm_offset <= 0.0, ErrorCategory::kArgument, "white offset must not be positive");
  require(c.max_iterations >= 1, ErrorCategory::kArgument, "max_iterations must be at least 1");
  require(c.smoothing_iterations >= 0, ErrorCategory::kArgument, "smoothing iterations must be non-negative");
  require(c.smoothing_step > 0.0 && c.smoothing_step <= 1.0, ErrorCategory::kArgument,
          "smoothing step must be in (0, 1]");
  require(std::isfinite(c.lambda_pial_init), ErrorCategory::kArgument, "initial pial iso-value must be finite");
}

TriangleMesh extract_surface(const ScalarField& field, double lambda, const ExtractionConfig& config) {
  TriangleMesh mesh = laplacian_smooth(marching_cubes(field, lambda), config.smoothing_iterations,
                                       config.smoothing_step);
  quantize_to_float(mesh);
  return mesh;
}

ExtractionResult adaptive_threshold_extraction(const ScalarField& pial_lh, const ScalarField& pial_rh,
                                               const ScalarField& white_lh, const ScalarField& white_rh,
                                               const ExtractionConfig& config) {
  validate_extraction_config(config);
  ExtractionResult result;
  auto& m = result.meshes;
  auto name = [](int s) { return std::string(kSurfaceIds[s]); };

  for (int step = 0;; ++step) {
    // Computed from the step count so that iso-values do not drift.
    result.lambda_pial = config.lambda_pial_init + step * config.pial_step;
    m[kLhPial] = extract_surface(pial_lh, result.lambda_pial, config);
    m[kRhPial] = extract_surface(pial_rh, result.lambda_pial, config);
    const auto report = mesh_pair_intersections(m[kLhPial], m[kRhPial], name(kLhPial), name(kRhPial));
    if (report.clear()) {
      result.pial_adjustments = step;
      break;
    }
    if (step == config.max_iterations) {
      fail(ErrorCategory::kNonConvergence, "pial surfaces still collide after " + std::to_string(step) +
                                               " adjustments; last reports: " + reports_json({report}));
    }
  }

  for (int step = 0;; ++step) {
    result.lambda_white = result.lambda_pial + config.wm_offset + step * config.wm_step;
    m[kLhWhite] = extract_surface(white_lh, result.lambda_white, config);
    m[kRhWhite] = extract_surface(white_rh, result.lambda_white, config);
    std::vector<IntersectionReport> reports;
    bool clear = true;
    for (int w : {kLhWhite, kRhWhite})
      for (int other : {kLhPial, kRhPial, kLhWhite, kRhWhite}) {
        if (other == w || (w == kRhWhite && other == kLhWhite)) continue;
        reports.push_back(mesh_pair_intersections(m[w], m[other], name(w), name(other)));
        clear = clear && reports.back().clear();
      }
    if (clear) {
      result.white_adjustments = step;
      break;
    }
    if (step == config.max_iterations) {
      fail(ErrorCategory::kNonConvergence, "white surfaces still collide after " + std::to_string(step) +
                                               " adjustments; last reports: " + reports_json(reports));
    }
  }

  for (int s = 0; s < 4; ++s) {
    const MeshDiagnostics d = diagnostics(m[s]);
    require(d.is_closed && d.component_count == 1 && d.genus && *d.genus == 0, ErrorCategory::kTopology,
            name(s) + " is not a closed genus-0 surface (chi = " + std::to_string(d.euler_characteristic) +
                ", components = " + std::to_string(d.component_count) + ")");
  }
  for (const auto& [a, b] : kSurfacePairs) result.reports.push_back(mesh_pair_intersections(m[a], m[b], name(a), name(b)));
  return result;
}

}  // namespace corsurf
