// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collision/adaptive_extraction.hpp"
#include "json.hpp"
#include "metrics/report.hpp"

namespace corsurf {

struct PhantomConfig {
  int dims = 64;
  double spacing_mm = 1.0;
  std::optional<double> gap_mm;  // drawn from [0.2, 2] when unset
  int svf_count = 0;
  double svf_amplitude_mm = 1.0;
};

struct PipelineConfig {
  std::string labels;                // label volume for init-surfaces
  std::vector<std::string> svfs;     // velocity fields, applied in order
  std::string input;                 // directory with lh_pial.ply ... rh_white.ply
  std::string reference;             // reference mesh directory for metrics
  std::vector<std::string> reports;  // inputs for report
  std::string output = "corsurf_out";
  std::string mesh_format = "ply";
  std::uint64_t seed = 0;
  int threads = 1;
  double sdf_sigma_mm = 1.0;
  double svf_sigma_mm = 1.0;
  int integration_steps = 7;
  std::size_t samples = 150000;
  double hausdorff_percentile = 100.0;
  bool all_pairs = false;
  LossWeights weights;
  ExtractionConfig extraction;
  PhantomConfig phantom;
};

// Overlays the keys present in `j` onto `config`. Unknown keys and wrongly
// typed values raise kArgument. A run manifest is accepted too: its "config"
// object is used.
void merge_config(PipelineConfig& config, const nlohmann::json& j);

PipelineConfig load_config_file(const std::string& path);

// Full snapshot; merge_config(to_json(c)) reproduces c.
nlohmann::ordered_json to_json(const PipelineConfig& config);

void validate_config(const PipelineConfig& config);

}  // namespace corsurf
