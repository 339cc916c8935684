// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "json.hpp"
#include "pipeline/config.hpp"

namespace corsurf {

inline constexpr const char* kToolName = "corsurf";
inline constexpr const char* kToolVersion = "0.1.0";

// Each run writes its outputs into config.output and returns the manifest it
// wrote to manifest.json. Wall-times go to timings.json next to it so that the
// manifest itself is reproducible. Errors carry the name of the failing stage.

// labels -> lh_pial, rh_pial, lh_white, rh_white meshes.
nlohmann::ordered_json run_init_surfaces(const PipelineConfig& config);
// input meshes + svfs -> deformed meshes.
nlohmann::ordered_json run_deform(const PipelineConfig& config);
// input (predicted) vs reference meshes -> metrics.json, metrics.csv.
nlohmann::ordered_json run_metrics(const PipelineConfig& config);
// input meshes -> collisions.json with self and pairwise reports.
nlohmann::ordered_json run_collide(const PipelineConfig& config);
// Synthetic labels.nii.gz and optional svf_<k>.nii.gz.
nlohmann::ordered_json run_phantom(const PipelineConfig& config);
// reports -> aggregate.json, aggregate.csv.
nlohmann::ordered_json run_report(const PipelineConfig& config);

// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace corsurf
