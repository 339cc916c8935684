// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "pipeline/config.hpp"

#include <fstream>

namespace corsurf {
namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& scope) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCategory::kArgument, "config key '" + scope + key + "' has the wrong type");
  }
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& scope) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    require(ok, ErrorCategory::kArgument, "unknown config key '" + scope + key + "'");
  }
}

void require_object(const nlohmann::json& j, const std::string& what) {
  require(j.is_object(), ErrorCategory::kArgument, what + " must be a JSON object");
}

}  // namespace

void merge_config(PipelineConfig& c, const nlohmann::json& input) {
  const nlohmann::json& j = input.is_object() && input.contains("config") && input.contains("tool") ? input.at("config")
                                                                                                     : input;
  require_object(j, "config");
  reject_unknown(j,
                 {"labels", "svfs", "input", "reference", "reports", "output", "mesh_format", "seed", "threads",
                  "sdf_sigma_mm", "svf_sigma_mm", "integration_steps", "samples", "hausdorff_percentile", "all_pairs",
                  "weights", "extraction", "phantom"},
                 "");
  read(j, "labels", c.labels, "");
  read(j, "svfs", c.svfs, "");
  read(j, "input", c.input, "");
  read(j, "reference", c.reference, "");
  read(j, "reports", c.reports, "");
  read(j, "output", c.output, "");
  read(j, "mesh_format", c.mesh_format, "");
  read(j, "seed", c.seed, "");
  read(j, "threads", c.threads, "");
  read(j, "sdf_sigma_mm", c.sdf_sigma_mm, "");
  read(j, "svf_sigma_mm", c.svf_sigma_mm, "");
  read(j, "integration_steps", c.integration_steps, "");
  read(j, "samples", c.samples, "");
  read(j, "hausdorff_percentile", c.hausdorff_percentile, "");
  read(j, "all_pairs", c.all_pairs, "");
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    require_object(w, "weights");
    reject_unknown(w, {"chamfer", "edge", "normal_consistency"}, "weights.");
    read(w, "chamfer", c.weights.chamfer, "weights.");
    read(w, "edge", c.weights.edge, "weights.");
    read(w, "normal_consistency", c.weights.normal, "weights.");
  }
  if (j.contains("extraction")) {
    const auto& e = j.at("extraction");
    require_object(e, "extraction");
    reject_unknown(e,
                   {"lambda_pial_init", "pial_step", "wm_offset", "wm_step", "max_iterations", "smoothing_iterations",
                    "smoothing_step"},
                   "extraction.");
    read(e, "lambda_pial_init", c.extraction.lambda_pial_init, "extraction.");
    read(e, "pial_step", c.extraction.pial_step, "extraction.");
    read(e, "wm_offset", c.extraction.wm_offset, "extraction.");
    read(e, "wm_step", c.extraction.wm_step, "extraction.");
    read(e, "max_iterations", c.extraction.max_iterations, "extraction.");
    read(e, "smoothing_iterations", c.extraction.smoothing_iterations, "extraction.");
    read(e, "smoothing_step", c.extraction.smoothing_step, "extraction.");
  }
  if (j.contains("phantom")) {
    const auto& p = j.at("phantom");
    require_object(p, "phantom");
    reject_unknown(p, {"dims", "spacing_mm", "gap_mm", "svf_count", "svf_amplitude_mm"}, "phantom.");
    read(p, "dims", c.phantom.dims, "phantom.");
    read(p, "spacing_mm", c.phantom.spacing_mm, "phantom.");
    if (p.contains("gap_mm")) {
      if (p.at("gap_mm").is_null()) {
        c.phantom.gap_mm.reset();
      } else {
        double gap = 0.0;
        read(p, "gap_mm", gap, "phantom.");
        c.phantom.gap_mm = gap;
      }
    }
    read(p, "svf_count", c.phantom.svf_count, "phantom.");
    read(p, "svf_amplitude_mm", c.phantom.svf_amplitude_mm, "phantom.");
  }
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCategory::kIo, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::kFormat, path + ": invalid JSON (" + e.what() + ")");
  }
  PipelineConfig c;
  merge_config(c, j);
  return c;
}

nlohmann::ordered_json to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["labels"] = c.labels;
  j["svfs"] = c.svfs;
  j["input"] = c.input;
  j["reference"] = c.reference;
  j["reports"] = c.reports;
  j["output"] = c.output;
  j["mesh_format"] = c.mesh_format;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["sdf_sigma_mm"] = c.sdf_sigma_mm;
  j["svf_sigma_mm"] = c.svf_sigma_mm;
  j["integration_steps"] = c.integration_steps;
  j["samples"] = c.samples;
  j["hausdorff_percentile"] = c.hausdorff_percentile;
  j["all_pairs"] = c.all_pairs;
  j["weights"] = {{"chamfer", c.weights.chamfer}, {"edge", c.weights.edge}, {"normal_consistency", c.weights.normal}};
  j["extraction"] = {{"lambda_pial_init", c.extraction.lambda_pial_init},
                     {"pial_step", c.extraction.pial_step},
                     {"wm_offset", c.extraction.wm_offset},
                     {"wm_step", c.extraction.wm_step},
                     {"max_iterations", c.extraction.max_iterations},
                     {"smoothing_iterations", c.extraction.smoothing_iterations},
                     {"smoothing_step", c.extraction.smoothing_step}};
  nlohmann::ordered_json p;
  p["dims"] = c.phantom.dims;
  p["spacing_mm"] = c.phantom.spacing_mm;
  p["gap_mm"] = c.phantom.gap_mm ? nlohmann::ordered_json(*c.phantom.gap_mm) : nlohmann::ordered_json(nullptr);
  p["svf_count"] = c.phantom.svf_count;
  p["svf_amplitude_mm"] = c.phantom.svf_amplitude_mm;
  j["phantom"] = p;
  return j;
}

void validate_config(const PipelineConfig& c) {
  validate_extraction_config(c.extraction);
  require(c.mesh_format == "ply" || c.mesh_format == "obj", ErrorCategory::kArgument,
          "mesh_format must be 'ply' or 'obj'");
  require(c.threads >= 1, ErrorCategory::kArgument, "threads must be at least 1");
  require(c.sdf_sigma_mm >= 0.0 && c.svf_sigma_mm >= 0.0, ErrorCategory::kArgument, "sigma must be non-negative");
  require(c.integration_steps >= 1, ErrorCategory::kArgument, "integration_steps must be at least 1");
  require(c.samples >= 1, ErrorCategory::kArgument, "samples must be at least 1");
  require(c.hausdorff_percentile > 0.0 && c.hausdorff_percentile <= 100.0, ErrorCategory::kArgument,
          "hausdorff_percentile must be in (0, 100]");
  require(!c.output.empty(), ErrorCategory::kArgument, "output directory must be set");
  require(c.phantom.dims >= 16, ErrorCategory::kArgument, "phantom dims must be at least 16");
  require(c.phantom.spacing_mm > 0.0, ErrorCategory::kArgument, "phantom spacing must be positive");
  require(!c.phantom.gap_mm || *c.phantom.gap_mm >= 0.0, ErrorCategory::kArgument, "phantom gap must be >= 0");
  require(c.phantom.svf_count >= 0, ErrorCategory::kArgument, "svf_count must be non-negative");
  require(c.phantom.svf_amplitude_mm >= 0.0, ErrorCategory::kArgument, "svf amplitude must be non-negative");
}

}  // namespace corsurf
