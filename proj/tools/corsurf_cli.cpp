// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
//
// corsurf command-line front end. Every failure prints one JSON object to
// stderr: {"error": {"category", "stage", "message"}}.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corsurf/corsurf.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> output;

  std::optional<std::string> labels, input, reference, mesh_format;
  std::vector<std::string> svfs, reports;
  std::optional<double> sdf_sigma, svf_sigma, hausdorff_percentile;
  std::optional<int> steps, max_iterations;
  std::optional<std::size_t> samples;
  std::optional<double> lambda_pial, pial_step, wm_offset, wm_step;
  bool all_pairs = false;

  std::optional<int> dims, svf_count;
  std::optional<double> spacing, gap, svf_amplitude;
};

int report_error(csurf_status status, const std::string& stage, const std::string& message) {
  json e;
  e["error"] = {{"category", csurf_status_name(status)}, {"stage", stage}, {"message", message}};
  std::cerr << e.dump() << std::endl;
  return csurf_status_exit_code(status);
}

int report_last_error(csurf_status status) {
  return report_error(status, csurf_last_error_stage(), csurf_last_error_message());
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json build_config(const Options& o, csurf_status& status) {
  json j = json::object();
  status = CSURF_OK;
  if (!o.config_path.empty()) {
    char* text = nullptr;
    status = csurf_config_load(o.config_path.c_str(), &text);
    if (status != CSURF_OK) return j;
    j = json::parse(text);
    csurf_string_free(text);
  }
  put(j, "seed", o.seed);
  put(j, "threads", o.threads);
  put(j, "output", o.output);
  put(j, "labels", o.labels);
  put(j, "input", o.input);
  put(j, "reference", o.reference);
  put(j, "mesh_format", o.mesh_format);
  if (!o.svfs.empty()) j["svfs"] = o.svfs;
  if (!o.reports.empty()) j["reports"] = o.reports;
  put(j, "sdf_sigma_mm", o.sdf_sigma);
  put(j, "svf_sigma_mm", o.svf_sigma);
  put(j, "hausdorff_percentile", o.hausdorff_percentile);
  put(j, "integration_steps", o.steps);
  put(j, "samples", o.samples);
  if (o.all_pairs) j["all_pairs"] = true;

  json e = j.value("extraction", json::object());
  put(e, "lambda_pial_init", o.lambda_pial);
  put(e, "pial_step", o.pial_step);
  put(e, "wm_offset", o.wm_offset);
  put(e, "wm_step", o.wm_step);
  put(e, "max_iterations", o.max_iterations);
  if (!e.empty()) j["extraction"] = e;

  json p = j.value("phantom", json::object());
  put(p, "dims", o.dims);
  put(p, "spacing_mm", o.spacing);
  put(p, "gap_mm", o.gap);
  put(p, "svf_count", o.svf_count);
  put(p, "svf_amplitude_mm", o.svf_amplitude);
  if (!p.empty()) j["phantom"] = p;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cortical surface initialization, deformation and evaluation", "corsurf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(csurf_version()));
  Options o;
  app.add_option("--config", o.config_path, "JSON config file or a previous run manifest");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--output", o.output, "Output directory");

  using RunFn = csurf_status (*)(const char*, char**);
  std::vector<std::pair<CLI::App*, RunFn>> commands;

  auto* init = app.add_subcommand("init-surfaces", "Label volume to four collision-free genus-0 meshes");
  init->add_option("labels,--labels", o.labels, "Label volume (.nii, .nii.gz or raw + .json)");
  init->add_option("--mesh-format", o.mesh_format, "ply or obj");
  init->add_option("--sdf-sigma", o.sdf_sigma, "Signed distance smoothing sigma in mm");
  init->add_option("--lambda-pial", o.lambda_pial, "Initial pial threshold");
  init->add_option("--pial-step", o.pial_step, "Pial threshold step");
  init->add_option("--wm-offset", o.wm_offset, "White threshold offset from pial");
  init->add_option("--wm-step", o.wm_step, "White threshold step");
  init->add_option("--max-iterations", o.max_iterations, "Threshold adjustments before giving up");
  commands.emplace_back(init, csurf_run_init_surfaces);

  auto* deform = app.add_subcommand("deform", "Warp four meshes with a sequence of velocity fields");
  deform->add_option("--input", o.input, "Directory with lh_pial, rh_pial, lh_white, rh_white meshes");
  deform->add_option("--svf", o.svfs, "Velocity field, repeat for each level in order");
  deform->add_option("--steps", o.steps, "Scaling and squaring steps");
  deform->add_option("--svf-sigma", o.svf_sigma, "Velocity smoothing sigma in mm");
  deform->add_option("--mesh-format", o.mesh_format, "ply or obj");
  deform->add_flag("--all-pairs", o.all_pairs, "Include cross-hemisphere pial/white pairs");
  commands.emplace_back(deform, csurf_run_deform);

  auto* metrics = app.add_subcommand("metrics", "Compare predicted meshes against references");
  metrics->add_option("--input", o.input, "Predicted mesh directory");
  metrics->add_option("--reference", o.reference, "Reference mesh directory");
  metrics->add_option("--samples", o.samples, "Points sampled per surface");
  metrics->add_option("--hausdorff-percentile", o.hausdorff_percentile, "Percentile for the Hausdorff distance");
  metrics->add_flag("--all-pairs", o.all_pairs, "Include cross-hemisphere pial/white pairs");
  commands.emplace_back(metrics, csurf_run_metrics);

  auto* collide = app.add_subcommand("collide", "Self and pairwise intersection reports");
  collide->add_option("--input", o.input, "Mesh directory");
  collide->add_flag("--all-pairs", o.all_pairs, "Include cross-hemisphere pial/white pairs");
  commands.emplace_back(collide, csurf_run_collide);

  auto* phantom = app.add_subcommand("phantom", "Synthetic two-hemisphere label volume");
  phantom->add_option("--dims", o.dims, "Voxels per axis");
  phantom->add_option("--spacing", o.spacing, "Voxel size in mm");
  phantom->add_option("--gap", o.gap, "Interhemispheric gap in mm");
  phantom->add_option("--svf-count", o.svf_count, "Band-limited velocity fields to write");
  phantom->add_option("--svf-amplitude", o.svf_amplitude, "Largest velocity magnitude in mm");
  commands.emplace_back(phantom, csurf_run_phantom);

  auto* report = app.add_subcommand("report", "Aggregate metrics over runs");
  report->add_option("reports", o.reports, "Run manifests or metrics.json files");
  commands.emplace_back(report, csurf_run_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(CSURF_ERR_ARGUMENT, "cli", e.what());
  }

  csurf_status status = CSURF_OK;
  const json config = build_config(o, status);
  if (status != CSURF_OK) return report_last_error(status);
  for (const auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    char* manifest = nullptr;
    status = fn(config.dump().c_str(), &manifest);
    if (status != CSURF_OK) return report_last_error(status);
    std::cout << manifest << std::endl;
    csurf_string_free(manifest);
    return 0;
  }
  return report_error(CSURF_ERR_ARGUMENT, "cli", "no subcommand");
}
