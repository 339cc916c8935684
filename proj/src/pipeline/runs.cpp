// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "pipeline/runs.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>

#include "common/parallel.hpp"
#include "common/random.hpp"
#include "deform/fields.hpp"
#include "pipeline/phantom.hpp"
#include "topology/topology_correct.hpp"
#include "volume/volume_io.hpp"

namespace corsurf {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class StageClock {
 public:
  template <class F>
  auto run(const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        record(name, start);
      } else {
        auto out = body();
        record(name, start);
        return out;
      }
    } catch (Error& e) {
      if (e.stage().empty()) e.set_stage(name);
      throw;
    } catch (const std::bad_alloc&) {
      throw Error(ErrorCategory::kInternal, "out of memory", name);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCategory::kFormat, e.what(), name);
    } catch (const fs::filesystem_error& e) {
      throw Error(ErrorCategory::kIo, e.what(), name);
    } catch (const std::exception& e) {
      throw Error(ErrorCategory::kInternal, e.what(), name);
    }
  }

  ordered_json to_json() const { return timings_; }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    timings_[name] = timings_.value(name, 0.0) + d.count();
  }
  ordered_json timings_ = ordered_json::object();
};

std::string mesh_path(const std::string& dir, const std::string& id, const std::string& format) {
  return (fs::path(dir) / (id + "." + format)).string();
}

void prepare_output(const PipelineConfig& config) {
  validate_config(config);
  set_thread_count(config.threads);
  std::error_code ec;
  fs::create_directories(config.output, ec);
  require(!ec && fs::is_directory(config.output), ErrorCategory::kIo,
          "cannot create output directory " + config.output);
}

ordered_json manifest_header(const PipelineConfig& config, const char* command) {
  ordered_json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = command;
  m["config"] = to_json(config);
  return m;
}

void finish(const PipelineConfig& config, const ordered_json& manifest, const StageClock& clock) {
  write_file_atomic((fs::path(config.output) / "manifest.json").string(), manifest.dump(2) + "\n");
  ordered_json t;
  t["command"] = manifest.at("command");
  t["seconds"] = clock.to_json();
  write_file_atomic((fs::path(config.output) / "timings.json").string(), t.dump(2) + "\n");
}

std::string find_mesh(const std::string& dir, const std::string& id) {
  for (const char* ext : {"ply", "obj"}) {
    const std::string p = mesh_path(dir, id, ext);
    if (fs::exists(p)) return p;
  }
  return {};
}

std::array<TriangleMesh, 4> load_surface_set(const std::string& dir, ErrorCategory missing) {
  require(!dir.empty(), ErrorCategory::kArgument, "no mesh directory given");
  std::array<TriangleMesh, 4> meshes;
  for (int s = 0; s < 4; ++s) {
    const std::string path = find_mesh(dir, kSurfaceIds[s]);
    if (path.empty()) {
      fail(missing, "missing mesh " + std::string(kSurfaceIds[s]) + " in " + dir +
                        "; expected lh_pial, rh_pial, lh_white, rh_white (.ply or .obj)");
    }
    meshes[s] = load_mesh(path);
  }
  return meshes;
}

ordered_json surface_summary(const TriangleMesh& mesh) {
  const MeshDiagnostics d = diagnostics(mesh);
  ordered_json j;
  j["vertices"] = d.vertex_count;
  j["faces"] = d.face_count;
  j["euler_characteristic"] = d.euler_characteristic;
  j["genus"] = d.genus ? ordered_json(*d.genus) : ordered_json(nullptr);
  j["closed"] = d.is_closed;
  j["oriented"] = d.is_oriented;
  return j;
}

ordered_json collision_json(const std::array<TriangleMesh, 4>& meshes, bool all_pairs) {
  ordered_json out = ordered_json::array();
  const std::size_t count = all_pairs ? kSurfacePairs.size() : kDefaultPairCount;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [a, b] = kSurfacePairs[i];
    out.push_back(to_json(mesh_pair_intersections(meshes[a], meshes[b], kSurfaceIds[a], kSurfaceIds[b])));
  }
  return out;
}

ScalarField surface_field(const LabelVolume& labels, Hemisphere h, bool pial, double sigma) {
  const BinaryMask mask = largest_component(build_mask(labels, pial ? pial_labels(h) : white_labels(h)), 18);
  const ScalarField sdf = gaussian_smooth(signed_distance(mask), sigma);
  return topology_correct(sdf).corrected;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCategory::kIo, "cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    require(static_cast<bool>(out), ErrorCategory::kIo, "write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  require(!ec, ErrorCategory::kIo, "cannot move " + tmp + " to " + path + ": " + ec.message());
}

ordered_json run_init_surfaces(const PipelineConfig& config) {
  StageClock clock;
  clock.run("config", [&] {
    require(!config.labels.empty(), ErrorCategory::kArgument, "init-surfaces needs a label volume (labels)");
    prepare_output(config);
  });
  const LabelVolume labels = clock.run("load_labels", [&] {
    LabelVolume l = load_label_volume(config.labels);
    validate_labels(l);
    return l;
  });
  std::array<ScalarField, 4> fields;
  clock.run("signed_distance", [&] {
    fields[kLhPial] = surface_field(labels, Hemisphere::kLeft, true, config.sdf_sigma_mm);
    fields[kRhPial] = surface_field(labels, Hemisphere::kRight, true, config.sdf_sigma_mm);
    fields[kLhWhite] = surface_field(labels, Hemisphere::kLeft, false, config.sdf_sigma_mm);
    fields[kRhWhite] = surface_field(labels, Hemisphere::kRight, false, config.sdf_sigma_mm);
  });
  const ExtractionResult result = clock.run("adaptive_threshold_extraction", [&] {
    return adaptive_threshold_extraction(fields[kLhPial], fields[kRhPial], fields[kLhWhite], fields[kRhWhite],
                                         config.extraction);
  });

  ordered_json m = manifest_header(config, "init-surfaces");
  clock.run("write_meshes", [&] {
    ordered_json surfaces;
    for (int s = 0; s < 4; ++s) {
      const MeshDiagnostics d = diagnostics(result.meshes[s]);
      require(d.genus && *d.genus == 0 && d.component_count == 1, ErrorCategory::kTopology,
              std::string(kSurfaceIds[s]) + " is not a single genus-0 surface");
      const std::string path = mesh_path(config.output, kSurfaceIds[s], config.mesh_format);
      save_mesh(result.meshes[s], path);
      ordered_json j = surface_summary(result.meshes[s]);
      j["file"] = fs::path(path).filename().string();
      surfaces[kSurfaceIds[s]] = j;
    }
    m["lambda_pial"] = result.lambda_pial;
    m["lambda_white"] = result.lambda_white;
    m["pial_adjustments"] = result.pial_adjustments;
    m["white_adjustments"] = result.white_adjustments;
    m["surfaces"] = surfaces;
    ordered_json reports = ordered_json::array();
    for (const auto& r : result.reports) reports.push_back(to_json(r));
    m["collisions"] = reports;
    m["warnings"] = ordered_json::array();
  });
  clock.run("manifest", [&] { finish(config, m, clock); });
  return m;
}

ordered_json run_deform(const PipelineConfig& config) {
  StageClock clock;
  clock.run("config", [&] {
    require(!config.input.empty(), ErrorCategory::kArgument, "deform needs an input mesh directory (input)");
    require(!config.svfs.empty(), ErrorCategory::kArgument, "deform needs at least one velocity field (svfs)");
    prepare_output(config);
  });
  const auto meshes = clock.run("load_meshes", [&] { return load_surface_set(config.input, ErrorCategory::kIo); });
  const auto svfs = clock.run("load_svfs", [&] {
    std::vector<VelocityField> out;
    for (const auto& p : config.svfs) {
      require(fs::exists(p), ErrorCategory::kIo, "velocity field not found: " + p);
      out.push_back(load_velocity_field(p));
    }
    return out;
  });
  MultiscaleResult result = clock.run("multiscale_deform", [&] {
    return multiscale_deform(std::vector<TriangleMesh>(meshes.begin(), meshes.end()), svfs, config.integration_steps,
                             config.svf_sigma_mm);
  });
  std::array<TriangleMesh, 4> warped;
  for (int s = 0; s < 4; ++s) {
    warped[s] = std::move(result.meshes[s]);
    quantize_to_float(warped[s]);
  }

  ordered_json m = manifest_header(config, "deform");
  clock.run("verify", [&] {
    ordered_json surfaces;
    for (int s = 0; s < 4; ++s) {
      ordered_json j = surface_summary(warped[s]);
      j["sif_percent"] = self_intersection_fraction(warped[s]).percent;
      j["file"] = kSurfaceIds[s] + std::string(".") + config.mesh_format;
      surfaces[kSurfaceIds[s]] = j;
    }
    m["integration_steps"] = config.integration_steps;
    m["svf_sigma_mm"] = config.svf_sigma_mm;
    m["min_jacobian"] = result.min_jacobian;
    m["surfaces"] = surfaces;
    m["collisions"] = collision_json(warped, config.all_pairs);
    m["warnings"] = result.warnings;
  });
  clock.run("write_meshes", [&] {
    for (int s = 0; s < 4; ++s) save_mesh(warped[s], mesh_path(config.output, kSurfaceIds[s], config.mesh_format));
  });
  clock.run("manifest", [&] { finish(config, m, clock); });
  return m;
}

ordered_json run_metrics(const PipelineConfig& config) {
  StageClock clock;
  clock.run("config", [&] {
    require(!config.input.empty(), ErrorCategory::kArgument, "metrics needs predicted meshes (input)");
    require(!config.reference.empty(), ErrorCategory::kArgument, "metrics needs reference meshes (reference)");
    prepare_output(config);
  });
  std::vector<NamedMesh> predicted, reference;
  clock.run("load_meshes", [&] {
    const auto p = load_surface_set(config.input, ErrorCategory::kArgument);
    const auto r = load_surface_set(config.reference, ErrorCategory::kArgument);
    for (int s = 0; s < 4; ++s) {
      predicted.emplace_back(kSurfaceIds[s], p[s]);
      reference.emplace_back(kSurfaceIds[s], r[s]);
    }
  });
  const MetricsReport report = clock.run("mesh_loss", [&] {
    MetricsOptions options;
    options.weights = config.weights;
    options.samples = config.samples;
    options.seed = config.seed;
    options.hausdorff_percentile = config.hausdorff_percentile;
    options.all_pairs = config.all_pairs;
    return mesh_loss(predicted, reference, options);
  });
  ordered_json m = manifest_header(config, "metrics");
  clock.run("write_report", [&] {
    const ordered_json j = to_json(report);
    write_file_atomic((fs::path(config.output) / "metrics.json").string(), j.dump(2) + "\n");
    write_file_atomic((fs::path(config.output) / "metrics.csv").string(), to_csv(report));
    m["metrics"] = j;
  });
  clock.run("manifest", [&] { finish(config, m, clock); });
  return m;
}

ordered_json run_collide(const PipelineConfig& config) {
  StageClock clock;
  clock.run("config", [&] {
    require(!config.input.empty(), ErrorCategory::kArgument, "collide needs an input mesh directory (input)");
    prepare_output(config);
  });
  const auto meshes = clock.run("load_meshes", [&] { return load_surface_set(config.input, ErrorCategory::kIo); });
  ordered_json m = manifest_header(config, "collide");
  clock.run("collide", [&] {
    ordered_json self;
    for (int s = 0; s < 4; ++s) {
      const SelfIntersectionResult r = self_intersection_fraction(meshes[s]);
      self[kSurfaceIds[s]] = {{"percent", r.percent}, {"faces", r.faces}};
    }
    ordered_json c;
    c["self_intersection"] = self;
    c["pairs"] = collision_json(meshes, config.all_pairs);
    write_file_atomic((fs::path(config.output) / "collisions.json").string(), c.dump(2) + "\n");
    m["collisions"] = c;
  });
  clock.run("manifest", [&] { finish(config, m, clock); });
  return m;
}

ordered_json run_phantom(const PipelineConfig& config) {
  StageClock clock;
  clock.run("config", [&] { prepare_output(config); });
  const Phantom phantom = clock.run("phantom", [&] { return make_phantom(config.phantom, config.seed); });
  ordered_json m = manifest_header(config, "phantom");
  clock.run("write_volumes", [&] {
    const std::string labels_path = (fs::path(config.output) / "labels.nii.gz").string();
    save_label_volume(phantom.labels, labels_path);
    m["gap_mm"] = phantom.gap_mm;
    m["labels"] = "labels.nii.gz";
    ordered_json svfs = ordered_json::array();
    for (int k = 0; k < config.phantom.svf_count; ++k) {
      const std::string name = "svf_" + std::to_string(k) + ".nii.gz";
      const VelocityField v = band_limited_velocity(phantom.labels.grid.geometry(),
                                                    derive_seed(config.seed, 1000 + static_cast<std::uint64_t>(k)),
                                                    config.phantom.svf_amplitude_mm);
      save_velocity_field(v, (fs::path(config.output) / name).string());
      svfs.push_back(name);
    }
    m["svfs"] = svfs;
  });
  clock.run("manifest", [&] { finish(config, m, clock); });
  return m;
}

ordered_json run_report(const PipelineConfig& config) {
  StageClock clock;
  clock.run("config", [&] {
    require(!config.reports.empty(), ErrorCategory::kArgument, "report needs at least one manifest or metrics file");
    prepare_output(config);
  });
  const auto inputs = clock.run("load_reports", [&] {
    std::vector<std::pair<std::string, nlohmann::json>> out;
    for (const auto& p : config.reports) {
      std::ifstream in(p);
      require(static_cast<bool>(in), ErrorCategory::kIo, "cannot open " + p);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCategory::kFormat, p + ": invalid JSON (" + e.what() + ")");
      }
      out.emplace_back(p, std::move(j));
    }
    return out;
  });
  const auto rows = clock.run("aggregate", [&] { return aggregate_reports(inputs); });
  ordered_json m = manifest_header(config, "report");
  clock.run("write_report", [&] {
    const ordered_json j = to_json(rows);
    write_file_atomic((fs::path(config.output) / "aggregate.json").string(), j.dump(2) + "\n");
    write_file_atomic((fs::path(config.output) / "aggregate.csv").string(), to_csv(rows));
    m["aggregate"] = j;
  });
  clock.run("manifest", [&] { finish(config, m, clock); });
  return m;
}

}  // namespace corsurf
