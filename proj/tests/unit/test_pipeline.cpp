// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>

#include "collision/intersections.hpp"
#include "deform/fields.hpp"
#include "doctest.h"
#include "pipeline/phantom.hpp"
#include "pipeline/runs.hpp"
#include "test_util.hpp"
#include "volume/volume_io.hpp"

using namespace corsurf;
namespace fs = std::filesystem;

namespace {

const char* const kIds[] = {"lh_pial", "rh_pial", "lh_white", "rh_white"};

PipelineConfig phantom_config(const std::string& out, std::uint64_t seed, int dims = 48) {
  PipelineConfig c;
  c.output = out;
  c.seed = seed;
  c.phantom.dims = dims;
  return c;
}

// Phantom labels plus initial surfaces under root/phantom and root/init.
void prepare_surfaces(const testutil::TempDir& root, std::uint64_t seed, int svf_count = 0, double amp = 1.0) {
  PipelineConfig p = phantom_config(root.file("phantom"), seed);
  p.phantom.svf_count = svf_count;
  p.phantom.svf_amplitude_mm = amp;
  run_phantom(p);
  PipelineConfig i;
  i.labels = root.file("phantom/labels.nii.gz");
  i.output = root.file("init");
  run_init_surfaces(i);
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorCategory::kInternal, "no error thrown");
}

// Two hemispheres that meet along a 3D checkerboard of 4-voxel blocks.
LabelVolume touching_hemispheres() {
  GridGeometry g;
  g.dims = {32, 32, 32};
  g.spacing = {1, 1, 1};
  g.origin = {-15.5, -15.5, -15.5};
  LabelVolume l{VoxelGrid<std::uint8_t>(g, 0)};
  for (int k = 6; k < 26; ++k)
    for (int j = 6; j < 26; ++j)
      for (int i = 4; i < 28; ++i) {
        const int x = i - 16;
        bool left = x < 0;
        if (x >= -2 && x < 2) left = (j / 4 + k / 4 + (x + 2) / 4) % 2 == 0;
        const bool core = (left ? (i >= 7 && i <= 10) : (i >= 21 && i <= 24)) && j >= 9 && j < 23 && k >= 9 && k < 23;
        l.grid.at(i, j, k) = static_cast<std::uint8_t>(left ? (core ? 1 : 2) : (core ? 5 : 6));
      }
  return l;
}

}  // namespace

TEST_CASE("config merging") {
  PipelineConfig c;
  merge_config(c, nlohmann::json::parse(R"({"seed": 9, "extraction": {"max_iterations": 3}, "phantom": {"gap_mm": 0.5}})"));
  CHECK(c.seed == 9);
  CHECK(c.extraction.max_iterations == 3);
  CHECK(c.extraction.pial_step == -0.05);
  REQUIRE(c.phantom.gap_mm.has_value());
  CHECK(*c.phantom.gap_mm == 0.5);
  merge_config(c, nlohmann::json::parse(R"({"phantom": {"gap_mm": null}})"));
  CHECK(!c.phantom.gap_mm.has_value());

  // A manifest is accepted as a config source.
  PipelineConfig from_manifest;
  merge_config(from_manifest, nlohmann::json{{"tool", "corsurf"}, {"config", nlohmann::json::parse(to_json(c).dump())}});
  CHECK(to_json(from_manifest) == to_json(c));

  for (const char* bad : {R"({"sede": 1})", R"({"extraction": {"lambda": 1}})", R"({"seed": "x"})", R"([1])",
                          R"({"weights": 3})"}) {
    CAPTURE(bad);
    PipelineConfig d;
    CHECK(testutil::category_of([&] { merge_config(d, nlohmann::json::parse(bad)); }) == ErrorCategory::kArgument);
  }
  PipelineConfig v;
  v.mesh_format = "stl";
  CHECK(testutil::category_of([&] { validate_config(v); }) == ErrorCategory::kArgument);
  v = {};
  v.threads = 0;
  CHECK(testutil::category_of([&] { validate_config(v); }) == ErrorCategory::kArgument);
  v = {};
  v.integration_steps = 0;
  CHECK(testutil::category_of([&] { validate_config(v); }) == ErrorCategory::kArgument);

  testutil::TempDir dir("config");
  CHECK(testutil::category_of([&] { load_config_file(dir.file("absent.json")); }) == ErrorCategory::kIo);
  testutil::write_text(dir.file("broken.json"), "{\"seed\": ");
  CHECK(testutil::category_of([&] { load_config_file(dir.file("broken.json")); }) == ErrorCategory::kFormat);
  testutil::write_text(dir.file("ok.json"), R"({"samples": 1234})");
  CHECK(load_config_file(dir.file("ok.json")).samples == 1234);
}

TEST_CASE("phantom generator") {
  PhantomConfig pc;
  pc.dims = 40;
  const Phantom a = make_phantom(pc, 3), b = make_phantom(pc, 3), c = make_phantom(pc, 4);
  CHECK(a.labels.grid.storage() == b.labels.grid.storage());
  CHECK(a.gap_mm == b.gap_mm);
  CHECK(a.labels.grid.storage() != c.labels.grid.storage());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double gap = make_phantom(pc, seed).gap_mm;
    CHECK(gap >= 0.2);
    CHECK(gap <= 2.0);
  }
  pc.gap_mm = 1.25;
  CHECK(make_phantom(pc, 0).gap_mm == 1.25);
  validate_labels(a.labels);
  std::array<std::size_t, 9> counts{};
  for (std::uint8_t v : a.labels.grid.storage()) ++counts[v];
  for (int label = 0; label <= 8; ++label) CHECK(counts[label] > 0);
}

TEST_CASE("init-surfaces end to end") {
  testutil::TempDir root("init");
  prepare_surfaces(root, 11);
  const auto manifest = nlohmann::json::parse(testutil::read_bytes(root.file("init/manifest.json")));
  CHECK(manifest["tool"] == "corsurf");
  CHECK(manifest["command"] == "init-surfaces");
  CHECK(manifest["lambda_pial"].get<double>() <= -0.1);
  CHECK(manifest["lambda_white"].get<double>() <= manifest["lambda_pial"].get<double>() - 0.1 + 1e-12);
  for (const char* id : kIds) {
    const TriangleMesh m = load_mesh(root.file(std::string("init/") + id + ".ply"));
    const MeshDiagnostics d = diagnostics(m);
    CHECK(d.is_closed);
    CHECK(d.component_count == 1);
    REQUIRE(d.genus.has_value());
    CHECK(*d.genus == 0);
    CHECK(manifest["surfaces"][id]["genus"] == 0);
  }
  REQUIRE(manifest["collisions"].size() == 6);
  for (const auto& c : manifest["collisions"]) {
    CHECK(c["percent_a"] == 0.0);
    CHECK(c["percent_b"] == 0.0);
    CHECK(c["contacts"] == 0);
  }
  const auto timings = nlohmann::json::parse(testutil::read_bytes(root.file("init/timings.json")));
  CHECK(timings["seconds"].contains("signed_distance"));
  CHECK(!manifest.contains("seconds"));

  // Re-running from the manifest's own config reproduces every output byte.
  PipelineConfig again;
  merge_config(again, manifest);
  again.output = root.file("again");
  run_init_surfaces(again);
  for (const char* id : kIds)
    CHECK(testutil::read_bytes(root.file(std::string("init/") + id + ".ply")) ==
          testutil::read_bytes(root.file(std::string("again/") + id + ".ply")));
  auto m2 = nlohmann::json::parse(testutil::read_bytes(root.file("again/manifest.json")));
  m2["config"]["output"] = manifest["config"]["output"];
  CHECK(m2 == manifest);
}

TEST_CASE("init-surfaces failures") {
  testutil::TempDir root("initfail");
  GridGeometry g;
  g.dims = {12, 12, 12};
  LabelVolume empty{VoxelGrid<std::uint8_t>(g, 0)};
  save_label_volume(empty, root.file("empty.nii.gz"));
  PipelineConfig c;
  c.labels = root.file("empty.nii.gz");
  c.output = root.file("out");
  const Error e = error_of([&] { run_init_surfaces(c); });
  CHECK(e.category() == ErrorCategory::kDegenerate);
  CHECK(e.stage() == "signed_distance");

  c.labels = root.file("absent.nii.gz");
  CHECK(testutil::category_of([&] { run_init_surfaces(c); }) == ErrorCategory::kIo);
  c.labels.clear();
  CHECK(testutil::category_of([&] { run_init_surfaces(c); }) == ErrorCategory::kArgument);

  // Pial surfaces that still collide after one tiny lowering step.
  save_label_volume(touching_hemispheres(), root.file("touch.nii.gz"));
  c.labels = root.file("touch.nii.gz");
  c.extraction.pial_step = -0.001;
  c.extraction.max_iterations = 1;
  const Error n = error_of([&] { run_init_surfaces(c); });
  CHECK(n.category() == ErrorCategory::kNonConvergence);
  CHECK(n.stage() == "adaptive_threshold_extraction");
}

TEST_CASE("touching hemispheres lower the pial threshold") {
  testutil::TempDir root("touch");
  save_label_volume(touching_hemispheres(), root.file("touch.nii.gz"));
  PipelineConfig c;
  c.labels = root.file("touch.nii.gz");
  c.output = root.file("out");
  const auto m = run_init_surfaces(c);
  CHECK(m["lambda_pial"].get<double>() < -0.1);
  CHECK(m["pial_adjustments"].get<int>() >= 1);
  for (const auto& r : m["collisions"]) CHECK(r["contacts"] == 0);
}

TEST_CASE("deform") {
  testutil::TempDir root("deform");
  prepare_surfaces(root, 5, 2, 1.0);
  const GridGeometry g = load_velocity_field(root.file("phantom/svf_0.nii.gz")).grid.geometry();
  save_velocity_field(constant_velocity(g, {}), root.file("zero.nii.gz"));
  save_velocity_field(constant_velocity(g, {0.5, -0.25, 1.0}), root.file("shift.nii.gz"));

  PipelineConfig c;
  c.input = root.file("init");
  c.svfs = {root.file("zero.nii.gz")};
  c.output = root.file("zero");
  run_deform(c);
  for (const char* id : kIds)
    CHECK(testutil::read_bytes(root.file(std::string("init/") + id + ".ply")) ==
          testutil::read_bytes(root.file(std::string("zero/") + id + ".ply")));

  c.svfs = {root.file("shift.nii.gz")};
  c.output = root.file("shift");
  run_deform(c);
  for (const char* id : kIds) {
    const TriangleMesh a = load_mesh(root.file(std::string("init/") + id + ".ply"));
    const TriangleMesh b = load_mesh(root.file(std::string("shift/") + id + ".ply"));
    REQUIRE(a.vertices.size() == b.vertices.size());
    CHECK(a.faces == b.faces);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.vertices.size(); ++i)
      worst = std::max(worst, norm(b.vertices[i] - a.vertices[i] - Vec3{0.5, -0.25, 1.0}));
    CHECK(worst < 1e-5);
  }

  c.svfs = {root.file("phantom/svf_0.nii.gz"), root.file("phantom/svf_1.nii.gz")};
  c.output = root.file("random");
  const auto m = run_deform(c);
  CHECK(m["warnings"].empty());
  CHECK(m["min_jacobian"].size() == 2);
  for (const char* id : kIds) {
    CHECK(m["surfaces"][id]["genus"] == 0);
    CHECK(m["surfaces"][id]["sif_percent"] == 0.0);
  }
  for (const auto& r : m["collisions"]) CHECK(r["contacts"] == 0);

  c.svfs = {root.file("absent.nii.gz")};
  CHECK(testutil::category_of([&] { run_deform(c); }) == ErrorCategory::kIo);
  c.svfs = {root.file("zero.nii.gz")};
  fs::remove(root.file("zero/rh_white.ply"));
  c.input = root.file("zero");
  c.output = root.file("never");
  CHECK(testutil::category_of([&] { run_deform(c); }) == ErrorCategory::kIo);
}

TEST_CASE("metrics, collide and report") {
  testutil::TempDir root("metrics");
  fs::create_directories(root.file("pred"));
  fs::create_directories(root.file("ref"));
  const Vec3 centres[] = {{-3, 0, 0}, {3, 0, 0}, {-3, 0, 0}, {3, 0, 0}};
  const double radii[] = {2.0, 2.0, 1.0, 1.0};
  for (int s = 0; s < 4; ++s) {
    const TriangleMesh m = make_icosphere(4, radii[s], centres[s]);
    save_mesh(m, root.file(std::string("pred/") + kIds[s] + ".ply"));
    save_mesh(m, root.file(std::string("ref/") + kIds[s] + ".obj"));
  }
  PipelineConfig c;
  c.input = root.file("pred");
  c.reference = root.file("ref");
  c.output = root.file("self");
  const auto m = run_metrics(c);
  for (const auto& s : m["metrics"]["surfaces"]) {
    CHECK(s["chamfer_mm2"].get<double>() < 1e-2);
    CHECK(s["sif_percent"] == 0.0);
  }
  CHECK(fs::exists(root.file("self/metrics.json")));
  CHECK(fs::exists(root.file("self/metrics.csv")));

  // A vertex pushed through the opposite side of the sphere.
  TriangleMesh dented = make_icosphere(3, 2.0, centres[0]);
  dented.vertices[0] = centres[0] + (centres[0] - dented.vertices[0]) * 1.3;
  save_mesh(dented, root.file("pred/lh_pial.ply"));
  c.output = root.file("dent1");
  const auto d1 = run_metrics(c);
  c.output = root.file("dent2");
  const auto d2 = run_metrics(c);
  CHECK(d1["metrics"]["surfaces"][0]["sif_percent"].get<double>() > 0.0);
  CHECK(!d1["metrics"]["surfaces"][0]["sif_faces"].empty());
  CHECK(d1["metrics"]["surfaces"][0]["sif_faces"] == d2["metrics"]["surfaces"][0]["sif_faces"]);

  c.output = root.file("collide");
  const auto col = run_collide(c);
  CHECK(col["collisions"]["pairs"].size() == 4);
  c.all_pairs = true;
  CHECK(run_collide(c)["collisions"]["pairs"].size() == 6);

  PipelineConfig r;
  r.reports = {root.file("self/manifest.json"), root.file("dent1/metrics.json")};
  r.output = root.file("report");
  const auto rep = run_report(r);
  CHECK(fs::exists(root.file("report/aggregate.csv")));
  for (const auto& row : rep["aggregate"]["rows"]) CHECK(row["n"] == 2);
  r.reports.clear();
  CHECK(testutil::category_of([&] { run_report(r); }) == ErrorCategory::kArgument);

  fs::remove(root.file("ref/rh_white.obj"));
  c.output = root.file("missing");
  const Error e = error_of([&] { run_metrics(c); });
  CHECK(e.category() == ErrorCategory::kArgument);
  CHECK(std::string(e.what()).find("lh_pial, rh_pial, lh_white, rh_white") != std::string::npos);
}
