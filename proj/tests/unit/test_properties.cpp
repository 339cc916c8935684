// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "collision/intersections.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"
#include "deform/fields.hpp"
#include "doctest.h"
#include "metrics/distances.hpp"
#include "oracles.hpp"
#include "pipeline/runs.hpp"
#include "test_util.hpp"
#include "topology/topology_correct.hpp"

using namespace corsurf;

namespace {

GridGeometry centred(int n, Vec3 spacing = {1, 1, 1}) {
  GridGeometry g;
  g.dims = {n, n, n};
  g.spacing = spacing;
  for (int a = 0; a < 3; ++a) g.origin[a] = -(n - 1) * spacing[a] / 2.0;
  return g;
}

BinaryMask random_mask(const GridGeometry& g, std::uint64_t seed, double p) {
  Rng rng(seed);
  BinaryMask m{VoxelGrid<std::uint8_t>(g, 0), {1}};
  for (std::size_t n = 0; n < m.grid.size(); ++n) m.grid[n] = rng.uniform() < p ? 1 : 0;
  return m;
}

// Smooth random field: a ball SDF plus low-frequency noise.
ScalarField blobby_field(const GridGeometry& g, std::uint64_t seed) {
  Rng rng(seed);
  ScalarField noise(g, 0.0);
  for (std::size_t n = 0; n < noise.size(); ++n) noise[n] = rng.uniform(-4.0, 4.0);
  noise = gaussian_smooth(noise, 1.5);
  ScalarField f(g, 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const Index3 c = g.coords(n);
    f[n] = norm(g.world(c[0], c[1], c[2])) - 6.0 + 6.0 * noise[n];
  }
  return f;
}

template <class F>
auto with_threads(int threads, F&& f) {
  set_thread_count(threads);
  auto out = f();
  set_thread_count(1);
  return out;
}

}  // namespace

TEST_CASE("signed distance sign matches the mask") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const GridGeometry g = centred(14, {1.0, 0.8, 1.2});
    const BinaryMask m = random_mask(g, seed, 0.1 + 0.1 * static_cast<double>(seed));
    const ScalarField sdf = signed_distance(m);
    for (std::size_t n = 0; n < sdf.size(); ++n) {
      if (m.grid[n]) CHECK(sdf[n] < 0.0);
      else CHECK(sdf[n] > 0.0);
    }
  }
}

TEST_CASE("topology correction on random smooth fields") {
  const GridGeometry g = centred(24);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    CAPTURE(seed);
    const ScalarField f = blobby_field(g, seed);
    const TopologyCorrectionResult r = topology_correct(f);
    for (std::size_t n = 0; n < f.size(); ++n) CHECK(r.corrected[n] >= f[n]);
    CHECK(topology_correct(r.corrected).modified_voxel_count == 0);
    double lo = r.corrected[0];
    for (double v : r.corrected.storage()) lo = std::min(lo, v);
    VoxelGrid<std::uint8_t> previous(g, 0);
    for (int t = 0; t < 20; ++t) {
      const double iso = lo + (0.0 - lo) * (t + 1) / 20.0;
      VoxelGrid<std::uint8_t> below(g, 0);
      for (std::size_t n = 0; n < f.size(); ++n) below[n] = r.corrected[n] < iso ? 1 : 0;
      for (std::size_t n = 0; n < f.size(); ++n) CHECK(below[n] >= previous[n]);
      previous = below;
      CHECK(oracle::count_components(below, 26) == 1);
      const MeshDiagnostics d = diagnostics(marching_cubes(r.corrected, iso));
      CHECK(d.euler_characteristic == 2);
      CHECK(d.component_count == 1);
    }
  }
}

TEST_CASE("warping keeps mesh combinatorics") {
  const GridGeometry g = centred(24);
  const TriangleMesh torus = make_torus(24, 12, 6.0, 2.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TriangleMesh w = warp_mesh(torus, scaling_and_squaring(band_limited_velocity(g, seed, 2.0)));
    const MeshDiagnostics a = diagnostics(torus), b = diagnostics(w);
    CHECK(a.vertex_count == b.vertex_count);
    CHECK(a.edge_count == b.edge_count);
    CHECK(a.face_count == b.face_count);
    CHECK(a.euler_characteristic == b.euler_characteristic);
    CHECK(w.faces == torus.faces);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const GridGeometry g = centred(20, {1.0, 0.9, 1.1});
  const BinaryMask mask = random_mask(g, 42, 0.3);
  auto sdf = [&] { return signed_distance(mask).storage(); };
  CHECK(with_threads(1, sdf) == with_threads(3, sdf));
  auto smooth = [&] { return gaussian_smooth(signed_distance(mask), 1.0).storage(); };
  CHECK(with_threads(1, smooth) == with_threads(4, smooth));

  const VelocityField v = band_limited_velocity(centred(20), 3, 2.0);
  auto flow = [&] { return scaling_and_squaring(smooth_svf(v, 1.0)).displacement.storage(); };
  CHECK(with_threads(1, flow) == with_threads(3, flow));
  auto jac = [&] { return jacobian_determinant(scaling_and_squaring(v)).storage(); };
  CHECK(with_threads(1, jac) == with_threads(2, jac));

  PointCloud p, q;
  Rng rng(5);
  for (int i = 0; i < 3000; ++i) p.points.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)});
  for (int i = 0; i < 2500; ++i) q.points.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)});
  auto dist = [&] {
    const SurfaceDistances d = surface_distances(p, q);
    return std::vector<double>{d.chamfer_mm2, d.assd_mm, d.hausdorff_mm};
  };
  CHECK(with_threads(1, dist) == with_threads(4, dist));

  TriangleMesh dented = make_icosphere(3, 3.0);
  for (int i = 0; i < 6; ++i) dented.vertices[static_cast<std::size_t>(i * 7)] = dented.vertices[static_cast<std::size_t>(i * 7)] * -1.2;
  auto self = [&] { return self_intersection_fraction(dented).faces; };
  CHECK(!with_threads(1, self).empty());
  CHECK(with_threads(1, self) == with_threads(3, self));
  const TriangleMesh other = make_icosphere(3, 3.0, {2, 0, 0});
  auto pair = [&] {
    const IntersectionReport r = mesh_pair_intersections(dented, other);
    return std::make_pair(r.face_ids_a, r.face_ids_b);
  };
  CHECK(with_threads(1, pair) == with_threads(3, pair));
}

TEST_CASE("pipeline outputs do not depend on the thread count") {
  testutil::TempDir root("threads");
  PipelineConfig p;
  p.output = root.file("phantom");
  p.seed = 8;
  p.phantom.dims = 40;
  p.phantom.svf_count = 1;
  run_phantom(p);
  for (int threads : {1, 3}) {
    PipelineConfig c;
    c.labels = root.file("phantom/labels.nii.gz");
    c.output = root.file("init" + std::to_string(threads));
    c.threads = threads;
    run_init_surfaces(c);
    PipelineConfig d;
    d.input = c.output;
    d.svfs = {root.file("phantom/svf_0.nii.gz")};
    d.output = root.file("deform" + std::to_string(threads));
    d.threads = threads;
    run_deform(d);
  }
  for (const char* id : {"lh_pial", "rh_pial", "lh_white", "rh_white"}) {
    const std::string f = std::string("/") + id + ".ply";
    CHECK(testutil::read_bytes(root.file("init1") + f) == testutil::read_bytes(root.file("init3") + f));
    CHECK(testutil::read_bytes(root.file("deform1") + f) == testutil::read_bytes(root.file("deform3") + f));
  }
  auto strip = [](nlohmann::json m) {
    m["config"].erase("threads");
    m["config"].erase("output");
    m["config"].erase("input");
    return m;
  };
  const auto a = nlohmann::json::parse(testutil::read_bytes(root.file("deform1/manifest.json")));
  const auto b = nlohmann::json::parse(testutil::read_bytes(root.file("deform3/manifest.json")));
  CHECK(strip(a) == strip(b));
}
