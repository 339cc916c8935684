// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include "common/random.hpp"
#include "doctest.h"
#include "metrics/distances.hpp"
#include "metrics/kdtree.hpp"
#include "metrics/mesh_losses.hpp"
#include "metrics/report.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace corsurf;

namespace {

PointCloud random_cloud(std::uint64_t seed, std::size_t n, double extent = 10.0) {
  Rng rng(seed);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i)
    c.points.push_back({rng.uniform(-extent, extent), rng.uniform(-extent, extent), rng.uniform(-extent, extent)});
  return c;
}

// Points on a coarse integer lattice so exact ties occur.
PointCloud lattice_cloud(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i)
    c.points.push_back({static_cast<double>(rng.below(5)), static_cast<double>(rng.below(5)),
                        static_cast<double>(rng.below(5))});
  return c;
}

PointCloud transformed(const PointCloud& c, double s, const Vec3& axis, double angle, const Vec3& t) {
  const Vec3 k = axis / norm(axis);
  PointCloud out;
  for (const Vec3& p : c.points) {
    const Vec3 r = p * std::cos(angle) + cross(k, p) * std::sin(angle) + k * (dot(k, p) * (1.0 - std::cos(angle)));
    out.points.push_back(r * s + t);
  }
  return out;
}

TriangleMesh scaled(const TriangleMesh& m, double s) {
  TriangleMesh out = m;
  for (Vec3& v : out.vertices) v = v * s;
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<NamedMesh> four(const TriangleMesh& m) {
  return {{"lh_pial", m}, {"rh_pial", m}, {"lh_white", m}, {"rh_white", m}};
}

}  // namespace

TEST_CASE("k-d tree matches a linear scan") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointCloud ref = seed % 2 ? lattice_cloud(seed, 500) : random_cloud(seed, 500);
    const PointCloud query = seed % 2 ? lattice_cloud(seed + 50, 500) : random_cloud(seed + 50, 500);
    const auto got = nearest_neighbor_index(query, ref);
    REQUIRE(got.size() == query.points.size());
    for (std::size_t i = 0; i < query.points.size(); ++i) {
      const Neighbor want = oracle::nearest(ref.points, query.points[i]);
      CHECK(got[i].index == want.index);
      CHECK(got[i].squared_distance == want.squared_distance);
    }
  }
}

TEST_CASE("nearest neighbour basics") {
  PointCloud one;
  one.points = {{1, 2, 3}};
  const PointCloud q = random_cloud(3, 20);
  for (const Neighbor& n : nearest_neighbor_index(q, one)) CHECK(n.index == 0);
  const auto d = nearest_neighbor_index(q, one);
  for (std::size_t i = 0; i < q.points.size(); ++i) CHECK(d[i].squared_distance == squared_distance(q.points[i], {1, 2, 3}));

  const PointCloud self = random_cloud(4, 300);
  const auto s = nearest_neighbor_index(self, self);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].index == i);
    CHECK(s[i].squared_distance == 0.0);
  }
  // Duplicate points resolve to the first copy.
  PointCloud dup;
  dup.points = {{0, 0, 0}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1}};
  const auto dd = nearest_neighbor_index(dup, dup);
  CHECK(dd[2].index == 0);
  CHECK(dd[3].index == 1);
  CHECK(testutil::category_of([&] { nearest_neighbor_index(q, PointCloud{}); }) == ErrorCategory::kArgument);
}

TEST_CASE("analytic distance examples") {
  PointCloud o, x1, x3, two;
  o.points = {{0, 0, 0}};
  x1.points = {{1, 0, 0}};
  x3.points = {{3, 0, 0}};
  two.points = {{0, 0, 0}, {10, 0, 0}};
  CHECK(chamfer(o, x1) == 2.0);
  CHECK(assd(o, x3) == 3.0);
  CHECK(hausdorff(two, o) == 10.0);
  const PointCloud r = random_cloud(1, 100);
  CHECK(chamfer(r, r) == 0.0);
  CHECK(assd(r, r) == 0.0);
  CHECK(hausdorff(r, r) == 0.0);
  for (auto f : {chamfer, assd}) {
    CHECK(testutil::category_of([&] { f(PointCloud{}, r); }) == ErrorCategory::kArgument);
    CHECK(testutil::category_of([&] { f(r, PointCloud{}); }) == ErrorCategory::kArgument);
  }
  CHECK(testutil::category_of([&] { hausdorff(r, r, 0.0); }) == ErrorCategory::kArgument);
  CHECK(testutil::category_of([&] { hausdorff(r, r, 101.0); }) == ErrorCategory::kArgument);
}

TEST_CASE("distances match brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const PointCloud p = random_cloud(seed, 300), q = random_cloud(seed + 100, 250 + seed);
    CHECK(chamfer(p, q) == oracle::chamfer(p, q));
    CHECK(assd(p, q) == oracle::assd(p, q));
    CHECK(hausdorff(p, q) == oracle::hausdorff(p, q));
    for (double pct : {50.0, 90.0, 95.0}) CHECK(hausdorff(p, q, pct) == oracle::hausdorff(p, q, pct));
    const SurfaceDistances d = surface_distances(p, q, 95.0);
    CHECK(d.chamfer_mm2 == chamfer(p, q));
    CHECK(d.assd_mm == assd(p, q));
    CHECK(d.hausdorff_mm == hausdorff(p, q, 95.0));
  }
}

TEST_CASE("distance invariants") {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const PointCloud p = random_cloud(seed, 200), q = random_cloud(seed + 7, 180, 8.0);
    CHECK(chamfer(p, q) == chamfer(q, p));
    CHECK(assd(p, q) == assd(q, p));
    CHECK(hausdorff(p, q) == hausdorff(q, p));
    CHECK(assd(p, q) <= hausdorff(p, q));
    CHECK(chamfer(p, q) >= 0.0);

    const PointCloud tp = transformed(p, 1.0, {1, -2, 0.5}, 0.7, {3.5, -1.25, 40.0});
    const PointCloud tq = transformed(q, 1.0, {1, -2, 0.5}, 0.7, {3.5, -1.25, 40.0});
    CHECK(rel(chamfer(tp, tq), chamfer(p, q)) <= 1e-9);
    CHECK(rel(assd(tp, tq), assd(p, q)) <= 1e-9);
    CHECK(rel(hausdorff(tp, tq), hausdorff(p, q)) <= 1e-9);

    for (double s : {0.5, 2.0, 10.0}) {
      const PointCloud sp = transformed(p, s, {0, 0, 1}, 0.0, {}), sq = transformed(q, s, {0, 0, 1}, 0.0, {});
      CHECK(rel(chamfer(sp, sq), s * s * chamfer(p, q)) <= 1e-9);
      CHECK(rel(assd(sp, sq), s * assd(p, q)) <= 1e-9);
      CHECK(rel(hausdorff(sp, sq), s * hausdorff(p, q)) <= 1e-9);
    }
  }
}

TEST_CASE("chamfer vanishes exactly for equal sets") {
  const PointCloud p = random_cloud(5, 100);
  PointCloud shuffled;
  for (std::size_t i = p.points.size(); i-- > 0;) shuffled.points.push_back(p.points[i]);
  shuffled.points.push_back(p.points[3]);
  CHECK(chamfer(p, shuffled) == 0.0);
  PointCloud moved = p;
  moved.points[17][1] += 1e-6;
  CHECK(chamfer(p, moved) > 0.0);
}

TEST_CASE("edge loss") {
  CHECK(edge_loss(make_tetrahedron()) == doctest::Approx(1.0).epsilon(1e-15));
  const TriangleMesh ico = make_icosphere(3, 2.0);
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const Face& f : ico.faces)
    for (int e = 0; e < 3; ++e) edges.insert(std::minmax(f[e], f[(e + 1) % 3]));
  double sum = 0.0;
  for (const auto& [a, b] : edges) sum += squared_distance(ico.vertices[a], ico.vertices[b]);
  CHECK(std::abs(edge_loss(ico) - sum / static_cast<double>(edges.size())) <= 1e-12 * edge_loss(ico));
  for (double s : {0.5, 2.0, 10.0}) CHECK(rel(edge_loss(scaled(ico, s)), s * s * edge_loss(ico)) <= 1e-9);
  CHECK(testutil::category_of([] { edge_loss(TriangleMesh{}); }) == ErrorCategory::kArgument);
}

TEST_CASE("normal consistency") {
  TriangleMesh plane;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) plane.vertices.push_back({i * 1.0, j * 1.0, 0.0});
  for (std::uint32_t j = 0; j < 4; ++j)
    for (std::uint32_t i = 0; i < 4; ++i) {
      const std::uint32_t a = j * 5 + i;
      plane.faces.push_back({a, a + 1, a + 6});
      plane.faces.push_back({a, a + 6, a + 5});
    }
  CHECK(normal_consistency_loss(plane).loss == 0.0);
  CHECK(normal_consistency_loss(plane).pair_count == 40);

  TriangleMesh fold;
  fold.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  fold.faces = {{0, 1, 2}, {0, 3, 1}};
  const NormalConsistency f = normal_consistency_loss(fold);
  CHECK(f.pair_count == 1);
  CHECK(std::abs(f.loss - 1.0) < 1e-15);

  const TriangleMesh ico = make_icosphere(2, 3.0);
  const double base = normal_consistency_loss(ico).loss;
  TriangleMesh rotated = ico;
  const Vec3 k = Vec3{1, 1, 1} / std::sqrt(3.0);
  for (Vec3& v : rotated.vertices) v = v * std::cos(1.1) + cross(k, v) * std::sin(1.1) + k * (dot(k, v) * (1 - std::cos(1.1)));
  CHECK(std::abs(normal_consistency_loss(rotated).loss - base) <= 1e-12);
  for (double s : {0.5, 2.0, 10.0}) CHECK(rel(normal_consistency_loss(scaled(ico, s)).loss, base) <= 1e-9);

  TriangleMesh fin = fold;
  fin.vertices.push_back({0, -1, 0});
  fin.faces.push_back({0, 1, 4});
  CHECK(normal_consistency_loss(fin).skipped_edges == 1);
}

TEST_CASE("mesh loss") {
  const TriangleMesh sphere = make_icosphere(4, 1.0);
  MetricsOptions opt;
  opt.weights = {1.0, 0.0, 0.0};
  opt.seed = 7;
  const MetricsReport self = mesh_loss(four(sphere), four(sphere), opt);
  REQUIRE(self.surfaces.size() == 4);
  for (const SurfaceMetrics& s : self.surfaces) {
    CHECK(s.chamfer_mm2 < 1e-2);
    CHECK(s.sif_percent == 0.0);
    CHECK(s.assd_mm <= s.hausdorff_mm);
  }
  CHECK(self.surfaces[0].surface == "lh_pial");
  CHECK(self.surfaces[3].surface == "rh_white");
  CHECK(self.collisions.size() == 4);

  opt.weights = {0.0, 0.0, 0.0};
  opt.samples = 1000;
  CHECK(mesh_loss(four(sphere), four(sphere), opt).mesh_loss == 0.0);

  const TriangleMesh tet = make_tetrahedron();
  opt.weights = {0.0, 1.0, 0.0};
  CHECK(mesh_loss(four(tet), four(tet), opt).mesh_loss == doctest::Approx(4.0 * edge_loss(tet)).epsilon(1e-15));

  opt.weights = {1.0, 0.7, 0.7};
  const MetricsReport a = mesh_loss(four(sphere), four(scaled(sphere, 1.1)), opt);
  const MetricsReport b = mesh_loss(four(sphere), four(scaled(sphere, 1.1)), opt);
  CHECK(to_json(a).dump() == to_json(b).dump());
  opt.all_pairs = true;
  CHECK(mesh_loss(four(sphere), four(sphere), opt).collisions.size() == 6);

  auto three = four(sphere);
  three.pop_back();
  CHECK(testutil::category_of([&] { mesh_loss(three, four(sphere), opt); }) == ErrorCategory::kArgument);
  opt.samples = 0;
  CHECK(testutil::category_of([&] { mesh_loss(four(sphere), four(sphere), opt); }) == ErrorCategory::kArgument);
}

TEST_CASE("report serialization") {
  MetricsOptions opt;
  opt.samples = 500;
  const MetricsReport r = mesh_loss(four(make_icosphere(2)), four(make_icosphere(2, 1.2)), opt);
  const auto j = to_json(r);
  CHECK(j["schema_version"] == kMetricsSchemaVersion);
  CHECK(j["seed"] == 0);
  CHECK(j["surfaces"].size() == 4);
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("surface,metric,value\n", 0) == 0);
  CHECK(csv.find("lh_pial,chamfer_mm2,") != std::string::npos);
  CHECK(csv.find("all,mesh_loss,") != std::string::npos);
}

TEST_CASE("aggregation") {
  MetricsOptions opt;
  opt.samples = 400;
  const auto j1 = nlohmann::json::parse(to_json(mesh_loss(four(make_icosphere(2)), four(make_icosphere(2, 1.1)), opt)).dump());
  const auto j2 = nlohmann::json::parse(to_json(mesh_loss(four(make_icosphere(2)), four(make_icosphere(2, 1.3)), opt)).dump());

  const auto single = aggregate_reports({{"a.json", j1}});
  for (const AggregateRow& row : single) {
    CHECK(row.sd == 0.0);
    CHECK(row.n == 1);
  }
  const auto rows = aggregate_reports({{"a.json", j1}, {"b.json", nlohmann::json{{"metrics", j2}}}});
  bool found = false;
  for (const AggregateRow& row : rows) {
    if (row.surface != "lh_pial" || row.metric != "assd_mm") continue;
    found = true;
    const double x = j1["surfaces"][0]["assd_mm"], y = j2["surfaces"][0]["assd_mm"];
    CHECK(row.n == 2);
    CHECK(row.mean == doctest::Approx((x + y) / 2).epsilon(1e-15));
    CHECK(row.sd == doctest::Approx(std::abs(x - y) / std::sqrt(2.0)).epsilon(1e-12));
  }
  CHECK(found);
  CHECK(to_csv(rows).rfind("surface,metric,mean,sd,n\n", 0) == 0);

  nlohmann::json old = j1;
  old["schema_version"] = 0;
  try {
    aggregate_reports({{"a.json", j1}, {"old.json", old}});
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::kSchema);
    CHECK(std::string(e.what()).find("old.json") != std::string::npos);
  }
  CHECK(testutil::category_of([] { aggregate_reports({}); }) == ErrorCategory::kArgument);
  CHECK(testutil::category_of([] { aggregate_reports({{"x.json", nlohmann::json{{"a", 1}}}}); }) ==
        ErrorCategory::kSchema);
}
