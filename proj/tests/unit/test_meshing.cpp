// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <map>
#include <numeric>

#include "common/random.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace corsurf;

namespace {

GridGeometry centred(int n, double spacing = 1.0) {
  GridGeometry g;
  g.dims = {n, n, n};
  g.spacing = {spacing, spacing, spacing};
  const double o = -(n - 1) * spacing / 2.0;
  g.origin = {o, o, o};
  return g;
}

template <class F>
ScalarField field_from(const GridGeometry& g, F f) {
  ScalarField out(g, 0.0);
  for (std::size_t n = 0; n < g.voxel_count(); ++n) {
    const Index3 c = g.coords(n);
    out[n] = f(g.world(c[0], c[1], c[2]));
  }
  return out;
}

// Directed edge use counts: closed and oriented means every directed edge
// appears once and its reverse once.
bool closed_and_oriented(const TriangleMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const Face& f : m.faces)
    for (int e = 0; e < 3; ++e) ++directed[{f[e], f[(e + 1) % 3]}];
  for (const auto& [edge, count] : directed) {
    if (count != 1) return false;
    const auto it = directed.find({edge.second, edge.first});
    if (it == directed.end() || it->second != 1) return false;
  }
  return true;
}

double signed_volume(const TriangleMesh& m) {
  double v = 0.0;
  for (const Face& f : m.faces)
    v += dot(m.vertices[f[0]], cross(m.vertices[f[1]], m.vertices[f[2]])) / 6.0;
  return v;
}

}  // namespace

TEST_CASE("marching cubes sphere") {
  const GridGeometry g = centred(32);
  const Vec3 c{0.21, -0.37, 0.13};
  const ScalarField f = field_from(g, [&](const Vec3& p) { return norm(p - c) - 10.0; });
  const TriangleMesh m = marching_cubes(f, 0.0);
  double worst = 0.0;
  for (const Vec3& v : m.vertices) worst = std::max(worst, std::abs(norm(v - c) - 10.0));
  CHECK(worst <= 0.6);
  const MeshDiagnostics d = diagnostics(m);
  CHECK(d.is_closed);
  CHECK(d.is_oriented);
  CHECK(d.genus == 0);
  CHECK(closed_and_oriented(m));
  // Outward normals: positive enclosed volume close to the ball volume.
  CHECK(signed_volume(m) == doctest::Approx(4.0 / 3.0 * M_PI * 1000.0).epsilon(0.03));
}

TEST_CASE("marching cubes plane and torus") {
  const GridGeometry g = centred(16);
  const ScalarField ramp = field_from(g, [](const Vec3& p) { return p.x; });
  const TriangleMesh plane = marching_cubes(ramp, 0.25, GridBoundary::kOpen);
  CHECK_FALSE(plane.faces.empty());
  for (const Vec3& v : plane.vertices) CHECK(std::abs(v.x - 0.25) <= 1e-6);
  // Capped at the boundary: a closed slab.
  const MeshDiagnostics slab = diagnostics(marching_cubes(ramp, 0.25));
  CHECK(slab.is_closed);
  CHECK(slab.genus == 0);
  const GridGeometry gt = centred(30);
  const TriangleMesh torus = marching_cubes(
      field_from(gt, [](const Vec3& p) { return std::hypot(std::hypot(p.x, p.y) - 8.0, p.z) - 3.0; }), 0.0);
  const MeshDiagnostics d = diagnostics(torus);
  CHECK(d.euler_characteristic == 0);
  CHECK(d.genus == 1);
}

TEST_CASE("marching cubes on random fields is closed, oriented and consistent") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    Rng rng(trial);
    GridGeometry g = centred(5 + static_cast<int>(rng.below(6)));
    g.spacing = {rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5)};
    ScalarField f(g, 0.0);
    for (std::size_t n = 0; n < f.size(); ++n) f[n] = rng.uniform(-1, 1);
    f[0] = -2.0;
    f[1] = 2.0;
    const double iso = rng.uniform(-0.3, 0.3);
    CAPTURE(trial);
    CHECK(closed_and_oriented(marching_cubes(f, iso)));
    // Vertices lie on grid edges where the linear interpolant equals iso.
    const TriangleMesh m = marching_cubes(f, iso, GridBoundary::kOpen);
    for (const Vec3& v : m.vertices) {
      const double h = g.max_spacing() * 1e-3;
      Vec3 grad;
      for (int a = 0; a < 3; ++a) {
        Vec3 e;
        e[a] = h;
        grad[a] = (trilinear_sample(f, v + e) - trilinear_sample(f, v - e)) / (2 * h);
      }
      CHECK(std::abs(trilinear_sample(f, v) - iso) <= 0.1 * norm(grad) * g.max_spacing() + 1e-12);
    }
  }
}

TEST_CASE("marching cubes errors") {
  const GridGeometry g = centred(6);
  const ScalarField f = field_from(g, [](const Vec3& p) { return p.x; });
  CHECK(testutil::category_of([&] { marching_cubes(f, 100.0); }) == ErrorCategory::kEmptySurface);
  CHECK(testutil::category_of([&] { marching_cubes(f, -100.0); }) == ErrorCategory::kEmptySurface);
}

TEST_CASE("reference shapes") {
  const MeshDiagnostics t = diagnostics(make_tetrahedron());
  CHECK(t.vertex_count == 4);
  CHECK(t.edge_count == 6);
  CHECK(t.face_count == 4);
  CHECK(t.euler_characteristic == 2);
  CHECK(t.genus == 0);
  CHECK(diagnostics(make_icosahedron()).genus == 0);
  CHECK(diagnostics(make_icosahedron()).face_count == 20);
  const MeshDiagnostics torus = diagnostics(make_torus(8, 8, 3.0, 1.0));
  CHECK(torus.euler_characteristic == 0);
  CHECK(torus.genus == 1);
  CHECK(closed_and_oriented(make_icosphere(3)));
}

TEST_CASE("diagnostics on open and disconnected meshes") {
  TriangleMesh tri{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}}, {{0, 1, 2}}};
  const MeshDiagnostics d = diagnostics(tri);
  CHECK_FALSE(d.is_closed);
  CHECK_FALSE(d.genus.has_value());
  CHECK(d.isolated_vertex_count == 1);
  const TriangleMesh two = merge_meshes({make_icosahedron(), make_icosahedron(1.0, {5, 0, 0})});
  const MeshDiagnostics dd = diagnostics(two);
  CHECK(dd.component_count == 2);
  CHECK(dd.euler_characteristic == 4);
  CHECK(dd.genus == 0);
}

TEST_CASE("diagnostics are invariant under vertex and face permutations") {
  const TriangleMesh base = merge_meshes({make_icosphere(2), make_torus(10, 6, 4.0, 1.0)});
  const MeshDiagnostics ref = diagnostics(base);
  Rng rng(8);
  for (int t = 0; t < 5; ++t) {
    std::vector<std::uint32_t> perm(base.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    TriangleMesh m;
    m.vertices.resize(base.vertices.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m.vertices[perm[i]] = base.vertices[i];
    for (const Face& f : base.faces) m.faces.push_back({perm[f[0]], perm[f[1]], perm[f[2]]});
    for (std::size_t i = m.faces.size() - 1; i > 0; --i) std::swap(m.faces[i], m.faces[rng.below(i + 1)]);
    const MeshDiagnostics d = diagnostics(m);
    CHECK(d.euler_characteristic == ref.euler_characteristic);
    CHECK(d.genus == ref.genus);
    CHECK(d.component_count == ref.component_count);
    CHECK(d.edge_count == ref.edge_count);
  }
}

TEST_CASE("validate_mesh rejects bad faces") {
  TriangleMesh m{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 3}}};
  CHECK(testutil::category_of([&] { validate_mesh(m); }) == ErrorCategory::kArgument);
  m.faces = {{0, 1, 1}};
  CHECK(testutil::category_of([&] { validate_mesh(m); }) == ErrorCategory::kArgument);
}

TEST_CASE("laplacian smoothing") {
  const TriangleMesh sphere = make_icosphere(3, 5.0);
  CHECK(laplacian_smooth(sphere, 0, 0.5).vertices == sphere.vertices);
  const TriangleMesh s = laplacian_smooth(sphere, 3, 0.5);
  for (std::size_t i = 0; i < s.vertices.size(); ++i) CHECK(norm(s.vertices[i]) <= norm(sphere.vertices[i]) + 1e-12);
  // All icosahedron vertices are equivalent, so they move radially.
  const TriangleMesh ico = make_icosahedron(5.0);
  const TriangleMesh si = laplacian_smooth(ico, 4, 0.5);
  for (std::size_t i = 0; i < ico.vertices.size(); ++i) {
    const Vec3 a = ico.vertices[i], b = si.vertices[i];
    CHECK(norm(b) < norm(a));
    CHECK(norm(cross(a, b)) <= 1e-12 * norm(a) * norm(b));
  }
  CHECK(diagnostics(s).genus == 0);

  TriangleMesh noisy = make_icosphere(3, 5.0);
  Rng rng(4);
  for (Vec3& v : noisy.vertices) v += Vec3{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
  auto rms_dev = [](const TriangleMesh& m) {
    double mean = 0.0;
    for (const Vec3& v : m.vertices) mean += norm(v);
    mean /= m.vertices.size();
    double ss = 0.0;
    for (const Vec3& v : m.vertices) ss += (norm(v) - mean) * (norm(v) - mean);
    return std::sqrt(ss / m.vertices.size());
  };
  const TriangleMesh smoothed = laplacian_smooth(noisy, 10, 0.5);
  CHECK(rms_dev(smoothed) < rms_dev(noisy));
  const MeshDiagnostics a = diagnostics(noisy), b = diagnostics(smoothed);
  CHECK(a.vertex_count == b.vertex_count);
  CHECK(a.edge_count == b.edge_count);
  CHECK(a.face_count == b.face_count);
  CHECK(a.euler_characteristic == b.euler_characteristic);
  CHECK(testutil::category_of([&] { laplacian_smooth(noisy, -1, 0.5); }) == ErrorCategory::kArgument);
}

TEST_CASE("surface sampling") {
  const TriangleMesh tri{{{0, 0, 0}, {2, 0, 0}, {0, 1, 1}}, {{0, 1, 2}}};
  const PointCloud pc = sample_surface_points(tri, 1000, 3);
  REQUIRE(pc.points.size() == 1000);
  const Vec3 n = cross(tri.vertices[1], tri.vertices[2]);
  for (const Vec3& p : pc.points) {
    CHECK(std::abs(dot(p, n)) <= 1e-12);
    const double b1 = p.x / 2.0, b2 = p.y;
    CHECK(b1 >= -1e-12);
    CHECK(b2 >= -1e-12);
    CHECK(b1 + b2 <= 1.0 + 1e-12);
    CHECK(p.y == doctest::Approx(p.z));
  }
  CHECK(sample_surface_points(tri, 50, 3).points == sample_surface_points(tri, 50, 3).points);

  // Area ratio 3:1.
  const TriangleMesh pair{{{0, 0, 0}, {3, 0, 0}, {0, 1, 0}, {10, 0, 0}, {11, 0, 0}, {10, 1, 0}},
                          {{0, 1, 2}, {3, 4, 5}}};
  const PointCloud s = sample_surface_points(pair, 40000, 17);
  std::size_t big = 0;
  for (const Vec3& p : s.points) big += p.x < 5.0 ? 1 : 0;
  const double expect = 30000.0, sd = std::sqrt(40000.0 * 0.75 * 0.25);
  CHECK(std::abs(static_cast<double>(big) - expect) <= 3.0 * sd);

  const PointCloud sphere = sample_surface_points(make_icosphere(4), 150000, 5);
  Vec3 mean;
  for (const Vec3& p : sphere.points) mean += p;
  mean = mean / static_cast<double>(sphere.points.size());
  CHECK(norm(mean) < 0.05);
}

TEST_CASE("sampling follows face areas (chi-square)") {
  TriangleMesh m = make_icosphere(1, 3.0);
  Rng rng(12);
  for (Vec3& v : m.vertices) v = v * rng.uniform(0.7, 1.3);
  const std::size_t n = 150000;
  const PointCloud pc = sample_surface_points(m, n, 99);
  // Assign samples to faces by the smallest plane+barycentric residual.
  std::vector<double> areas(m.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < m.faces.size(); ++f) total += areas[f] = face_area(m, f);
  std::vector<std::size_t> counts(m.faces.size(), 0);
  for (const Vec3& p : pc.points) {
    std::size_t best = 0;
    double best_err = 1e300;
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
      const Vec3 a = m.vertices[m.faces[f][0]], b = m.vertices[m.faces[f][1]], c = m.vertices[m.faces[f][2]];
      const double s = norm(cross(b - p, c - p)) + norm(cross(c - p, a - p)) + norm(cross(a - p, b - p));
      const double err = std::abs(s / 2.0 - areas[f]);
      if (err < best_err) best_err = err, best = f;
    }
    ++counts[best];
  }
  double chi2 = 0.0;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const double e = n * areas[f] / total;
    chi2 += (counts[f] - e) * (counts[f] - e) / e;
  }
  // 79 degrees of freedom; the p = 0.001 critical value is about 124.8.
  CHECK(chi2 < 124.8);
}

TEST_CASE("PLY and OBJ round trips") {
  testutil::TempDir dir("mesh");
  TriangleMesh m = make_icosphere(2, 7.3, {1.1, -2.2, 3.3});
  quantize_to_float(m);
  save_mesh(m, dir.file("a.ply"));
  const TriangleMesh p = load_mesh(dir.file("a.ply"));
  CHECK(p.vertices == m.vertices);
  CHECK(p.faces == m.faces);
  save_mesh(p, dir.file("b.ply"));
  CHECK(testutil::read_bytes(dir.file("a.ply")) == testutil::read_bytes(dir.file("b.ply")));
  save_mesh(m, dir.file("a.obj"));
  const TriangleMesh o = load_mesh(dir.file("a.obj"));
  CHECK(o.vertices == m.vertices);
  CHECK(o.faces == m.faces);
}

TEST_CASE("ASCII PLY with extra properties") {
  testutil::TempDir dir("ascii");
  testutil::write_text(dir.file("t.ply"),
                       "ply\nformat ascii 1.0\ncomment x\nelement vertex 3\nproperty float nx\n"
                       "property float x\nproperty float y\nproperty float z\nelement face 1\n"
                       "property list uchar int vertex_indices\nend_header\n"
                       "9 0 0 0\n9 1 0 0\n9 0 1 0\n3 0 1 2\n");
  const TriangleMesh m = load_mesh(dir.file("t.ply"));
  REQUIRE(m.vertices.size() == 3);
  CHECK(m.vertices[1] == Vec3{1, 0, 0});
  CHECK(m.faces[0] == Face{0, 1, 2});
}

TEST_CASE("mesh file errors") {
  testutil::TempDir dir("bad");
  CHECK(testutil::category_of([&] { load_mesh(dir.file("none.ply")); }) == ErrorCategory::kIo);
  testutil::write_text(dir.file("x.ply"), "nope\n");
  CHECK(testutil::category_of([&] { load_mesh(dir.file("x.ply")); }) == ErrorCategory::kFormat);
  testutil::write_text(dir.file("q.ply"),
                       "ply\nformat ascii 1.0\nelement vertex 4\nproperty float x\nproperty float y\n"
                       "property float z\nelement face 1\nproperty list uchar int vertex_indices\nend_header\n"
                       "0 0 0\n1 0 0\n0 1 0\n1 1 0\n4 0 1 2 3\n");
  CHECK(testutil::category_of([&] { load_mesh(dir.file("q.ply")); }) == ErrorCategory::kFormat);
  testutil::write_text(dir.file("r.obj"), "v 0 0 0\nv 1 0 0\nf 1 2 7\n");
  CHECK(testutil::category_of([&] { load_mesh(dir.file("r.obj")); }) == ErrorCategory::kFormat);
  CHECK(testutil::category_of([&] { save_mesh(make_tetrahedron(), dir.file("t.stl")); }) ==
        ErrorCategory::kArgument);
}
