// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "common/random.hpp"
#include "meshing/triangle_mesh.hpp"

namespace corsurf {

void validate_mesh(const TriangleMesh& mesh) {
  const auto n = mesh.vertices.size();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    require(t[0] < n && t[1] < n && t[2] < n, ErrorCategory::kArgument,
            "face " + std::to_string(f) + " references a vertex out of range");
    require(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], ErrorCategory::kArgument,
            "face " + std::to_string(f) + " repeats a vertex index");
  }
}

std::vector<std::array<std::uint32_t, 2>> unique_edges(const TriangleMesh& mesh) {
  std::vector<std::array<std::uint32_t, 2>> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const Face& t : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const std::uint32_t a = t[e], b = t[(e + 1) % 3];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

MeshDiagnostics diagnostics(const TriangleMesh& mesh) {
  validate_mesh(mesh);
  MeshDiagnostics d;
  d.vertex_count = mesh.vertices.size();
  d.face_count = mesh.faces.size();

  std::vector<std::array<std::uint32_t, 2>> directed;
  directed.reserve(mesh.faces.size() * 3);
  for (const Face& t : mesh.faces)
    for (int e = 0; e < 3; ++e) directed.push_back({t[e], t[(e + 1) % 3]});
  std::vector<std::array<std::uint32_t, 2>> undirected(directed.size());
  for (std::size_t i = 0; i < directed.size(); ++i)
    undirected[i] = {std::min(directed[i][0], directed[i][1]), std::max(directed[i][0], directed[i][1])};

  std::sort(directed.begin(), directed.end());
  d.is_oriented = std::adjacent_find(directed.begin(), directed.end()) == directed.end();

  std::sort(undirected.begin(), undirected.end());
  std::vector<std::array<std::uint32_t, 2>> edges;
  for (std::size_t i = 0; i < undirected.size();) {
    std::size_t j = i;
    while (j < undirected.size() && undirected[j] == undirected[i]) ++j;
    if (j - i != 2) ++d.non_manifold_edge_count;
    edges.push_back(undirected[i]);
    i = j;
  }
  d.edge_count = edges.size();
  d.is_closed = d.non_manifold_edge_count == 0 && !mesh.faces.empty();
  d.euler_characteristic = static_cast<long long>(d.vertex_count) - static_cast<long long>(d.edge_count) +
                           static_cast<long long>(d.face_count);

  DisjointSets sets(mesh.vertices.size());
  std::vector<bool> referenced(mesh.vertices.size(), false);
  for (const Face& t : mesh.faces) {
    sets.unite(t[0], t[1]);
    sets.unite(t[1], t[2]);
    for (auto v : t) referenced[v] = true;
  }
  std::map<std::uint32_t, std::array<long long, 3>> per_component;  // root -> V, E, F
  for (std::uint32_t v = 0; v < mesh.vertices.size(); ++v) {
    if (!referenced[v]) {
      ++d.isolated_vertex_count;
      continue;
    }
    per_component[sets.find(v)][0] += 1;
  }
  for (const auto& e : edges) per_component[sets.find(e[0])][1] += 1;
  for (const Face& t : mesh.faces) per_component[sets.find(t[0])][2] += 1;
  d.component_count = per_component.size();

  if (d.is_closed) {
    long long genus = 0;
    bool valid = true;
    for (const auto& [root, vef] : per_component) {
      const long long chi = vef[0] - vef[1] + vef[2];
      if (chi > 2 || (2 - chi) % 2 != 0) valid = false;
      genus += (2 - chi) / 2;
    }
    if (valid) d.genus = genus;
  }
  return d;
}

TriangleMesh laplacian_smooth(const TriangleMesh& mesh, int iterations, double step) {
  require(iterations >= 0, ErrorCategory::kArgument, "iterations must be non-negative");
  require(step > 0.0 && step <= 1.0, ErrorCategory::kArgument, "laplacian step must be in (0, 1]");
  validate_mesh(mesh);
  TriangleMesh out = mesh;
  if (iterations == 0) return out;

  // 1-ring adjacency in CSR form.
  const auto edges = unique_edges(mesh);
  const std::size_t n = mesh.vertices.size();
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (const auto& e : edges) {
    ++offsets[e[0] + 1];
    ++offsets[e[1] + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<std::uint32_t> ring(offsets[n]);
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    ring[fill[e[0]]++] = e[1];
    ring[fill[e[1]]++] = e[0];
  }

  std::vector<Vec3> next(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint32_t begin = offsets[v], end = offsets[v + 1];
      if (begin == end) {
        next[v] = out.vertices[v];
        continue;
      }
      Vec3 mean;
      for (std::uint32_t r = begin; r < end; ++r) mean += out.vertices[ring[r]];
      mean = mean / static_cast<double>(end - begin);
      next[v] = out.vertices[v] + (mean - out.vertices[v]) * step;
    }
    std::swap(out.vertices, next);
  }
  return out;
}

double face_area(const TriangleMesh& mesh, std::size_t face) {
  const Face& t = mesh.faces[face];
  const Vec3& a = mesh.vertices[t[0]];
  return 0.5 * norm(cross(mesh.vertices[t[1]] - a, mesh.vertices[t[2]] - a));
}

Vec3 face_normal(const TriangleMesh& mesh, std::size_t face) {
  const Face& t = mesh.faces[face];
  const Vec3& a = mesh.vertices[t[0]];
  const Vec3 n = cross(mesh.vertices[t[1]] - a, mesh.vertices[t[2]] - a);
  const double len = norm(n);
  return len > 0.0 ? n / len : Vec3{};
}

PointCloud sample_surface_points(const TriangleMesh& mesh, std::size_t count, std::uint64_t seed) {
  validate_mesh(mesh);
  std::vector<double> cumulative(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    total += face_area(mesh, f);
    cumulative[f] = total;
  }
  require(total > 0.0, ErrorCategory::kDegenerate, "cannot sample a mesh with zero total area");

  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double r = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    const Face& t = mesh.faces[static_cast<std::size_t>(it - cumulative.begin())];
    double u = rng.uniform();
    double v = rng.uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const Vec3& a = mesh.vertices[t[0]];
    cloud.points.push_back(a + (mesh.vertices[t[1]] - a) * u + (mesh.vertices[t[2]] - a) * v);
  }
  return cloud;
}

void quantize_to_float(TriangleMesh& mesh) {
  // Staged through a float buffer; GCC 11 -O3 folds an in-place round trip.
  std::vector<float> buffer(3 * mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    for (int a = 0; a < 3; ++a) buffer[3 * i + a] = static_cast<float>(mesh.vertices[i][a]);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    mesh.vertices[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
}

TriangleMesh merge_meshes(const std::vector<TriangleMesh>& meshes) {
  TriangleMesh out;
  for (const TriangleMesh& m : meshes) {
    const auto base = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), m.vertices.begin(), m.vertices.end());
    for (const Face& t : m.faces) out.faces.push_back({t[0] + base, t[1] + base, t[2] + base});
  }
  return out;
}

TriangleMesh make_tetrahedron() {
  // Regular tetrahedron with unit edge length.
  const double s = 1.0 / std::sqrt(8.0);
  TriangleMesh m;
  m.vertices = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return m;
}

TriangleMesh make_icosahedron(double radius, Vec3 center) {
  const double phi = std::numbers::phi;
  TriangleMesh m;
  m.vertices = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : m.vertices) v = center + v * (radius / norm(v));
  m.faces = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
             {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  return m;
}

TriangleMesh make_icosphere(int subdivisions, double radius, Vec3 center) {
  TriangleMesh m = make_icosahedron(1.0, {});
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
    auto mid = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Vec3 p = m.vertices[a] + m.vertices[b];
      m.vertices.push_back(p / norm(p));
      const auto id = static_cast<std::uint32_t>(m.vertices.size() - 1);
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Face> faces;
    faces.reserve(m.faces.size() * 4);
    for (const Face& t : m.faces) {
      const std::uint32_t ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      faces.push_back({t[0], ab, ca});
      faces.push_back({t[1], bc, ab});
      faces.push_back({t[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    m.faces = std::move(faces);
  }
  for (Vec3& v : m.vertices) v = center + v * radius;
  return m;
}

TriangleMesh make_torus(int major_segments, int minor_segments, double major_radius, double minor_radius) {
  require(major_segments >= 3 && minor_segments >= 3, ErrorCategory::kArgument, "torus needs >= 3 segments");
  TriangleMesh m;
  for (int i = 0; i < major_segments; ++i) {
    const double u = 2.0 * std::numbers::pi * i / major_segments;
    for (int j = 0; j < minor_segments; ++j) {
      const double v = 2.0 * std::numbers::pi * j / minor_segments;
      const double r = major_radius + minor_radius * std::cos(v);
      m.vertices.push_back({r * std::cos(u), r * std::sin(u), minor_radius * std::sin(v)});
    }
  }
  auto id = [&](int i, int j) {
    return static_cast<std::uint32_t>(((i + major_segments) % major_segments) * minor_segments +
                                      (j + minor_segments) % minor_segments);
  };
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < minor_segments; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return m;
}

}  // namespace corsurf
