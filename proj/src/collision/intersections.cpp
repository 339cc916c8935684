// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "collision/intersections.hpp"

#include <algorithm>

#include "collision/bvh.hpp"
#include "common/parallel.hpp"

namespace corsurf {
namespace {

Triangle triangle_of(const TriangleMesh& m, std::uint32_t f) {
  const Face& t = m.faces[f];
  return {m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]};
}

std::vector<std::uint8_t> degenerate_flags(const TriangleMesh& m, std::size_t& count) {
  std::vector<std::uint8_t> flags(m.faces.size(), 0);
  count = 0;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    if (triangle_area(triangle_of(m, static_cast<std::uint32_t>(f))) <= kDegenerateArea) {
      flags[f] = 1;
      ++count;
    }
  }
  return flags;
}

bool share_vertex(const Face& a, const Face& b) {
  for (auto u : a)
    for (auto v : b)
      if (u == v) return true;
  return false;
}

// Tests candidate pairs in parallel; returns the intersecting subset in input
// order.
std::vector<std::pair<std::uint32_t, std::uint32_t>> filter_hits(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& candidates, const TriangleMesh& a,
    const TriangleMesh& b) {
  std::vector<std::uint8_t> hit(candidates.size(), 0);
  parallel_for(candidates.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto [fa, fb] = candidates[i];
      hit[i] = tri_tri_intersect_unchecked(triangle_of(a, fa), triangle_of(b, fb)).has_value() ? 1 : 0;
    }
  });
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (hit[i]) out.push_back(candidates[i]);
  return out;
}

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

SelfIntersectionResult self_intersection_fraction(const TriangleMesh& mesh) {
  validate_mesh(mesh);
  SelfIntersectionResult result;
  if (mesh.faces.empty()) return result;
  const auto degenerate = degenerate_flags(mesh, result.skipped_degenerate);
  const Bvh bvh(mesh);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
  for (const auto& p : bvh.self_candidates()) {
    if (degenerate[p.first] || degenerate[p.second]) continue;
    if (share_vertex(mesh.faces[p.first], mesh.faces[p.second])) continue;
    candidates.push_back(p);
  }
  const auto hits = filter_hits(candidates, mesh, mesh);
  result.pair_count = hits.size();
  for (const auto& [f, g] : hits) {
    result.faces.push_back(f);
    result.faces.push_back(g);
  }
  result.faces = sorted_unique(std::move(result.faces));
  result.percent = 100.0 * static_cast<double>(result.faces.size()) / static_cast<double>(mesh.faces.size());
  return result;
}

IntersectionReport mesh_pair_intersections(const TriangleMesh& a, const TriangleMesh& b, const std::string& name_a,
                                           const std::string& name_b) {
  validate_mesh(a);
  validate_mesh(b);
  IntersectionReport report;
  report.surface_a = name_a;
  report.surface_b = name_b;
  if (a.faces.empty() || b.faces.empty()) return report;
  std::size_t skipped = 0;
  const auto deg_a = degenerate_flags(a, skipped);
  const auto deg_b = degenerate_flags(b, skipped);
  const Bvh bvh_a(a);
  const Bvh bvh_b(b);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
  for (const auto& p : bvh_a.candidates(bvh_b))
    if (!deg_a[p.first] && !deg_b[p.second]) candidates.push_back(p);
  const auto hits = filter_hits(candidates, a, b);
  report.contacts = hits.size();
  for (const auto& [fa, fb] : hits) {
    report.face_ids_a.push_back(fa);
    report.face_ids_b.push_back(fb);
  }
  report.face_ids_a = sorted_unique(std::move(report.face_ids_a));
  report.face_ids_b = sorted_unique(std::move(report.face_ids_b));
  report.faces_a = report.face_ids_a.size();
  report.faces_b = report.face_ids_b.size();
  report.percent_a = 100.0 * static_cast<double>(report.faces_a) / static_cast<double>(a.faces.size());
  report.percent_b = 100.0 * static_cast<double>(report.faces_b) / static_cast<double>(b.faces.size());
  return report;
}

nlohmann::ordered_json to_json(const IntersectionReport& report) {
  nlohmann::ordered_json j;
  j["pair"] = {report.surface_a, report.surface_b};
  j["faces_a"] = report.faces_a;
  j["faces_b"] = report.faces_b;
  j["percent_a"] = report.percent_a;
  j["percent_b"] = report.percent_b;
  j["contacts"] = report.contacts;
  return j;
}

}  // namespace corsurf
