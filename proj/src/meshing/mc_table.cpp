// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
//
// The 256-case triangle table is generated rather than transcribed: every cube
// face contributes contour segments according to a fixed ambiguity rule, the
// segments are chained into closed loops on the cube surface, and each loop is
// fanned into triangles. Generating it keeps the face rule identical for the
// two cells sharing a face, which makes the output watertight.

#include "meshing/mc_table.hpp"

#include <stdexcept>

#include "common/vec3.hpp"

namespace corsurf::mc {
namespace {

constexpr std::array<std::array<int, 2>, 12> make_edge_corners() {
  std::array<std::array<int, 2>, 12> edges{};
  int n = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      const int d = a ^ b;
      if (d == 1 || d == 2 || d == 4) edges[n++] = {a, b};
    }
  return edges;
}

Vec3 corner_pos(int c) { return {double(c & 1), double((c >> 1) & 1), double((c >> 2) & 1)}; }

int edge_between(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < 12; ++e)
    if (kEdgeCorners[e][0] == a && kEdgeCorners[e][1] == b) return e;
  throw std::logic_error("corners are not adjacent");
}

// True when both edges lie on one cube face, so a chord between them would be
// flat in that face.
bool share_face(int a, int b) {
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) {
      auto on = [&](int e) {
        return ((kEdgeCorners[e][0] >> axis) & 1) == side && ((kEdgeCorners[e][1] >> axis) & 1) == side;
      };
      if (on(a) && on(b)) return true;
    }
  return false;
}

Vec3 edge_mid(int e) { return (corner_pos(kEdgeCorners[e][0]) + corner_pos(kEdgeCorners[e][1])) * 0.5; }

struct CubeFace {
  std::array<int, 4> cycle;  // corners in cyclic order
  Vec3 normal;               // outward
};

std::array<CubeFace, 6> make_faces() {
  std::array<CubeFace, 6> faces{};
  int n = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      CubeFace f{};
      const int uv[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      for (int k = 0; k < 4; ++k) f.cycle[k] = (side << axis) | (uv[k][0] << u) | (uv[k][1] << v);
      f.normal[axis] = side ? 1.0 : -1.0;
      faces[n++] = f;
    }
  }
  return faces;
}

struct Segment {
  int from;
  int to;
};

// Orient a→b so the inside part of the face lies on the left when the face is
// viewed from outside the cube. `probe` is a corner whose side is known.
Segment oriented(int a, int b, const Vec3& normal, int probe, bool probe_inside) {
  const Vec3 ma = edge_mid(a);
  const Vec3 left = cross(normal, edge_mid(b) - ma);
  const bool probe_left = dot(corner_pos(probe) - ma, left) > 0.0;
  return probe_left == probe_inside ? Segment{a, b} : Segment{b, a};
}

CaseTriangles build_case(int mask, const std::array<CubeFace, 6>& faces) {
  auto inside = [mask](int c) { return ((mask >> c) & 1) != 0; };
  std::vector<Segment> segments;
  for (const CubeFace& f : faces) {
    int edges[4];
    bool crosses[4];
    int crossing_count = 0;
    for (int k = 0; k < 4; ++k) {
      const int a = f.cycle[k];
      const int b = f.cycle[(k + 1) % 4];
      edges[k] = edge_between(a, b);
      crosses[k] = inside(a) != inside(b);
      crossing_count += crosses[k] ? 1 : 0;
    }
    if (crossing_count == 2) {
      int found[2];
      int m = 0;
      for (int k = 0; k < 4; ++k)
        if (crosses[k]) found[m++] = edges[k];
      int probe = -1;
      for (int k = 0; k < 4; ++k)
        if (inside(f.cycle[k])) probe = f.cycle[k];
      segments.push_back(oriented(found[0], found[1], f.normal, probe, true));
    } else if (crossing_count == 4) {
      // Ambiguous face: isolate each outside corner.
      for (int k = 0; k < 4; ++k) {
        const int c = f.cycle[k];
        if (inside(c)) continue;
        const int e_prev = edges[(k + 3) % 4];
        const int e_next = edges[k];
        segments.push_back(oriented(e_prev, e_next, f.normal, c, false));
      }
    }
  }

  int next[12];
  std::fill(std::begin(next), std::end(next), -1);
  for (const Segment& s : segments) {
    if (next[s.from] != -1) throw std::logic_error("inconsistent contour orientation");
    next[s.from] = s.to;
  }
  CaseTriangles tris;
  bool used[12] = {};
  for (int start = 0; start < 12; ++start) {
    if (next[start] == -1 || used[start]) continue;
    std::vector<int> loop;
    for (int e = start; !used[e]; e = next[e]) {
      used[e] = true;
      loop.push_back(e);
      if (next[e] == -1) throw std::logic_error("open contour");
    }
    const std::size_t n = loop.size();
    std::size_t apex = n;
    for (std::size_t r = 0; r < n && apex == n; ++r) {
      bool flat_chord = false;
      for (std::size_t i = 2; i + 1 < n; ++i) flat_chord = flat_chord || share_face(loop[r], loop[(r + i) % n]);
      if (!flat_chord) apex = r;
    }
    if (apex == n) throw std::logic_error("no fan apex avoids the cube faces");
    for (std::size_t i = 1; i + 1 < n; ++i) {
      tris.push_back({static_cast<std::int8_t>(loop[apex]), static_cast<std::int8_t>(loop[(apex + i) % n]),
                      static_cast<std::int8_t>(loop[(apex + i + 1) % n])});
    }
  }
  return tris;
}

std::array<CaseTriangles, 256> build_table() {
  const auto faces = make_faces();
  std::array<CaseTriangles, 256> table;
  for (int mask = 0; mask < 256; ++mask) table[mask] = build_case(mask, faces);

  // Fix the global winding so that normals point away from the inside corner
  // of the single-corner case.
  const auto& t = table[1].front();
  const Vec3 p0 = edge_mid(t[0]), p1 = edge_mid(t[1]), p2 = edge_mid(t[2]);
  const Vec3 n = cross(p1 - p0, p2 - p0);
  if (dot(n, p0 - corner_pos(0)) < 0.0) {
    for (auto& tris : table)
      for (auto& tri : tris) std::swap(tri[1], tri[2]);
  }
  return table;
}

}  // namespace

const std::array<std::array<int, 2>, 12> kEdgeCorners = make_edge_corners();
const std::array<int, 12> kEdgeAxis = [] {
  std::array<int, 12> axis{};
  for (int e = 0; e < 12; ++e) {
    const int d = kEdgeCorners[e][0] ^ kEdgeCorners[e][1];
    axis[e] = d == 1 ? 0 : (d == 2 ? 1 : 2);
  }
  return axis;
}();

const std::array<CaseTriangles, 256>& case_table() {
  static const std::array<CaseTriangles, 256> table = build_table();
  return table;
}

}  // namespace corsurf::mc
