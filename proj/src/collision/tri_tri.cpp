// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "collision/tri_tri.hpp"

#include <algorithm>
#include <vector>

#include "common/error.hpp"

namespace corsurf {
namespace {

Vec3 unit_normal(const Triangle& t) {
  const Vec3 n = cross(t[1] - t[0], t[2] - t[0]);
  return n / norm(n);
}

// Signed vertex distances of `t` to the plane through `p` with unit normal n,
// snapped to zero inside the tolerance band.
std::array<double, 3> plane_distances(const Triangle& t, const Vec3& n, const Vec3& p) {
  std::array<double, 3> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = dot(n, t[i] - p);
    if (std::abs(d[i]) < kPlaneEpsilon) d[i] = 0.0;
  }
  return d;
}

bool same_side(const std::array<double, 3>& d) {
  return (d[0] > 0 && d[1] > 0 && d[2] > 0) || (d[0] < 0 && d[1] < 0 && d[2] < 0);
}

// Points where triangle t meets the other plane, reduced to the extreme pair
// along `dir`.
bool plane_section(const Triangle& t, const std::array<double, 3>& d, const Vec3& dir, Vec3& lo, Vec3& hi,
                   double& tlo, double& thi) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.0) pts.push_back(t[i]);
    const int j = (i + 1) % 3;
    if ((d[i] < 0 && d[j] > 0) || (d[i] > 0 && d[j] < 0)) {
      const double s = d[i] / (d[i] - d[j]);
      pts.push_back(t[i] + (t[j] - t[i]) * s);
    }
  }
  if (pts.empty()) return false;
  tlo = thi = dot(dir, pts[0]);
  lo = hi = pts[0];
  for (const Vec3& p : pts) {
    const double s = dot(dir, p);
    if (s < tlo) { tlo = s; lo = p; }
    if (s > thi) { thi = s; hi = p; }
  }
  return true;
}

double polygon_area(const std::vector<Vec3>& poly) {
  Vec3 sum;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) sum += cross(poly[i] - poly[0], poly[i + 1] - poly[0]);
  return 0.5 * norm(sum);
}

std::optional<Segment> coplanar_overlap(const Triangle& t1, const Triangle& t2, const Vec3& n) {
  std::vector<Vec3> poly(t1.begin(), t1.end());
  // Orient the clip half-spaces toward the interior of t2.
  const double orientation = dot(cross(t2[1] - t2[0], t2[2] - t2[0]), n) > 0 ? 1.0 : -1.0;
  for (int e = 0; e < 3 && !poly.empty(); ++e) {
    const Vec3 a = t2[e];
    const Vec3 inward = cross(n, t2[(e + 1) % 3] - a) * orientation;
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec3& p = poly[i];
      const Vec3& q = poly[(i + 1) % poly.size()];
      const double dp = dot(inward, p - a);
      const double dq = dot(inward, q - a);
      if (dp >= 0) out.push_back(p);
      if ((dp >= 0) != (dq >= 0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
    }
    poly = std::move(out);
  }
  if (poly.size() < 3) return std::nullopt;
  const double threshold = std::max(1e-20, 1e-10 * std::min(triangle_area(t1), triangle_area(t2)));
  if (polygon_area(poly) <= threshold) return std::nullopt;
  return Segment{poly[0], poly[1]};
}

}  // namespace

double triangle_area(const Triangle& t) { return 0.5 * norm(cross(t[1] - t[0], t[2] - t[0])); }

std::optional<Segment> tri_tri_intersect(const Triangle& t1, const Triangle& t2) {
  require(triangle_area(t1) > kDegenerateArea && triangle_area(t2) > kDegenerateArea, ErrorCategory::kArgument,
          "degenerate triangle in intersection test");
  return tri_tri_intersect_unchecked(t1, t2);
}

std::optional<Segment> tri_tri_intersect_unchecked(const Triangle& t1, const Triangle& t2) {
  const Vec3 n2 = unit_normal(t2);
  const auto d1 = plane_distances(t1, n2, t2[0]);
  if (same_side(d1)) return std::nullopt;
  const Vec3 n1 = unit_normal(t1);
  const auto d2 = plane_distances(t2, n1, t1[0]);
  if (same_side(d2)) return std::nullopt;

  const bool coplanar = (d1[0] == 0 && d1[1] == 0 && d1[2] == 0) || (d2[0] == 0 && d2[1] == 0 && d2[2] == 0);
  if (coplanar) return coplanar_overlap(t1, t2, n1);

  Vec3 dir = cross(n1, n2);
  const double len = norm(dir);
  if (len == 0.0) return std::nullopt;
  dir = dir / len;
  Vec3 lo1, hi1, lo2, hi2;
  double a1, b1, a2, b2;
  if (!plane_section(t1, d1, dir, lo1, hi1, a1, b1)) return std::nullopt;
  if (!plane_section(t2, d2, dir, lo2, hi2, a2, b2)) return std::nullopt;
  const double lo = std::max(a1, a2);
  const double hi = std::min(b1, b2);
  if (hi - lo <= kPlaneEpsilon) return std::nullopt;
  return Segment{a1 >= a2 ? lo1 : lo2, b1 <= b2 ? hi1 : hi2};
}

}  // namespace corsurf
