// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "pipeline/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "common/random.hpp"

namespace corsurf {
namespace {

struct HemiShape {
  Vec3 center;  // in mirrored coordinates (medial plane at x = gap/2)
  Vec3 axes;
  double lobe_amplitude;
  int lobe_u, lobe_v;
  double phase_u, phase_v;
  double thickness;
};

HemiShape draw_hemisphere(Rng& rng, double gap, double extent) {
  HemiShape h;
  const double scale = extent / 32.0;
  h.axes = {rng.uniform(13.0, 15.0) * scale, rng.uniform(21.0, 24.0) * scale, rng.uniform(16.0, 19.0) * scale};
  h.center = {gap / 2.0 + h.axes.x * rng.uniform(0.72, 0.82), rng.uniform(-1.5, 1.5) * scale,
              rng.uniform(-1.0, 1.0) * scale};
  h.lobe_amplitude = rng.uniform(0.03, 0.07);
  h.lobe_u = 3 + static_cast<int>(rng.below(3));
  h.lobe_v = 2 + static_cast<int>(rng.below(3));
  h.phase_u = rng.uniform(0.0, 2.0 * std::numbers::pi);
  h.phase_v = rng.uniform(0.0, 2.0 * std::numbers::pi);
  h.thickness = rng.uniform(2.2, 3.0) * scale;
  return h;
}

// Normalised ellipsoid radius of p relative to the lobed boundary; < 1 inside.
double lobed_radius(const HemiShape& h, const Vec3& p, double shrink) {
  const Vec3 d = p - h.center;
  const Vec3 a{h.axes.x - shrink, h.axes.y - shrink, h.axes.z - shrink};
  const double e = std::sqrt((d.x / a.x) * (d.x / a.x) + (d.y / a.y) * (d.y / a.y) + (d.z / a.z) * (d.z / a.z));
  const double r = norm(d);
  const double u = std::atan2(d.y, d.x);
  const double v = r > 0.0 ? std::acos(std::clamp(d.z / r, -1.0, 1.0)) : 0.0;
  const double lobe = 1.0 + h.lobe_amplitude * std::sin(h.lobe_u * u + h.phase_u) * std::sin(h.lobe_v * v + h.phase_v);
  return e / lobe;
}

std::uint8_t classify(const HemiShape& h, const Vec3& p, double gap, int base) {
  const double medial = gap / 2.0;
  if (p.x < medial || lobed_radius(h, p, 0.0) > 1.0) return 0;
  // Amygdala-hippocampus: inferior, medial, anterior of centre.
  const Vec3 amyg{medial + 0.28 * h.axes.x, h.center.y - 0.25 * h.axes.y, h.center.z - 0.62 * h.axes.z};
  if (squared_distance(p, amyg) < 3.2 * 3.2) return static_cast<std::uint8_t>(base + 2);
  const Vec3 vent_c{h.center.x - 0.25 * h.axes.x, h.center.y, h.center.z + 0.15 * h.axes.z};
  const Vec3 vd = p - vent_c;
  const Vec3 va{0.2 * h.axes.x, 0.35 * h.axes.y, 0.15 * h.axes.z};
  if ((vd.x / va.x) * (vd.x / va.x) + (vd.y / va.y) * (vd.y / va.y) + (vd.z / va.z) * (vd.z / va.z) < 1.0)
    return static_cast<std::uint8_t>(base + 3);
  if (p.x >= medial + h.thickness && lobed_radius(h, p, h.thickness) <= 1.0) return static_cast<std::uint8_t>(base);
  return static_cast<std::uint8_t>(base + 1);
}

}  // namespace

Phantom make_phantom(const PhantomConfig& config, std::uint64_t seed) {
  require(config.dims >= 16, ErrorCategory::kArgument, "phantom dims must be at least 16");
  require(config.spacing_mm > 0.0, ErrorCategory::kArgument, "phantom spacing must be positive");
  Rng rng(seed);
  Phantom out;
  out.gap_mm = config.gap_mm ? *config.gap_mm : rng.uniform(0.2, 2.0);
  require(out.gap_mm >= 0.0, ErrorCategory::kArgument, "phantom gap must be non-negative");
  const double extent = config.dims * config.spacing_mm / 2.0;
  const HemiShape lh = draw_hemisphere(rng, out.gap_mm, extent);
  const HemiShape rh = draw_hemisphere(rng, out.gap_mm, extent);

  GridGeometry g;
  g.dims = {config.dims, config.dims, config.dims};
  g.spacing = {config.spacing_mm, config.spacing_mm, config.spacing_mm};
  const double o = -(config.dims - 1) * config.spacing_mm / 2.0;
  g.origin = {o, o, o};
  out.labels.grid = VoxelGrid<std::uint8_t>(g, 0);
  for (std::size_t n = 0; n < g.voxel_count(); ++n) {
    const Index3 c = g.coords(n);
    const Vec3 p = g.world(c[0], c[1], c[2]);
    if (p.x < 0.0) {
      out.labels.grid[n] = classify(lh, {-p.x, p.y, p.z}, out.gap_mm, static_cast<int>(Label::kLeftWhiteMatter));
    } else {
      out.labels.grid[n] = classify(rh, p, out.gap_mm, static_cast<int>(Label::kRightWhiteMatter));
    }
  }
  return out;
}

}  // namespace corsurf
