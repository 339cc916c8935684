// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "common/random.hpp"
#include "deform/fields.hpp"

namespace corsurf {
namespace {

template <class F>
VelocityField fill(const GridGeometry& geometry, F f) {
  VelocityField v{VoxelGrid<Vec3>(geometry, Vec3{})};
  for (std::size_t n = 0; n < geometry.voxel_count(); ++n) {
    const Index3 c = geometry.coords(n);
    v.grid[n] = f(geometry.world(c[0], c[1], c[2]));
  }
  return v;
}

}  // namespace

VelocityField constant_velocity(const GridGeometry& geometry, const Vec3& c) {
  return fill(geometry, [&](const Vec3&) { return c; });
}

VelocityField rotation_velocity(const GridGeometry& geometry, const Vec3& omega, const Vec3& center) {
  return fill(geometry, [&](const Vec3& x) { return cross(omega, x - center); });
}

VelocityField scaling_velocity(const GridGeometry& geometry, double rate, const Vec3& center) {
  return fill(geometry, [&](const Vec3& x) { return (x - center) * rate; });
}

VelocityField radial_velocity(const GridGeometry& geometry, const Vec3& center, double amplitude, double width) {
  require(width > 0.0, ErrorCategory::kArgument, "radial width must be positive");
  return fill(geometry, [&](const Vec3& x) {
    const Vec3 d = x - center;
    return d * (amplitude / width * std::exp(-squared_norm(d) / (2.0 * width * width)));
  });
}

VelocityField band_limited_velocity(const GridGeometry& geometry, std::uint64_t seed, double amplitude, int terms,
                                    int max_cycles) {
  require(terms >= 1 && terms <= 8, ErrorCategory::kArgument, "band-limited field takes 1 to 8 terms");
  require(max_cycles >= 1, ErrorCategory::kArgument, "max_cycles must be at least 1");
  require(amplitude >= 0.0, ErrorCategory::kArgument, "amplitude must be non-negative");
  struct Term {
    Vec3 weight;
    double freq[3];
    double phase[3];
  };
  Rng rng(seed);
  std::vector<Term> spectrum(static_cast<std::size_t>(terms));
  Vec3 extent;
  for (int a = 0; a < 3; ++a) extent[a] = geometry.dims[a] * geometry.spacing[a];
  for (Term& t : spectrum) {
    for (int a = 0; a < 3; ++a) t.weight[a] = rng.uniform(-1.0, 1.0);
    for (int a = 0; a < 3; ++a) {
      const double cycles = 1.0 + static_cast<double>(rng.below(static_cast<std::uint64_t>(max_cycles)));
      t.freq[a] = 2.0 * std::numbers::pi * cycles / extent[a];
      t.phase[a] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
  }
  VelocityField v = fill(geometry, [&](const Vec3& x) {
    Vec3 sum;
    for (const Term& t : spectrum) {
      double s = 1.0;
      for (int a = 0; a < 3; ++a) s *= std::sin(t.freq[a] * (x[a] - geometry.origin[a]) + t.phase[a]);
      sum += t.weight * s;
    }
    return sum;
  });
  double peak = 0.0;
  for (const Vec3& c : v.grid.storage()) peak = std::max(peak, norm(c));
  if (peak > 0.0)
    for (Vec3& c : v.grid.storage()) c = c * (amplitude / peak);
  return v;
}

}  // namespace corsurf
