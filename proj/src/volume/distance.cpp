// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact Euclidean distance transform: three separable passes of the
// lower-envelope-of-parabolas method, with per-axis voxel spacing.

#include <cmath>
#include <limits>

#include "common/parallel.hpp"
#include "volume/labels.hpp"

namespace corsurf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// In-place 1-D squared distance transform of f (length n, sample spacing h).
// v/z/out are scratch buffers of size >= n (+1 for z).
void edt_1d(double* f, std::size_t stride, int n, double h, std::vector<int>& v, std::vector<double>& z,
            std::vector<double>& out) {
  const double h2 = h * h;
  int k = -1;
  for (int q = 0; q < n; ++q) {
    const double fq = f[stride * q];
    if (fq == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s;
    while (true) {
      const int p = v[k];
      const double fp = f[stride * p];
      // Intersection abscissa (in index units) of the parabolas rooted at p
      // and q. z[0] is -inf, so k never drops below zero.
      s = ((fq + h2 * q * q) - (fp + h2 * p * p)) / (2.0 * h2 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) return;  // no finite samples on this line
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double d = (q - v[j]) * h;
    out[q] = d * d + f[stride * v[j]];
  }
  for (int q = 0; q < n; ++q) f[stride * q] = out[q];
}

}  // namespace

std::vector<double> squared_distance_transform(const GridGeometry& g, const std::vector<std::uint8_t>& feature) {
  std::vector<double> d(g.voxel_count());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = feature[n] ? 0.0 : kInf;
  for (int axis = 0; axis < 3; ++axis) {
    const int n = g.dims[axis];
    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(g.dims[0])
                                                          : static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
    const int other_a = axis == 0 ? 1 : 0;
    const int other_b = axis == 2 ? 1 : 2;
    const std::size_t lines = static_cast<std::size_t>(g.dims[other_a]) * g.dims[other_b];
    parallel_for(lines, [&](std::size_t begin, std::size_t end) {
      std::vector<int> v(n);
      std::vector<double> z(n + 1);
      std::vector<double> out(n);
      for (std::size_t line = begin; line < end; ++line) {
        Index3 c{0, 0, 0};
        c[other_a] = static_cast<int>(line % g.dims[other_a]);
        c[other_b] = static_cast<int>(line / g.dims[other_a]);
        edt_1d(d.data() + g.index(c[0], c[1], c[2]), stride, n, g.spacing[axis], v, z, out);
      }
    });
  }
  return d;
}

ScalarField signed_distance(const BinaryMask& mask) {
  const GridGeometry& g = mask.grid.geometry();
  std::size_t inside = 0;
  for (std::size_t n = 0; n < mask.grid.size(); ++n) inside += mask.grid[n] ? 1 : 0;
  require(inside > 0 && inside < mask.grid.size(), ErrorCategory::kDegenerate,
          "signed distance needs both inside and outside voxels (mask has " + std::to_string(inside) + " of " +
              std::to_string(mask.grid.size()) + " set)");
  std::vector<std::uint8_t> outside(mask.grid.size());
  for (std::size_t n = 0; n < outside.size(); ++n) outside[n] = mask.grid[n] ? 0 : 1;
  const auto to_inside = squared_distance_transform(g, mask.grid.storage());
  const auto to_outside = squared_distance_transform(g, outside);
  ScalarField sdf(g, 0.0);
  for (std::size_t n = 0; n < sdf.size(); ++n) {
    sdf[n] = mask.grid[n] ? -std::sqrt(to_outside[n]) : std::sqrt(to_inside[n]);
  }
  return sdf;
}

}  // namespace corsurf
