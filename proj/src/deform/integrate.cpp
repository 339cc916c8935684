// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>

#include "common/parallel.hpp"
#include "deform/fields.hpp"

namespace corsurf {

VelocityField smooth_svf(const VelocityField& v, double sigma_mm) {
  return {gaussian_smooth(v.grid, sigma_mm)};
}

DeformationField scaling_and_squaring(const VelocityField& v, int steps) {
  require(steps >= 1, ErrorCategory::kArgument, "scaling-and-squaring needs at least one step");
  const GridGeometry& g = v.grid.geometry();
  const double scale = std::ldexp(1.0, -steps);
  DeformationField phi{VoxelGrid<Vec3>(g, Vec3{})};
  for (std::size_t n = 0; n < g.voxel_count(); ++n) phi.displacement[n] = v.grid[n] * scale;
  for (int s = 0; s < steps; ++s) phi = compose(phi, phi);
  return phi;
}

DeformationField compose(const DeformationField& outer, const DeformationField& inner) {
  const GridGeometry& g = inner.displacement.geometry();
  require(outer.displacement.geometry() == g, ErrorCategory::kArgument, "cannot compose fields on different grids");
  DeformationField out{VoxelGrid<Vec3>(g, Vec3{})};
  parallel_for(g.voxel_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const Index3 c = g.coords(n);
      const Vec3& u = inner.displacement[n];
      out.displacement[n] = u + trilinear_sample(outer.displacement, g.world(c[0], c[1], c[2]) + u);
    }
  });
  return out;
}

TriangleMesh warp_mesh(const TriangleMesh& mesh, const DeformationField& phi) {
  TriangleMesh out = mesh;
  parallel_for(mesh.vertices.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out.vertices[i] = phi.apply(mesh.vertices[i]);
  });
  return out;
}

ScalarField jacobian_determinant(const DeformationField& phi) {
  const GridGeometry& g = phi.displacement.geometry();
  require(g.dims[0] >= 3 && g.dims[1] >= 3 && g.dims[2] >= 3, ErrorCategory::kArgument,
          "Jacobian needs at least 3 voxels per axis");
  ScalarField det(g, 0.0);
  parallel_for(g.voxel_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const Index3 c = g.coords(n);
      Vec3 col[3];  // d phi / d x_axis
      for (int axis = 0; axis < 3; ++axis) {
        Index3 lo = c, hi = c;
        if (c[axis] > 0) --lo[axis];
        if (c[axis] + 1 < g.dims[axis]) ++hi[axis];
        const double h = (hi[axis] - lo[axis]) * g.spacing[axis];
        col[axis] = (phi.displacement.at(hi[0], hi[1], hi[2]) - phi.displacement.at(lo[0], lo[1], lo[2])) / h;
        col[axis][axis] += 1.0;
      }
      det[n] = dot(col[0], cross(col[1], col[2]));
    }
  });
  return det;
}

double min_interior_jacobian(const DeformationField& phi, int margin) {
  const ScalarField det = jacobian_determinant(phi);
  const GridGeometry& g = det.geometry();
  double lowest = std::numeric_limits<double>::infinity();
  for (int k = margin; k < g.dims[2] - margin; ++k)
    for (int j = margin; j < g.dims[1] - margin; ++j)
      for (int i = margin; i < g.dims[0] - margin; ++i) lowest = std::min(lowest, det.at(i, j, k));
  return lowest;
}

MultiscaleResult multiscale_deform(const std::vector<TriangleMesh>& meshes, const std::vector<VelocityField>& svfs,
                                   int steps, double sigma_mm) {
  require(!svfs.empty(), ErrorCategory::kArgument, "at least one velocity field is required");
  MultiscaleResult result{meshes, {}, {}};
  for (std::size_t level = 0; level < svfs.size(); ++level) {
    const DeformationField phi = scaling_and_squaring(smooth_svf(svfs[level], sigma_mm), steps);
    const double jmin = min_interior_jacobian(phi, 1);
    result.min_jacobian.push_back(jmin);
    if (!(jmin > 0.0)) {
      result.warnings.push_back("level " + std::to_string(level + 1) + ": non-positive Jacobian determinant (min " +
                                std::to_string(jmin) + ")");
    }
    for (TriangleMesh& m : result.meshes) m = warp_mesh(m, phi);
  }
  return result;
}

}  // namespace corsurf
