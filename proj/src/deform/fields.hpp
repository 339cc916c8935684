// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "meshing/triangle_mesh.hpp"
#include "volume/voxel_grid.hpp"

namespace corsurf {

// Stationary velocity in mm per unit flow time, one (vx, vy, vz) per voxel.
struct VelocityField {
  VoxelGrid<Vec3> grid;
};

// Map phi stored as displacement u(x) = phi(x) - x in mm.
struct DeformationField {
  VoxelGrid<Vec3> displacement;

  Vec3 apply(const Vec3& p) const { return p + trilinear_sample(displacement, p); }
};

DeformationField identity_deformation(const GridGeometry& geometry);

// NIfTI with dim[0] = 4 and dim[4] = 3, or a raw sidecar with dtype float32x3.
VelocityField load_velocity_field(const std::string& path);
void save_velocity_field(const VelocityField& field, const std::string& path);

// Per-component Gaussian smoothing.
VelocityField smooth_svf(const VelocityField& v, double sigma_mm);

// Halves v `steps` times, then squares the small map `steps` times:
// u <- u + u(x + u). Throws kArgument if steps < 1.
DeformationField scaling_and_squaring(const VelocityField& v, int steps = 7);

// result(x) = outer(inner(x)). Throws kArgument on geometry mismatch.
DeformationField compose(const DeformationField& outer, const DeformationField& inner);

TriangleMesh warp_mesh(const TriangleMesh& mesh, const DeformationField& phi);

// Determinant of d(phi)/dx by central differences, one-sided on the faces of
// the grid. Needs at least 3 voxels per axis.
ScalarField jacobian_determinant(const DeformationField& phi);

// Minimum determinant over voxels at least `margin` voxels from every face.
double min_interior_jacobian(const DeformationField& phi, int margin = 1);

struct MultiscaleResult {
  std::vector<TriangleMesh> meshes;
  std::vector<double> min_jacobian;  // per level
  std::vector<std::string> warnings;
};

// For every level: smooth, integrate, then warp all meshes with the same map.
// A non-positive Jacobian is reported as a warning.
MultiscaleResult multiscale_deform(const std::vector<TriangleMesh>& meshes, const std::vector<VelocityField>& svfs,
                                   int steps = 7, double sigma_mm = 1.0);

// Synthetic velocity fields.
VelocityField constant_velocity(const GridGeometry& geometry, const Vec3& c);
// v(x) = omega x (x - center).
VelocityField rotation_velocity(const GridGeometry& geometry, const Vec3& omega, const Vec3& center);
// v(x) = rate * (x - center).
VelocityField scaling_velocity(const GridGeometry& geometry, double rate, const Vec3& center);
// Outward bump: v(x) = amplitude * (x - c)/width * exp(-|x - c|^2 / (2 width^2)).
VelocityField radial_velocity(const GridGeometry& geometry, const Vec3& center, double amplitude, double width);
// Sum of `terms` (<= 8) products of sinusoids with at most `max_cycles`
// periods across the grid, rescaled so the largest vector norm equals
// `amplitude` mm.
VelocityField band_limited_velocity(const GridGeometry& geometry, std::uint64_t seed, double amplitude,
                                    int terms = 8, int max_cycles = 2);

}  // namespace corsurf
