// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common/vec3.hpp"
#include "volume/labels.hpp"

namespace corsurf {

using Face = std::array<std::uint32_t, 3>;

// Indexed triangle surface in world millimetres. Faces are counter-clockwise
// seen from outside, i.e. normals point toward increasing field values.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
};

struct PointCloud {
  std::vector<Vec3> points;
  std::string source;
};

struct MeshDiagnostics {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t face_count = 0;
  long long euler_characteristic = 0;
  std::size_t component_count = 0;
  std::size_t isolated_vertex_count = 0;
  std::size_t non_manifold_edge_count = 0;  // edges not shared by exactly two faces
  bool is_closed = false;
  bool is_oriented = false;  // every directed edge used at most once
  std::optional<long long> genus;  // sum over components; empty unless closed
};

// Throws kArgument on out-of-range or repeated face indices.
void validate_mesh(const TriangleMesh& mesh);

MeshDiagnostics diagnostics(const TriangleMesh& mesh);

// Undirected edges (a < b), sorted and unique.
std::vector<std::array<std::uint32_t, 2>> unique_edges(const TriangleMesh& mesh);

enum class GridBoundary {
  kClosed,  // pad with one virtual layer of outside values
  kOpen,    // cells inside the grid only; surfaces may end at the boundary
};

// Marching cubes at `iso`. Voxels below iso are inside. With kClosed,
// surfaces touching the grid boundary are capped there and the mesh is always
// closed. Throws kEmptySurface unless min(field) < iso < max(field).
TriangleMesh marching_cubes(const ScalarField& field, double iso, GridBoundary boundary = GridBoundary::kClosed);

// Umbrella-operator smoothing: v += step * (mean(1-ring) - v), Jacobi style.
TriangleMesh laplacian_smooth(const TriangleMesh& mesh, int iterations, double step);

// Area-uniform sampling: faces drawn proportionally to area, barycentric
// coordinates uniform on the simplex. Deterministic for a given seed.
PointCloud sample_surface_points(const TriangleMesh& mesh, std::size_t count, std::uint64_t seed);

double face_area(const TriangleMesh& mesh, std::size_t face);
Vec3 face_normal(const TriangleMesh& mesh, std::size_t face);  // unit, or zero if degenerate

// Rounds every coordinate to the nearest float so that in-memory meshes equal
// what the float32 mesh files will hold.
void quantize_to_float(TriangleMesh& mesh);

TriangleMesh merge_meshes(const std::vector<TriangleMesh>& meshes);

// Reference shapes.
TriangleMesh make_tetrahedron();
TriangleMesh make_icosahedron(double radius = 1.0, Vec3 center = {});
TriangleMesh make_icosphere(int subdivisions, double radius = 1.0, Vec3 center = {});
// Torus around the z axis built from a (major x minor) quad grid.
TriangleMesh make_torus(int major_segments, int minor_segments, double major_radius, double minor_radius);

// Mesh files: binary little-endian PLY (canonical) and ASCII OBJ, chosen by
// extension.
TriangleMesh load_mesh(const std::string& path);
void save_mesh(const TriangleMesh& mesh, const std::string& path);

}  // namespace corsurf
