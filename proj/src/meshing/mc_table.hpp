// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace corsurf::mc {

// Cube corner c sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
// Edge e joins corners kEdgeCorners[e][0] < kEdgeCorners[e][1] along axis
// kEdgeAxis[e].
extern const std::array<std::array<int, 2>, 12> kEdgeCorners;
extern const std::array<int, 12> kEdgeAxis;

using CaseTriangles = std::vector<std::array<std::int8_t, 3>>;

// Triangles (as edge ids) for each of the 256 inside-corner masks. Bit c of
// the mask is set when corner c is below the iso-value. On ambiguous faces the
// above corners are cut off individually, so the inside phase is joined
// across face diagonals (18-adjacency) and the outside phase only through
// faces (6-adjacency). Triangles wind counter-clockwise around the normal that
// points from inside to outside. Each contour loop is fanned from an apex whose
// chords all pass through the cube interior, so no triangle lies flat in a
// face shared with the neighbouring cell.
const std::array<CaseTriangles, 256>& case_table();

}  // namespace corsurf::mc
