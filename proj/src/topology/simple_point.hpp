// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "volume/labels.hpp"

namespace corsurf {

// 3x3x3 neighbourhood packed into 27 bits; bit (dk+1)*9 + (dj+1)*3 + (di+1)
// holds the voxel at offset (di,dj,dk). The centre bit (13) is ignored.
using Neighborhood = std::uint32_t;

// Simple-point test on a packed neighbourhood. Foreground connectivity is 26
// or 18, background connectivity is always 6.
bool is_simple_configuration(Neighborhood cube, int fg_connectivity = 26);

// Packs the neighbourhood of `voxel` from a 0/1 grid; voxels outside the grid
// read as background.
Neighborhood gather_neighborhood(const VoxelGrid<std::uint8_t>& grid, std::size_t voxel);

// True iff toggling the voxel preserves the topology of foreground and
// background in its 3x3x3 neighbourhood.
bool is_simple_point(const BinaryMask& mask, std::size_t voxel, int fg_connectivity = 26, int bg_connectivity = 6);

}  // namespace corsurf
