// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "pipeline/config.hpp"
#include "volume/labels.hpp"

namespace corsurf {

struct Phantom {
  LabelVolume labels;
  double gap_mm = 0.0;
};

// Synthetic two-hemisphere label volume centred on the grid. Each hemisphere
// is a lobed ellipsoid cut flat at the medial plane, |x| >= gap/2, made of a
// cortical shell around white matter with a lateral ventricle inside and an
// amygdala-hippocampus blob on the inferior medial side. Shape parameters are
// drawn from `seed`; so is the gap unless config.gap_mm is set.
Phantom make_phantom(const PhantomConfig& config, std::uint64_t seed);

}  // namespace corsurf
