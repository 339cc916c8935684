// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "collision/intersections.hpp"
#include "json.hpp"

namespace corsurf {

inline constexpr int kMetricsSchemaVersion = 1;

struct LossWeights {
  double chamfer = 1.0;
  double edge = 0.7;
  double normal = 0.7;
};

struct MetricsOptions {
  LossWeights weights;
  std::size_t samples = 150000;
  std::uint64_t seed = 0;
  double hausdorff_percentile = 100.0;
  bool all_pairs = false;  // add the two cross-hemisphere collision pairs
};

struct SurfaceMetrics {
  std::string surface;
  double chamfer_mm2 = 0.0;
  double assd_mm = 0.0;
  double hausdorff_mm = 0.0;
  double sif_percent = 0.0;
  std::vector<std::uint32_t> sif_faces;
  double edge_loss = 0.0;
  double normal_consistency_loss = 0.0;
  std::size_t normal_consistency_skipped_edges = 0;
  double loss = 0.0;  // weighted sum for this surface
};

struct MetricsReport {
  MetricsOptions options;
  std::vector<SurfaceMetrics> surfaces;
  SurfaceMetrics mean;
  double mesh_loss = 0.0;
  std::vector<IntersectionReport> collisions;
};

using NamedMesh = std::pair<std::string, TriangleMesh>;

// Distances, self-intersection, per-mesh regularisers and the weighted loss
// for each surface, plus collision reports between predicted surfaces.
// Predicted and reference sets must carry the same ids (kArgument otherwise).
// Surfaces are reported in canonical order; point samples use per-surface
// streams derived from options.seed.
MetricsReport mesh_loss(const std::vector<NamedMesh>& predicted, const std::vector<NamedMesh>& reference,
                        const MetricsOptions& options = {});

nlohmann::ordered_json to_json(const MetricsReport& report);
// Rows of surface,metric,value.
std::string to_csv(const MetricsReport& report);

struct AggregateRow {
  std::string surface;
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single run
  std::size_t n = 0;
};

// Mean and SD per (surface, metric) across metrics reports. Each input is a
// metrics report or a run manifest holding one under "metrics". Throws
// kArgument for no inputs and kSchema naming the file for an unsupported or
// missing schema version.
std::vector<AggregateRow> aggregate_reports(const std::vector<std::pair<std::string, nlohmann::json>>& inputs);

nlohmann::ordered_json to_json(const std::vector<AggregateRow>& rows);
std::string to_csv(const std::vector<AggregateRow>& rows);

}  // namespace corsurf
