// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "metrics/distances.hpp"

#include <algorithm>
#include <cmath>

#include "common/parallel.hpp"

namespace corsurf {
namespace {

void require_nonempty(const PointCloud& p, const PointCloud& q) {
  require(!p.points.empty() && !q.points.empty(), ErrorCategory::kArgument, "point clouds must not be empty");
}

std::vector<double> directed_squared(const PointCloud& from, const PointCloud& to) {
  const auto nn = nearest_neighbor_index(from, to);
  std::vector<double> d2(nn.size());
  for (std::size_t i = 0; i < nn.size(); ++i) d2[i] = nn[i].squared_distance;
  return d2;
}

double nearest_rank(std::vector<double> values, double percentile) {
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(percentile / 100.0 * static_cast<double>(values.size()));
  const auto idx = static_cast<std::size_t>(std::max(rank, 1.0)) - 1;
  return values[std::min(idx, values.size() - 1)];
}

}  // namespace

std::vector<Neighbor> nearest_neighbor_index(const PointCloud& query, const PointCloud& reference) {
  const KdTree tree(reference.points);
  std::vector<Neighbor> out(query.points.size());
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = tree.nearest(query.points[i]);
  });
  return out;
}

SurfaceDistances surface_distances(const PointCloud& p, const PointCloud& q, double percentile) {
  require_nonempty(p, q);
  require(percentile > 0.0 && percentile <= 100.0, ErrorCategory::kArgument, "percentile must be in (0, 100]");
  const auto pq = directed_squared(p, q);
  const auto qp = directed_squared(q, p);
  double sq_pq = 0.0, sq_qp = 0.0, d_pq = 0.0, d_qp = 0.0;
  std::vector<double> dist_pq(pq.size()), dist_qp(qp.size());
  for (std::size_t i = 0; i < pq.size(); ++i) {
    sq_pq += pq[i];
    dist_pq[i] = std::sqrt(pq[i]);
    d_pq += dist_pq[i];
  }
  for (std::size_t i = 0; i < qp.size(); ++i) {
    sq_qp += qp[i];
    dist_qp[i] = std::sqrt(qp[i]);
    d_qp += dist_qp[i];
  }
  SurfaceDistances s;
  s.chamfer_mm2 = sq_pq / static_cast<double>(pq.size()) + sq_qp / static_cast<double>(qp.size());
  s.assd_mm = (d_pq + d_qp) / static_cast<double>(pq.size() + qp.size());
  s.hausdorff_mm = std::max(nearest_rank(std::move(dist_pq), percentile), nearest_rank(std::move(dist_qp), percentile));
  return s;
}

double chamfer(const PointCloud& p, const PointCloud& q) { return surface_distances(p, q).chamfer_mm2; }

double assd(const PointCloud& p, const PointCloud& q) { return surface_distances(p, q).assd_mm; }

double hausdorff(const PointCloud& p, const PointCloud& q, double percentile) {
  return surface_distances(p, q, percentile).hausdorff_mm;
}

}  // namespace corsurf
