// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "collision/adaptive_extraction.hpp"
#include "common/random.hpp"
#include "metrics/distances.hpp"
#include "metrics/mesh_losses.hpp"

namespace corsurf {
namespace {

int canonical_rank(const std::string& id) {
  for (std::size_t i = 0; i < kSurfaceIds.size(); ++i)
    if (id == kSurfaceIds[i]) return static_cast<int>(i);
  return static_cast<int>(kSurfaceIds.size());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* const kSurfaceMetricNames[] = {"chamfer_mm2", "assd_mm", "hausdorff_mm", "sif_percent",
                                           "edge_loss", "normal_consistency_loss", "loss"};

std::vector<double> metric_values(const SurfaceMetrics& s) {
  return {s.chamfer_mm2, s.assd_mm, s.hausdorff_mm, s.sif_percent, s.edge_loss, s.normal_consistency_loss, s.loss};
}

nlohmann::ordered_json surface_json(const SurfaceMetrics& s, bool with_faces) {
  nlohmann::ordered_json j;
  j["surface"] = s.surface;
  const auto values = metric_values(s);
  for (std::size_t m = 0; m < values.size(); ++m) j[kSurfaceMetricNames[m]] = values[m];
  if (with_faces) {
    j["normal_consistency_skipped_edges"] = s.normal_consistency_skipped_edges;
    j["sif_faces"] = s.sif_faces;
  }
  return j;
}

}  // namespace

MetricsReport mesh_loss(const std::vector<NamedMesh>& predicted, const std::vector<NamedMesh>& reference,
                        const MetricsOptions& options) {
  require(options.samples > 0, ErrorCategory::kArgument, "sample count must be positive");
  require(options.weights.chamfer >= 0 && options.weights.edge >= 0 && options.weights.normal >= 0,
          ErrorCategory::kArgument, "loss weights must be non-negative");
  auto ids_of = [](const std::vector<NamedMesh>& set) {
    std::vector<std::string> ids;
    for (const auto& [id, mesh] : set) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
      const int ra = canonical_rank(a), rb = canonical_rank(b);
      return ra != rb ? ra < rb : a < b;
    });
    return ids;
  };
  const auto ids = ids_of(predicted);
  require(!ids.empty(), ErrorCategory::kArgument, "no surfaces to evaluate");
  require(std::adjacent_find(ids.begin(), ids.end()) == ids.end(), ErrorCategory::kArgument,
          "duplicate surface id in predicted set");
  if (ids != ids_of(reference)) {
    std::string expected;
    for (const auto& id : ids_of(reference)) expected += (expected.empty() ? "" : ", ") + id;
    fail(ErrorCategory::kArgument, "predicted and reference surface sets differ; reference has: " + expected);
  }
  auto find = [](const std::vector<NamedMesh>& set, const std::string& id) -> const TriangleMesh& {
    for (const auto& [name, mesh] : set)
      if (name == id) return mesh;
    fail(ErrorCategory::kInternal, "surface lookup failed");
  };

  MetricsReport report;
  report.options = options;
  const LossWeights& w = options.weights;
  for (std::size_t s = 0; s < ids.size(); ++s) {
    const TriangleMesh& pred = find(predicted, ids[s]);
    const TriangleMesh& ref = find(reference, ids[s]);
    SurfaceMetrics m;
    m.surface = ids[s];
    const PointCloud p = sample_surface_points(pred, options.samples, derive_seed(options.seed, 2 * s));
    const PointCloud q = sample_surface_points(ref, options.samples, derive_seed(options.seed, 2 * s + 1));
    const SurfaceDistances d = surface_distances(p, q, options.hausdorff_percentile);
    m.chamfer_mm2 = d.chamfer_mm2;
    m.assd_mm = d.assd_mm;
    m.hausdorff_mm = d.hausdorff_mm;
    const SelfIntersectionResult sif = self_intersection_fraction(pred);
    m.sif_percent = sif.percent;
    m.sif_faces = sif.faces;
    m.edge_loss = edge_loss(pred);
    const NormalConsistency nc = normal_consistency_loss(pred);
    m.normal_consistency_loss = nc.loss;
    m.normal_consistency_skipped_edges = nc.skipped_edges;
    m.loss = w.chamfer * m.chamfer_mm2 + w.edge * m.edge_loss + w.normal * m.normal_consistency_loss;
    report.mesh_loss += m.loss;
    report.surfaces.push_back(std::move(m));
  }

  report.mean.surface = "mean";
  for (const auto& m : report.surfaces) {
    report.mean.chamfer_mm2 += m.chamfer_mm2;
    report.mean.assd_mm += m.assd_mm;
    report.mean.hausdorff_mm += m.hausdorff_mm;
    report.mean.sif_percent += m.sif_percent;
    report.mean.edge_loss += m.edge_loss;
    report.mean.normal_consistency_loss += m.normal_consistency_loss;
    report.mean.loss += m.loss;
  }
  const double n = static_cast<double>(report.surfaces.size());
  for (double* v : {&report.mean.chamfer_mm2, &report.mean.assd_mm, &report.mean.hausdorff_mm,
                    &report.mean.sif_percent, &report.mean.edge_loss, &report.mean.normal_consistency_loss,
                    &report.mean.loss})
    *v /= n;

  const std::size_t pair_count = options.all_pairs ? kSurfacePairs.size() : kDefaultPairCount;
  for (std::size_t i = 0; i < pair_count; ++i) {
    const std::string a = kSurfaceIds[kSurfacePairs[i].first];
    const std::string b = kSurfaceIds[kSurfacePairs[i].second];
    if (std::find(ids.begin(), ids.end(), a) == ids.end() || std::find(ids.begin(), ids.end(), b) == ids.end())
      continue;
    report.collisions.push_back(mesh_pair_intersections(find(predicted, a), find(predicted, b), a, b));
  }
  return report;
}

nlohmann::ordered_json to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kMetricsSchemaVersion;
  j["seed"] = report.options.seed;
  j["samples"] = report.options.samples;
  j["hausdorff_percentile"] = report.options.hausdorff_percentile;
  j["weights"] = {{"chamfer", report.options.weights.chamfer},
                  {"edge", report.options.weights.edge},
                  {"normal_consistency", report.options.weights.normal}};
  j["surfaces"] = nlohmann::ordered_json::array();
  for (const auto& s : report.surfaces) j["surfaces"].push_back(surface_json(s, true));
  j["mean"] = surface_json(report.mean, false);
  j["mesh_loss"] = report.mesh_loss;
  j["collisions"] = nlohmann::ordered_json::array();
  for (const auto& c : report.collisions) j["collisions"].push_back(to_json(c));
  return j;
}

std::string to_csv(const MetricsReport& report) {
  std::string out = "surface,metric,value\n";
  auto rows = [&](const SurfaceMetrics& s) {
    const auto values = metric_values(s);
    for (std::size_t m = 0; m < values.size(); ++m)
      out += s.surface + "," + kSurfaceMetricNames[m] + "," + format_double(values[m]) + "\n";
  };
  for (const auto& s : report.surfaces) rows(s);
  rows(report.mean);
  out += "all,mesh_loss," + format_double(report.mesh_loss) + "\n";
  for (const auto& c : report.collisions) {
    const std::string pair = c.surface_a + "|" + c.surface_b;
    out += pair + ",percent_a," + format_double(c.percent_a) + "\n";
    out += pair + ",percent_b," + format_double(c.percent_b) + "\n";
    out += pair + ",contacts," + std::to_string(c.contacts) + "\n";
  }
  return out;
}

std::vector<AggregateRow> aggregate_reports(const std::vector<std::pair<std::string, nlohmann::json>>& inputs) {
  require(!inputs.empty(), ErrorCategory::kArgument, "report needs at least one input");
  // Keyed by (surface, metric) in first-seen order.
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<double>> values;
  auto add = [&](const std::string& surface, const std::string& metric, double v) {
    const auto key = std::make_pair(surface, metric);
    auto [it, inserted] = values.try_emplace(key);
    if (inserted) keys.push_back(key);
    it->second.push_back(v);
  };
  for (const auto& [path, doc] : inputs) {
    const nlohmann::json* report = &doc;
    if (doc.is_object() && doc.contains("metrics")) report = &doc.at("metrics");
    if (!report->is_object() || !report->contains("schema_version"))
      fail(ErrorCategory::kSchema, path + ": no metrics report with a schema_version");
    const auto& version = report->at("schema_version");
    if (!version.is_number_integer() || version.get<int>() != kMetricsSchemaVersion)
      fail(ErrorCategory::kSchema, path + ": unsupported metrics schema version " + version.dump());
    try {
      for (const auto& s : report->at("surfaces"))
        for (const char* metric : kSurfaceMetricNames) add(s.at("surface").get<std::string>(), metric, s.at(metric).get<double>());
      add("all", "mesh_loss", report->at("mesh_loss").get<double>());
      for (const auto& c : report->at("collisions")) {
        const std::string pair = c.at("pair").at(0).get<std::string>() + "|" + c.at("pair").at(1).get<std::string>();
        add(pair, "percent_a", c.at("percent_a").get<double>());
        add(pair, "percent_b", c.at("percent_b").get<double>());
        add(pair, "contacts", c.at("contacts").get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCategory::kSchema, path + ": malformed metrics report (" + e.what() + ")");
    }
  }
  std::vector<AggregateRow> rows;
  for (const auto& key : keys) {
    const auto& v = values.at(key);
    AggregateRow r{key.first, key.second, 0.0, 0.0, v.size()};
    for (double x : v) r.mean += x;
    r.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
      double ss = 0.0;
      for (double x : v) ss += (x - r.mean) * (x - r.mean);
      r.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    rows.push_back(r);
  }
  return rows;
}

nlohmann::ordered_json to_json(const std::vector<AggregateRow>& rows) {
  nlohmann::ordered_json j;
  j["schema_version"] = kMetricsSchemaVersion;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"surface", r.surface}, {"metric", r.metric}, {"mean", r.mean}, {"sd", r.sd}, {"n", r.n}});
  return j;
}

std::string to_csv(const std::vector<AggregateRow>& rows) {
  std::string out = "surface,metric,mean,sd,n\n";
  for (const auto& r : rows)
    out += r.surface + "," + r.metric + "," + format_double(r.mean) + "," + format_double(r.sd) + "," +
           std::to_string(r.n) + "\n";
  return out;
}

}  // namespace corsurf
