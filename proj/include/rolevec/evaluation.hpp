#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rolevec/classifier.hpp"
#include "rolevec/generators.hpp"
#include "rolevec/matrix.hpp"
#include "rolevec/pipeline.hpp"
#include "rolevec/stats.hpp"

namespace rolevec {

inline double euclidean_distance(const float* a, const float* b, int d) {
  double acc = 0.0;
  for (int j = 0; j < d; ++j) {
    double diff = static_cast<double>(a[j]) - static_cast<double>(b[j]);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

/// Distance distributions for a designated pair set (mirrored or
/// corresponding nodes) against all unordered pairs.
struct PairDistanceReport {
  std::vector<double> special_distances;
  std::vector<double> all_distances;
  double special_mean = 0.0, special_std = 0.0;
  double all_mean = 0.0, all_std = 0.0;
  double ratio = 0.0;  // all_mean / special_mean
};

inline PairDistanceReport pair_distance_report(const Matrix<float>& emb,
                                               const std::vector<std::pair<int, int>>& special) {
  if (special.empty()) throw std::invalid_argument("no special pairs given");
  PairDistanceReport rep;
  for (const auto& [u, v] : special) {
    if (u < 0 || v < 0 || u >= emb.rows || v >= emb.rows)
      throw std::invalid_argument("pair references a missing node");
    rep.special_distances.push_back(euclidean_distance(emb.row(u), emb.row(v), emb.cols));
  }
  rep.all_distances.reserve(static_cast<std::size_t>(emb.rows) * (emb.rows - 1) / 2);
  for (int u = 0; u < emb.rows; ++u)
    for (int v = u + 1; v < emb.rows; ++v)
      rep.all_distances.push_back(euclidean_distance(emb.row(u), emb.row(v), emb.cols));
  rep.special_mean = mean(rep.special_distances);
  rep.special_std = stddev(rep.special_distances);
  rep.all_mean = mean(rep.all_distances);
  rep.all_std = stddev(rep.all_distances);
  rep.ratio = rep.special_mean > 0.0 ? rep.all_mean / rep.special_mean
                                     : std::numeric_limits<double>::infinity();
  return rep;
}

struct CorrelationResult {
  double pearson = 0.0;
  double pearson_p = 1.0;
  double spearman = 0.0;
  double spearman_p = 1.0;
  std::size_t pair_count = 0;
};

/// Correlation between the layer-k structural distance and the Euclidean
/// embedding distance, over all pairs defined at that layer.
inline CorrelationResult distance_correlation(const DistanceTable& table,
                                              const Matrix<float>& emb, int layer) {
  std::vector<double> structural, latent;
  for (const auto& p : table.pairs) {
    if (static_cast<int>(p.f.size()) <= layer) continue;
    if (p.u >= emb.rows || p.v >= emb.rows)
      throw std::invalid_argument("embedding does not cover the distance table");
    structural.push_back(p.f[layer]);
    latent.push_back(euclidean_distance(emb.row(p.u), emb.row(p.v), emb.cols));
  }
  if (structural.size() < 3)
    throw std::invalid_argument("fewer than 3 pairs defined at layer " + std::to_string(layer));
  CorrelationResult r;
  r.pair_count = structural.size();
  r.pearson = pearson(structural, latent);
  r.pearson_p = correlation_p_value(r.pearson, r.pair_count);
  r.spearman = spearman(structural, latent);
  r.spearman_p = correlation_p_value(r.spearman, r.pair_count);
  return r;
}

/// Quartile labels 1..4 from an activity score, least active first. Ties
/// are broken by node id so the class sizes stay fixed.
inline std::vector<int> quartile_labels(const std::vector<double>& activity) {
  const int n = static_cast<int>(activity.size());
  if (n < 4) throw std::invalid_argument("need at least 4 scores");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return activity[a] < activity[b]; });
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i)
    labels[order[i]] = 1 + static_cast<int>((static_cast<long long>(i) * 4) / n);
  return labels;
}

inline Matrix<double> embedding_features(const Matrix<float>& emb) {
  Matrix<double> f(emb.rows, emb.cols);
  for (int i = 0; i < emb.rows; ++i)
    for (int j = 0; j < emb.cols; ++j) f.at(i, j) = emb.at(i, j);
  return f;
}

inline Matrix<double> degree_features(const Graph& g) {
  Matrix<double> f(g.node_count(), 1);
  for (int u = 0; u < g.node_count(); ++u) f.at(u, 0) = g.degree(u);
  return f;
}

struct ScalingMeasurement {
  int size = 0;
  double mean_seconds = 0.0;
  std::vector<double> run_seconds;
};

struct ScalingResult {
  std::vector<ScalingMeasurement> measurements;
  double slope = 0.0;  // log wall time vs log n
};

/// Runs the full pipeline on ER graphs of increasing size and fits the
/// log-log growth exponent of the mean wall time.
inline ScalingResult scaling_run(const std::vector<int>& sizes, double avg_degree,
                                 const PipelineOptions& base, int repeats,
                                 std::uint64_t seed) {
  if (sizes.size() < 2) throw std::invalid_argument("need at least two sizes");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  ScalingResult result;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ScalingMeasurement m;
    m.size = sizes[i];
    for (int rep = 0; rep < repeats; ++rep) {
      Rng rng(stream_seed(seed, 0x7363616cULL, i, static_cast<std::uint64_t>(rep)));
      Graph g = gen_er(sizes[i], avg_degree, rng);
      PipelineOptions opts = base;
      opts.seed = stream_seed(seed, 0x70697065ULL, i, static_cast<std::uint64_t>(rep));
      PipelineResult run = run_embed_pipeline(g, opts);
      m.run_seconds.push_back(run.total_seconds());
    }
    m.mean_seconds = mean(m.run_seconds);
    result.measurements.push_back(std::move(m));
  }
  std::vector<double> xs, ys;
  for (const auto& m : result.measurements) {
    xs.push_back(static_cast<double>(m.size));
    ys.push_back(m.mean_seconds);
  }
  result.slope = fit_loglog_slope(xs, ys);
  return result;
}

}  // namespace rolevec
