#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rolevec/distance.hpp"

namespace rolevec {

struct LayerStats {
  std::size_t edge_count = 0;
  double avg_weight = 0.0;
  double min_weight = 0.0;
  double max_weight = 0.0;
};

/// Weighted multilayer context graph. Every original node has one vertex
/// per layer; intra-layer edges carry weight exp(-f_k(u,v)), cross-layer
/// edges link a node's copies in adjacent layers (down weight fixed at 1,
/// up weight log(gamma + e) where gamma counts the node's intra-layer edges
/// with above-average weight).
class MultilayerGraph {
 public:
  MultilayerGraph(int node_count, int layer_count)
      : node_count_(node_count), layer_count_(layer_count) {
    adj_.assign(layer_count, std::vector<std::vector<std::pair<int, double>>>(node_count));
    total_weight_.assign(layer_count, std::vector<double>(node_count, 0.0));
    gamma_.assign(layer_count, std::vector<int>(node_count, 0));
    up_weight_.assign(layer_count, std::vector<double>(node_count, 1.0));
    avg_weight_.assign(layer_count, 0.0);
  }

  int node_count() const { return node_count_; }
  int layer_count() const { return layer_count_; }
  int top_layer() const { return layer_count_ - 1; }

  const std::vector<std::pair<int, double>>& neighbors(int layer, int u) const {
    return adj_[layer][u];
  }

  /// Z_k(u): sum of u's intra-layer edge weights, the transition
  /// normalization factor.
  double normalization(int layer, int u) const { return total_weight_[layer][u]; }

  int gamma(int layer, int u) const { return gamma_[layer][u]; }

  double up_weight(int layer, int u) const { return up_weight_[layer][u]; }
  double down_weight(int, int) const { return 1.0; }

  double layer_average_weight(int layer) const { return avg_weight_[layer]; }

  LayerStats layer_stats(int layer) const {
    if (layer < 0 || layer >= layer_count_) throw std::invalid_argument("layer out of range");
    LayerStats s;
    s.min_weight = std::numeric_limits<double>::infinity();
    s.max_weight = 0.0;
    double sum = 0.0;
    for (int u = 0; u < node_count_; ++u)
      for (const auto& [v, w] : adj_[layer][u]) {
        if (u > v) continue;
        s.edge_count++;
        sum += w;
        s.min_weight = std::min(s.min_weight, w);
        s.max_weight = std::max(s.max_weight, w);
      }
    s.avg_weight = s.edge_count ? sum / static_cast<double>(s.edge_count) : 0.0;
    if (!s.edge_count) s.min_weight = 0.0;
    return s;
  }

  friend MultilayerGraph build_multilayer(const DistanceTable& table, int node_count);

 private:
  int node_count_;
  int layer_count_;
  std::vector<std::vector<std::vector<std::pair<int, double>>>> adj_;  // [layer][u]
  std::vector<std::vector<double>> total_weight_;                      // [layer][u]
  std::vector<std::vector<int>> gamma_;                                // [layer][u]
  std::vector<std::vector<double>> up_weight_;                         // [layer][u]
  std::vector<double> avg_weight_;                                     // [layer]
};

inline MultilayerGraph build_multilayer(const DistanceTable& table, int node_count) {
  if (table.layer_count == 0) throw std::invalid_argument("distance table has no layers");
  MultilayerGraph m(node_count, table.layer_count);

  std::vector<double> weight_sum(table.layer_count, 0.0);
  std::vector<std::size_t> edge_count(table.layer_count, 0);
  for (const auto& p : table.pairs) {
    for (std::size_t k = 0; k < p.f.size(); ++k) {
      double w = std::exp(-p.f[k]);
      m.adj_[k][p.u].emplace_back(p.v, w);
      m.adj_[k][p.v].emplace_back(p.u, w);
      m.total_weight_[k][p.u] += w;
      m.total_weight_[k][p.v] += w;
      weight_sum[k] += w;
      edge_count[k]++;
    }
  }

  for (int k = 0; k < m.layer_count_; ++k) {
    m.avg_weight_[k] = edge_count[k] ? weight_sum[k] / static_cast<double>(edge_count[k]) : 0.0;
    // gamma counts edges strictly above the layer's average weight.
    for (int u = 0; u < node_count; ++u) {
      int count = 0;
      for (const auto& [v, w] : m.adj_[k][u])
        if (w > m.avg_weight_[k]) ++count;
      m.gamma_[k][u] = count;
      m.up_weight_[k][u] = std::log(static_cast<double>(count) + std::exp(1.0));
    }
  }
  return m;
}

}  // namespace rolevec
