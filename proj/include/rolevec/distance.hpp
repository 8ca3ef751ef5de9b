#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rolevec/dtw.hpp"
#include "rolevec/graph.hpp"

namespace rolevec {

/// Controls for the hierarchical distance computation.
///   compress_sequences  - run DTW over run-length-encoded degree sequences
///   neighbor_limit      - restrict pairs to degree-similar candidates
///   layer_cap           - cap the hierarchy depth (clamped by ring exhaustion)
struct SimilarityConfig {
  bool compress_sequences = false;
  bool neighbor_limit = false;
  std::optional<int> layer_cap;

  static constexpr int kDefaultLayerCap = 6;

  int effective_cap() const {
    if (!layer_cap) return std::numeric_limits<int>::max() - 1;
    if (*layer_cap < 0) throw std::invalid_argument("layer cap must be >= 0");
    return *layer_cap;
  }
};

/// Hierarchical structural distances. Each stored pair (u < v) carries its
/// cumulative distance per layer k = 0..; a pair's vector ends at the first
/// layer where either node runs out of rings. Values are nonnegative,
/// finite and non-decreasing in k.
struct DistanceTable {
  struct Pair {
    int u = 0;
    int v = 0;
    std::vector<double> f;  // f[k], layers 0..f.size()-1
  };

  std::vector<Pair> pairs;  // sorted by (u, v), u < v
  int layer_count = 0;

  const std::vector<double>* lookup(int u, int v) const {
    if (u == v) return nullptr;
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(u, v),
                               [](const Pair& p, const std::pair<int, int>& key) {
                                 return std::make_pair(p.u, p.v) < key;
                               });
    if (it == pairs.end() || it->u != u || it->v != v) return nullptr;
    return &it->f;
  }
};

/// Nodes ordered by (degree, id); the position index makes each node's slot
/// in the ordering unique, which keeps candidate windows deterministic.
struct DegreeIndex {
  std::vector<int> order;  // node ids, ascending by (degree, id)
  std::vector<int> pos;    // node id -> position in order

  static DegreeIndex build(const Graph& g) {
    DegreeIndex idx;
    idx.order.resize(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) idx.order[u] = u;
    std::sort(idx.order.begin(), idx.order.end(), [&](int a, int b) {
      return std::make_pair(g.degree(a), a) < std::make_pair(g.degree(b), b);
    });
    idx.pos.resize(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) idx.pos[idx.order[i]] = i;
    return idx;
  }
};

/// Degree-similar candidate set J_u: ceil(log2 n) consecutive positions on
/// each side of u in the degree-sorted order, u itself excluded.
inline std::vector<int> select_neighbors(const Graph& g, const DegreeIndex& index, int u) {
  if (u < 0 || u >= g.node_count()) throw std::invalid_argument("invalid node id");
  const int n = g.node_count();
  const int w = n > 1 ? static_cast<int>(std::bit_width(static_cast<unsigned>(n - 1))) : 0;
  const int p = index.pos[u];
  std::vector<int> out;
  out.reserve(2 * static_cast<std::size_t>(w));
  for (int i = std::max(0, p - w); i <= std::min(n - 1, p + w); ++i)
    if (i != p) out.push_back(index.order[i]);
  return out;
}

inline std::vector<int> select_neighbors(const Graph& g, int u) {
  return select_neighbors(g, DegreeIndex::build(g), u);
}

namespace detail {

/// Per-node ring degree sequences, kept run-length encoded. Built from one
/// truncated BFS per node; a shared counting buffer avoids re-sorting whole
/// rings.
struct RingSequences {
  // seqs[u][k] = ascending (degree, count) runs of ring k around u.
  std::vector<std::vector<std::vector<DegreeRun>>> seqs;

  static RingSequences build(const Graph& g, int max_layer) {
    const int n = g.node_count();
    RingSequences rs;
    rs.seqs.resize(n);

    std::vector<int> depth(n);
    std::vector<int> frontier, next;
    int max_degree = 0;
    for (int u = 0; u < n; ++u) max_degree = std::max(max_degree, g.degree(u));
    std::vector<int> count(max_degree + 1, 0);
    std::vector<int> touched;

    for (int u = 0; u < n; ++u) {
      std::fill(depth.begin(), depth.end(), -1);
      depth[u] = 0;
      frontier.assign(1, u);
      int k = 0;
      while (!frontier.empty() && k <= max_layer) {
        touched.clear();
        for (int v : frontier) {
          int d = g.degree(v);
          if (count[d]++ == 0) touched.push_back(d);
        }
        std::sort(touched.begin(), touched.end());
        std::vector<DegreeRun> runs;
        runs.reserve(touched.size());
        for (int d : touched) {
          runs.emplace_back(d, count[d]);
          count[d] = 0;
        }
        rs.seqs[u].push_back(std::move(runs));

        next.clear();
        for (int v : frontier)
          for (int w : g.neighbors(v))
            if (depth[w] < 0) {
              depth[w] = k + 1;
              next.push_back(w);
            }
        frontier.swap(next);
        ++k;
      }
    }
    return rs;
  }

  int layers(int u) const { return static_cast<int>(seqs[u].size()); }
};

inline std::vector<std::pair<int, int>> candidate_pairs(const Graph& g,
                                                        const SimilarityConfig& cfg) {
  const int n = g.node_count();
  std::vector<std::pair<int, int>> pairs;
  if (!cfg.neighbor_limit) {
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return pairs;
  }
  // Symmetrized candidate set: (u,v) kept if v in J_u or u in J_v.
  DegreeIndex index = DegreeIndex::build(g);
  for (int u = 0; u < n; ++u)
    for (int v : select_neighbors(g, index, u))
      pairs.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace detail

/// Computes the layered structural distance table for every candidate pair:
/// f_k(u,v) = f_{k-1}(u,v) + dtw(ring_k(u) degrees, ring_k(v) degrees),
/// accumulated while both rings are nonempty.
inline DistanceTable structural_distances(const Graph& g, const SimilarityConfig& cfg,
                                          int threads = 1) {
  const int cap = cfg.effective_cap();
  detail::RingSequences rings = detail::RingSequences::build(g, cap);
  std::vector<std::pair<int, int>> cand = detail::candidate_pairs(g, cfg);

  DistanceTable table;
  table.pairs.resize(cand.size());

  auto compute_range = [&](std::size_t begin, std::size_t end) {
    std::vector<int> plain_a, plain_b;
    for (std::size_t i = begin; i < end; ++i) {
      auto [u, v] = cand[i];
      DistanceTable::Pair entry;
      entry.u = u;
      entry.v = v;
      const int layers = std::min({rings.layers(u), rings.layers(v), cap + 1});
      entry.f.reserve(layers);
      double acc = 0.0;
      for (int k = 0; k < layers; ++k) {
        const auto& ru = rings.seqs[u][k];
        const auto& rv = rings.seqs[v][k];
        if (cfg.compress_sequences) {
          acc += dtw(ru, rv, compressed_cost);
        } else {
          plain_a = expand(ru);
          plain_b = expand(rv);
          acc += dtw(plain_a, plain_b, degree_cost);
        }
        entry.f.push_back(acc);
      }
      table.pairs[i] = std::move(entry);
    }
  };

  if (threads <= 1 || cand.size() < 1024) {
    compute_range(0, cand.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (cand.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(cand.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(compute_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& p : table.pairs)
    table.layer_count = std::max(table.layer_count, static_cast<int>(p.f.size()));
  return table;
}

/// Text dump, one line per (layer, pair): "k u v f_k" with enough digits to
/// round-trip doubles exactly.
inline void save_distance_table(const DistanceTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write distance table: " + path);
  char buf[64];
  for (const auto& p : table.pairs)
    for (std::size_t k = 0; k < p.f.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", p.f[k]);
      out << k << " " << p.u << " " << p.v << " " << buf << "\n";
    }
}

inline DistanceTable load_distance_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distance table: " + path);
  std::unordered_map<std::uint64_t, std::vector<double>> acc;
  int k, u, v;
  double f;
  while (in >> k >> u >> v >> f) {
    auto& vec = acc[(static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v)];
    if (static_cast<int>(vec.size()) <= k) vec.resize(k + 1, -1.0);
    vec[k] = f;
  }
  DistanceTable table;
  table.pairs.reserve(acc.size());
  for (auto& [key, vec] : acc) {
    DistanceTable::Pair p;
    p.u = static_cast<int>(key >> 32);
    p.v = static_cast<int>(key & 0xffffffffu);
    p.f = std::move(vec);
    table.pairs.push_back(std::move(p));
  }
  std::sort(table.pairs.begin(), table.pairs.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
  });
  for (const auto& p : table.pairs)
    table.layer_count = std::max(table.layer_count, static_cast<int>(p.f.size()));
  return table;
}

}  // namespace rolevec
