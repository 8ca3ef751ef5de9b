#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rolevec/graph.hpp"
#include "rolevec/multilayer.hpp"
#include "rolevec/rng.hpp"

namespace rolevec {

struct WalkConfig {
  double stay_probability = 0.3;  // q: chance of stepping within the layer
  int walks_per_node = 10;
  int walk_length = 80;  // emitted tokens per walk
  std::uint64_t seed = 1;

  void validate() const {
    if (!(stay_probability > 0.0 && stay_probability <= 1.0))
      throw std::invalid_argument("stay_probability must be in (0, 1]");
    if (walks_per_node < 1 || walk_length < 1)
      throw std::invalid_argument("walks_per_node and walk_length must be positive");
  }
};

struct WalkCorpus {
  std::vector<std::vector<int>> sequences;
};

namespace detail {

// stream tags so walk randomness never collides across stages
constexpr std::uint64_t kBiasedWalkTag = 0x77616c6bULL;
constexpr std::uint64_t kPlainWalkTag = 0x706c6169ULL;

inline int sample_weighted(const std::vector<std::pair<int, double>>& nb, double total,
                           Rng& rng) {
  // Cumulative-sum inversion over the neighbor weights.
  double r = rng.next_double() * total;
  double acc = 0.0;
  for (const auto& [v, w] : nb) {
    acc += w;
    if (r < acc) return v;
  }
  return nb.back().first;  // guard against rounding at the boundary
}

}  // namespace detail

/// Biased random walk over the multilayer graph, started at the node's
/// layer-0 vertex. Intra-layer steps follow probabilities proportional to
/// the edge weights and emit the visited node; layer changes follow the
/// up/down weights and emit nothing. The start node is the first token and
/// the walk ends once walk_length tokens are out.
inline std::vector<int> biased_walk(const MultilayerGraph& m, int start, int walk_length,
                                    double stay_probability, Rng& rng) {
  std::vector<int> tokens;
  tokens.reserve(walk_length);
  tokens.push_back(start);
  int u = start;
  int k = 0;
  while (static_cast<int>(tokens.size()) < walk_length) {
    const auto& nb = m.neighbors(k, u);
    bool stay = rng.next_double() < stay_probability;
    if (stay && !nb.empty()) {
      u = detail::sample_weighted(nb, m.normalization(k, u), rng);
      tokens.push_back(u);
      continue;
    }
    // Layer change (forced when the vertex has no intra-layer edges).
    bool can_up = k < m.top_layer();
    bool can_down = k > 0;
    if (!can_up && !can_down) {
      if (!nb.empty()) {
        u = detail::sample_weighted(nb, m.normalization(k, u), rng);
        tokens.push_back(u);
      } else {
        tokens.push_back(u);  // single-layer vertex with no edges
      }
      continue;
    }
    if (!can_up) {
      --k;
    } else if (!can_down) {
      ++k;
    } else {
      double up = m.up_weight(k, u);
      double p_up = up / (up + m.down_weight(k, u));
      k += rng.next_double() < p_up ? 1 : -1;
    }
  }
  return tokens;
}

/// Uniform random walk on the original graph; every visited node is a
/// token, starting with the start node itself.
inline std::vector<int> plain_walk(const Graph& g, int start, int walk_length, Rng& rng) {
  if (start < 0 || start >= g.node_count()) throw std::invalid_argument("invalid start node");
  std::vector<int> tokens;
  tokens.reserve(walk_length);
  tokens.push_back(start);
  int u = start;
  while (static_cast<int>(tokens.size()) < walk_length) {
    const auto& nb = g.neighbors(u);
    u = nb[rng.next_below(nb.size())];
    tokens.push_back(u);
  }
  return tokens;
}

namespace detail {

template <typename WalkFn>
WalkCorpus generate_corpus(int node_count, const WalkConfig& cfg, std::uint64_t tag,
                           WalkFn&& walk_fn, int threads) {
  cfg.validate();
  WalkCorpus corpus;
  corpus.sequences.resize(static_cast<std::size_t>(cfg.walks_per_node) * node_count);
  auto run = [&](int t_begin, int t_end) {
    for (int w = t_begin; w < t_end; ++w)
      for (int u = 0; u < node_count; ++u) {
        Rng rng(stream_seed(cfg.seed, tag, static_cast<std::uint64_t>(u),
                            static_cast<std::uint64_t>(w)));
        corpus.sequences[static_cast<std::size_t>(w) * node_count + u] = walk_fn(u, rng);
      }
  };
  if (threads <= 1 || cfg.walks_per_node == 1) {
    run(0, cfg.walks_per_node);
  } else {
    // Each walk owns a seed derived from (seed, node, index), so the split
    // over threads cannot change the corpus.
    std::vector<std::thread> pool;
    int chunk = (cfg.walks_per_node + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int begin = t * chunk;
      int end = std::min(cfg.walks_per_node, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return corpus;
}

}  // namespace detail

/// walks_per_node biased walks from every node.
inline WalkCorpus generate_corpus(const MultilayerGraph& m, const WalkConfig& cfg,
                                  int threads = 1) {
  return detail::generate_corpus(
      m.node_count(), cfg, detail::kBiasedWalkTag,
      [&](int u, Rng& rng) {
        return biased_walk(m, u, cfg.walk_length, cfg.stay_probability, rng);
      },
      threads);
}

/// walks_per_node plain walks from every node (the proximity baseline).
inline WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg, int threads = 1) {
  return detail::generate_corpus(
      g.node_count(), cfg, detail::kPlainWalkTag,
      [&](int u, Rng& rng) { return plain_walk(g, u, cfg.walk_length, rng); }, threads);
}

/// One walk per line, space-separated dense node ids.
inline void save_corpus(const WalkCorpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus: " + path);
  for (const auto& seq : corpus.sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) out << (i ? " " : "") << seq[i];
    out << "\n";
  }
}

}  // namespace rolevec
