#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rolevec/distance.hpp"
#include "rolevec/embedding.hpp"
#include "rolevec/graph.hpp"
#include "rolevec/multilayer.hpp"
#include "rolevec/walk.hpp"

namespace rolevec {

/// Everything needed to turn a graph into an embedding. The master seed is
/// expanded into independent per-stage streams.
struct PipelineOptions {
  SimilarityConfig similarity;
  double stay_probability = 0.3;
  int walks_per_node = 10;
  int walk_length = 80;
  TrainConfig train;
  bool baseline_plain = false;  // uniform walk on the input graph instead of
                                // the multilayer graph
  std::uint64_t seed = 1;
  int threads = 1;
};

struct StageTiming {
  std::string stage;
  double seconds;
};

struct PipelineResult {
  EmbeddingMatrix embedding;
  DistanceTable distances;  // empty in baseline mode
  std::vector<StageTiming> timings;

  double total_seconds() const {
    double t = 0.0;
    for (const auto& s : timings) t += s.seconds;
    return t;
  }
};

/// distances -> multilayer -> walks -> training. In baseline mode the
/// distance and multilayer stages are skipped and plain walks run on the
/// input graph.
inline PipelineResult run_embed_pipeline(const Graph& g, PipelineOptions opts) {
  using Clock = std::chrono::steady_clock;
  PipelineResult result;

  WalkConfig walk_cfg;
  walk_cfg.stay_probability = opts.stay_probability;
  walk_cfg.walks_per_node = opts.walks_per_node;
  walk_cfg.walk_length = opts.walk_length;
  walk_cfg.seed = stream_seed(opts.seed, 1);
  opts.train.seed = stream_seed(opts.seed, 2);
  opts.train.threads = opts.threads;

  auto timed = [&](const char* stage, auto&& fn) {
    auto t0 = Clock::now();
    try {
      auto value = fn();
      result.timings.push_back({stage, std::chrono::duration<double>(Clock::now() - t0).count()});
      return value;
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(stage) + " stage failed: " + e.what());
    }
  };

  WalkCorpus corpus;
  if (opts.baseline_plain) {
    corpus = timed("walks", [&] { return generate_corpus(g, walk_cfg, opts.threads); });
  } else {
    result.distances = timed(
        "distances", [&] { return structural_distances(g, opts.similarity, opts.threads); });
    MultilayerGraph m = timed(
        "multilayer", [&] { return build_multilayer(result.distances, g.node_count()); });
    corpus = timed("walks", [&] { return generate_corpus(m, walk_cfg, opts.threads); });
  }
  result.embedding =
      timed("training", [&] { return train_embeddings(corpus, opts.train); });
  return result;
}

}  // namespace rolevec
