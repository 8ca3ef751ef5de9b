#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rolevec/matrix.hpp"
#include "rolevec/rng.hpp"
#include "rolevec/walk.hpp"

namespace rolevec {

enum class Objective { kHierarchicalSoftmax, kNegativeSampling };

struct TrainConfig {
  int dimensions = 2;
  int window = 5;
  int epochs = 5;
  float initial_learning_rate = 0.025f;
  Objective objective = Objective::kHierarchicalSoftmax;
  int negative_samples = 5;
  bool dynamic_window = true;  // per-center window drawn uniformly from 1..window
  std::uint64_t seed = 1;
  int threads = 1;  // >1 applies unsynchronized updates (non-deterministic)

  void validate() const {
    if (dimensions < 1) throw std::invalid_argument("dimensions must be >= 1");
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (!(initial_learning_rate > 0)) throw std::invalid_argument("learning rate must be > 0");
    if (objective == Objective::kNegativeSampling && negative_samples < 1)
      throw std::invalid_argument("negative_samples must be >= 1");
  }
};

/// One d-dimensional row per node; the principal output of the pipeline.
struct EmbeddingMatrix {
  Matrix<float> vectors;
  TrainConfig config;
};

template <typename Real>
Real sigmoid(Real x) {
  if (x > Real(30)) x = Real(30);
  if (x < Real(-30)) x = Real(-30);
  return Real(1) / (Real(1) + std::exp(-x));
}

/// Huffman coding tree over the corpus vocabulary. Leaves are the tokens;
/// each leaf stores its root-to-leaf internal-node path and branch codes.
struct HSTree {
  int vocab_size = 0;
  std::vector<std::vector<int>> paths;           // [leaf] -> internal node ids, root first
  std::vector<std::vector<std::uint8_t>> codes;  // [leaf] -> branch bit per path node

  int internal_count() const { return vocab_size > 1 ? vocab_size - 1 : 0; }
};

inline HSTree build_hs_tree(const std::vector<long long>& frequencies) {
  const int vocab = static_cast<int>(frequencies.size());
  if (vocab == 0) throw std::invalid_argument("empty vocabulary");

  HSTree tree;
  tree.vocab_size = vocab;
  tree.paths.resize(vocab);
  tree.codes.resize(vocab);
  if (vocab == 1) return tree;  // single leaf, empty path

  // Deterministic Huffman merge: ties broken by node id.
  using Entry = std::pair<long long, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int i = 0; i < vocab; ++i) heap.emplace(frequencies[i], i);

  std::vector<int> parent(2 * vocab - 1, -1);
  std::vector<std::uint8_t> branch(2 * vocab - 1, 0);
  int next_internal = vocab;
  while (heap.size() > 1) {
    Entry a = heap.top();
    heap.pop();
    Entry b = heap.top();
    heap.pop();
    parent[a.second] = next_internal;
    parent[b.second] = next_internal;
    branch[b.second] = 1;
    heap.emplace(a.first + b.first, next_internal);
    ++next_internal;
  }

  for (int leaf = 0; leaf < vocab; ++leaf) {
    std::vector<int> path;
    std::vector<std::uint8_t> code;
    for (int node = leaf; parent[node] >= 0; node = parent[node]) {
      path.push_back(parent[node] - vocab);  // internal index 0..vocab-2
      code.push_back(branch[node]);
    }
    std::reverse(path.begin(), path.end());
    std::reverse(code.begin(), code.end());
    tree.paths[leaf] = std::move(path);
    tree.codes[leaf] = std::move(code);
  }
  return tree;
}

inline std::vector<long long> token_frequencies(const WalkCorpus& corpus) {
  long long max_token = -1;
  for (const auto& seq : corpus.sequences)
    for (int t : seq) {
      if (t < 0) throw std::invalid_argument("negative token in corpus");
      max_token = std::max(max_token, static_cast<long long>(t));
    }
  if (max_token < 0) throw std::invalid_argument("empty corpus");
  std::vector<long long> freq(max_token + 1, 0);
  for (const auto& seq : corpus.sequences)
    for (int t : seq) freq[t]++;
  return freq;
}

inline HSTree build_hs_tree(const WalkCorpus& corpus) {
  return build_hs_tree(token_frequencies(corpus));
}

/// P(target | center) under the classifier tree: the product of the sigmoid
/// branch probabilities along the target's path.
template <typename Real>
double hs_probability(const HSTree& tree, const Matrix<Real>& classifiers,
                      std::span<const Real> center, int target) {
  if (target < 0 || target >= tree.vocab_size) throw std::invalid_argument("unknown target");
  double p = 1.0;
  const auto& path = tree.paths[target];
  const auto& code = tree.codes[target];
  for (std::size_t i = 0; i < path.size(); ++i) {
    double dot = 0.0;
    const Real* w = classifiers.row(path[i]);
    for (std::size_t j = 0; j < center.size(); ++j) dot += double(center[j]) * double(w[j]);
    p *= sigmoid(code[i] ? -dot : dot);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Per-pair losses, gradients and fused SGD steps. The same templates back
// the float training loop and the double-precision checks in the tests.
// ---------------------------------------------------------------------------

template <typename Real>
double hs_pair_loss(const Real* center, int dims, const Matrix<Real>& classifiers,
                    const HSTree& tree, int target) {
  double loss = 0.0;
  const auto& path = tree.paths[target];
  const auto& code = tree.codes[target];
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Real* w = classifiers.row(path[i]);
    double dot = 0.0;
    for (int j = 0; j < dims; ++j) dot += double(center[j]) * double(w[j]);
    loss -= std::log(sigmoid(code[i] ? -dot : dot));
  }
  return loss;
}

/// Loss plus analytic gradients w.r.t. the center vector and each touched
/// classifier row.
template <typename Real>
double hs_pair_loss_grad(const Real* center, int dims, const Matrix<Real>& classifiers,
                         const HSTree& tree, int target, std::vector<Real>& grad_center,
                         std::vector<std::pair<int, std::vector<Real>>>& grad_rows) {
  grad_center.assign(dims, Real(0));
  grad_rows.clear();
  double loss = 0.0;
  const auto& path = tree.paths[target];
  const auto& code = tree.codes[target];
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Real* w = classifiers.row(path[i]);
    double dot = 0.0;
    for (int j = 0; j < dims; ++j) dot += double(center[j]) * double(w[j]);
    double sig = sigmoid(dot);
    loss -= std::log(sigmoid(code[i] ? -dot : dot));
    // dL/ddot = sigma(dot) - (1 - code)
    Real dldot = static_cast<Real>(sig - (1.0 - code[i]));
    std::vector<Real> gw(dims);
    for (int j = 0; j < dims; ++j) {
      grad_center[j] += dldot * w[j];
      gw[j] = dldot * center[j];
    }
    grad_rows.emplace_back(path[i], std::move(gw));
  }
  return loss;
}

/// Fused SGD step on one (center, context) pair, hierarchical softmax.
template <typename Real>
void hs_pair_update(Real* center, int dims, Matrix<Real>& classifiers, const HSTree& tree,
                    int target, Real lr, Real* scratch) {
  std::fill(scratch, scratch + dims, Real(0));
  const auto& path = tree.paths[target];
  const auto& code = tree.codes[target];
  for (std::size_t i = 0; i < path.size(); ++i) {
    Real* w = classifiers.row(path[i]);
    Real dot = Real(0);
    for (int j = 0; j < dims; ++j) dot += center[j] * w[j];
    Real g = (Real(1) - Real(code[i]) - sigmoid(dot)) * lr;
    for (int j = 0; j < dims; ++j) scratch[j] += g * w[j];
    for (int j = 0; j < dims; ++j) w[j] += g * center[j];
  }
  for (int j = 0; j < dims; ++j) center[j] += scratch[j];
}

template <typename Real>
double ns_pair_loss(const Real* center, int dims, const Matrix<Real>& outputs, int positive,
                    std::span<const int> negatives) {
  auto dot_row = [&](int row) {
    const Real* w = outputs.row(row);
    double dot = 0.0;
    for (int j = 0; j < dims; ++j) dot += double(center[j]) * double(w[j]);
    return dot;
  };
  double loss = -std::log(sigmoid(dot_row(positive)));
  for (int neg : negatives) loss -= std::log(sigmoid(-dot_row(neg)));
  return loss;
}

template <typename Real>
double ns_pair_loss_grad(const Real* center, int dims, const Matrix<Real>& outputs,
                         int positive, std::span<const int> negatives,
                         std::vector<Real>& grad_center,
                         std::vector<std::pair<int, std::vector<Real>>>& grad_rows) {
  grad_center.assign(dims, Real(0));
  grad_rows.clear();
  double loss = 0.0;
  auto sample = [&](int row, double label) {
    const Real* w = outputs.row(row);
    double dot = 0.0;
    for (int j = 0; j < dims; ++j) dot += double(center[j]) * double(w[j]);
    double sig = sigmoid(dot);
    loss -= std::log(label > 0.5 ? sigmoid(dot) : sigmoid(-dot));
    Real dldot = static_cast<Real>(sig - label);
    std::vector<Real> gw(dims);
    for (int j = 0; j < dims; ++j) {
      grad_center[j] += dldot * w[j];
      gw[j] = dldot * center[j];
    }
    grad_rows.emplace_back(row, std::move(gw));
  };
  sample(positive, 1.0);
  for (int neg : negatives) sample(neg, 0.0);
  return loss;
}

/// Fused SGD step on one pair plus its negative samples.
template <typename Real>
void ns_pair_update(Real* center, int dims, Matrix<Real>& outputs, int positive,
                    std::span<const int> negatives, Real lr, Real* scratch) {
  std::fill(scratch, scratch + dims, Real(0));
  auto step = [&](int row, Real label) {
    Real* w = outputs.row(row);
    Real dot = Real(0);
    for (int j = 0; j < dims; ++j) dot += center[j] * w[j];
    Real g = (label - sigmoid(dot)) * lr;
    for (int j = 0; j < dims; ++j) scratch[j] += g * w[j];
    for (int j = 0; j < dims; ++j) w[j] += g * center[j];
  };
  step(positive, Real(1));
  for (int neg : negatives) step(neg, Real(0));
  for (int j = 0; j < dims; ++j) center[j] += scratch[j];
}

/// Draws noise tokens from the unigram^(3/4) distribution by cumulative-sum
/// inversion.
class NoiseSampler {
 public:
  explicit NoiseSampler(const std::vector<long long>& frequencies) {
    cumulative_.reserve(frequencies.size());
    double acc = 0.0;
    for (long long f : frequencies) {
      acc += std::pow(static_cast<double>(f), 0.75);
      cumulative_.push_back(acc);
    }
    if (acc <= 0.0) throw std::invalid_argument("noise distribution has zero mass");
  }

  int draw(Rng& rng) const {
    double r = rng.next_double() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

/// Seeded uniform init in [-0.5/d, 0.5/d); exposed so tests can reproduce
/// the exact starting point of a training run.
inline Matrix<float> init_embedding(int vocab, const TrainConfig& cfg) {
  Matrix<float> m(vocab, cfg.dimensions);
  Rng rng(stream_seed(cfg.seed, 0x696e6974ULL));
  const float scale = 1.0f / static_cast<float>(cfg.dimensions);
  for (auto& x : m.data) x = (static_cast<float>(rng.next_double()) - 0.5f) * scale;
  return m;
}

/// Output-side parameters of a finished training run, for inspection and
/// loss evaluation in tests.
struct TrainerArtifacts {
  HSTree tree;
  Matrix<float> hs_classifiers;
  Matrix<float> ns_outputs;
  std::vector<long long> frequencies;
};

namespace detail {
constexpr std::uint64_t kTrainTag = 0x747261696eULL;
}

/// Skip-gram SGD over the walk corpus. Input vectors are the embedding;
/// the learning rate decays linearly to 1e-4 of its initial value across
/// all updates. Single-threaded runs are bit-for-bit reproducible.
inline EmbeddingMatrix train_embeddings(const WalkCorpus& corpus, const TrainConfig& cfg,
                                        TrainerArtifacts* artifacts = nullptr) {
  cfg.validate();
  std::vector<long long> freq = token_frequencies(corpus);
  const int vocab = static_cast<int>(freq.size());
  const int dims = cfg.dimensions;

  Matrix<float> syn0 = init_embedding(vocab, cfg);
  HSTree tree;
  Matrix<float> hs_classifiers;
  Matrix<float> ns_outputs;
  NoiseSampler* noise = nullptr;
  NoiseSampler noise_storage({1});
  if (cfg.objective == Objective::kHierarchicalSoftmax) {
    tree = build_hs_tree(freq);
    hs_classifiers = Matrix<float>(tree.internal_count(), dims);
  } else {
    ns_outputs = Matrix<float>(vocab, dims);
    noise_storage = NoiseSampler(freq);
    noise = &noise_storage;
  }

  long long tokens_total = 0;
  for (const auto& seq : corpus.sequences) tokens_total += static_cast<long long>(seq.size());
  const double total_work = static_cast<double>(tokens_total) * cfg.epochs;
  std::atomic<long long> processed{0};
  const float lr0 = cfg.initial_learning_rate;

  auto train_slice = [&](std::size_t walk_begin, std::size_t walk_end, std::uint64_t stream) {
    Rng rng(stream_seed(cfg.seed, detail::kTrainTag, stream));
    std::vector<float> scratch(dims);
    std::vector<int> negatives;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      for (std::size_t s = walk_begin; s < walk_end; ++s) {
        const auto& walk = corpus.sequences[s];
        const int len = static_cast<int>(walk.size());
        for (int pos = 0; pos < len; ++pos) {
          long long done = processed.fetch_add(1, std::memory_order_relaxed);
          float lr = lr0 * std::max(1e-4, 1.0 - static_cast<double>(done) / total_work);
          const int center = walk[pos];
          const int span = cfg.dynamic_window
                               ? 1 + static_cast<int>(rng.next_below(cfg.window))
                               : cfg.window;
          for (int off = -span; off <= span; ++off) {
            if (off == 0) continue;
            const int j = pos + off;
            if (j < 0 || j >= len) continue;
            const int context = walk[j];
            if (cfg.objective == Objective::kHierarchicalSoftmax) {
              hs_pair_update(syn0.row(center), dims, hs_classifiers, tree, context, lr,
                             scratch.data());
            } else {
              negatives.clear();
              for (int k = 0; k < cfg.negative_samples; ++k) {
                int cand = noise->draw(rng);
                if (cand != context) negatives.push_back(cand);
              }
              ns_pair_update(syn0.row(center), dims, ns_outputs, context,
                             std::span<const int>(negatives), lr, scratch.data());
            }
          }
        }
      }
    }
  };

  if (cfg.threads <= 1) {
    train_slice(0, corpus.sequences.size(), 0);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (corpus.sequences.size() + cfg.threads - 1) / cfg.threads;
    for (int t = 0; t < cfg.threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(corpus.sequences.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(train_slice, begin, end, static_cast<std::uint64_t>(t));
    }
    for (auto& th : pool) th.join();
  }

  for (float x : syn0.data)
    if (!std::isfinite(x)) throw std::runtime_error("non-finite embedding value after training");

  if (artifacts) {
    artifacts->tree = std::move(tree);
    artifacts->hs_classifiers = std::move(hs_classifiers);
    artifacts->ns_outputs = std::move(ns_outputs);
    artifacts->frequencies = std::move(freq);
  }
  return EmbeddingMatrix{std::move(syn0), cfg};
}

// ---------------------------------------------------------------------------
// Embedding file format: header "n d", then one line per node with the
// external id and d values at 6 significant digits.
// ---------------------------------------------------------------------------

inline void save_embedding(const EmbeddingMatrix& emb, const std::vector<std::string>& labels,
                           const std::string& path) {
  if (static_cast<int>(labels.size()) != emb.vectors.rows)
    throw std::invalid_argument("label count does not match embedding rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embedding: " + path);
  out << emb.vectors.rows << " " << emb.vectors.cols << "\n";
  char buf[48];
  for (int i = 0; i < emb.vectors.rows; ++i) {
    out << labels[i];
    const float* row = emb.vectors.row(i);
    for (int j = 0; j < emb.vectors.cols; ++j) {
      std::snprintf(buf, sizeof(buf), "%.6g", static_cast<double>(row[j]));
      out << " " << buf;
    }
    out << "\n";
  }
}

struct LoadedEmbedding {
  std::vector<std::string> labels;
  Matrix<float> vectors;
  std::unordered_map<std::string, int> index;

  int require_label(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end()) throw std::invalid_argument("embedding missing node: " + label);
    return it->second;
  }
};

inline LoadedEmbedding load_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding: " + path);
  int n = 0, d = 0;
  if (!(in >> n >> d) || n < 1 || d < 1)
    throw std::runtime_error("malformed embedding header in " + path);
  LoadedEmbedding out;
  out.vectors = Matrix<float>(n, d);
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!(in >> out.labels[i])) throw std::runtime_error("truncated embedding file: " + path);
    for (int j = 0; j < d; ++j)
      if (!(in >> out.vectors.at(i, j)))
        throw std::runtime_error("truncated embedding file: " + path);
    out.index.emplace(out.labels[i], i);
  }
  return out;
}

}  // namespace rolevec
