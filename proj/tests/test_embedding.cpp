#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "rolevec/embedding.hpp"
#include "rolevec/rng.hpp"
#include "util.hpp"

using namespace rolevec;

namespace {

WalkCorpus toy_corpus() {
  // two "communities" of interchangeable tokens plus a rare one
  WalkCorpus corpus;
  for (int rep = 0; rep < 30; ++rep) {
    corpus.sequences.push_back({0, 1, 2, 0, 1, 2, 0, 1});
    corpus.sequences.push_back({3, 4, 5, 3, 4, 5, 3, 4});
  }
  corpus.sequences.push_back({6, 0, 6, 3});
  return corpus;
}

Matrix<double> random_matrix(int rows, int cols, Rng& rng, double scale) {
  Matrix<double> m(rows, cols);
  for (auto& x : m.data) x = (rng.next_double() - 0.5) * scale;
  return m;
}

/// Average skip-gram loss over every (center, context) pair within a fixed
/// window. Negative draws, when used, come from a fixed-seed stream so the
/// before/after comparison is fair.
double corpus_average_loss(const WalkCorpus& corpus, int window, const Matrix<float>& syn0,
                           const HSTree& tree, const Matrix<float>& hs_rows,
                           const Matrix<float>& ns_rows, Objective objective,
                           const NoiseSampler* noise, int negative_samples) {
  Rng rng(987654);
  double total = 0.0;
  long long pairs = 0;
  std::vector<int> negatives;
  for (const auto& walk : corpus.sequences) {
    const int len = static_cast<int>(walk.size());
    for (int pos = 0; pos < len; ++pos)
      for (int off = -window; off <= window; ++off) {
        if (off == 0) continue;
        int j = pos + off;
        if (j < 0 || j >= len) continue;
        if (objective == Objective::kHierarchicalSoftmax) {
          total += hs_pair_loss(syn0.row(walk[pos]), syn0.cols, hs_rows, tree, walk[j]);
        } else {
          negatives.clear();
          for (int k = 0; k < negative_samples; ++k) {
            int cand = noise->draw(rng);
            if (cand != walk[j]) negatives.push_back(cand);
          }
          total += ns_pair_loss(syn0.row(walk[pos]), syn0.cols, ns_rows, walk[j],
                                std::span<const int>(negatives));
        }
        ++pairs;
      }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("huffman tree shapes", "[embedding]") {
  SECTION("two tokens have unit paths") {
    HSTree tree = build_hs_tree(std::vector<long long>{5, 3});
    REQUIRE(tree.paths[0].size() == 1);
    REQUIRE(tree.paths[1].size() == 1);
    REQUIRE(tree.internal_count() == 1);
  }

  SECTION("uniform power-of-two vocabulary is perfectly balanced") {
    HSTree tree = build_hs_tree(std::vector<long long>(16, 7));
    for (const auto& path : tree.paths) REQUIRE(path.size() == 4);
  }

  SECTION("most frequent token gets the shortest path") {
    std::vector<long long> freq{100, 40, 20, 10, 5, 3, 2, 1};
    HSTree tree = build_hs_tree(freq);
    std::size_t best = tree.paths[0].size();
    for (const auto& path : tree.paths) REQUIRE(best <= path.size());
  }

  SECTION("single token vocabulary has an empty path") {
    HSTree tree = build_hs_tree(std::vector<long long>{9});
    REQUIRE(tree.paths[0].empty());
    REQUIRE(tree.internal_count() == 0);
  }

  SECTION("empty vocabulary rejected") {
    REQUIRE_THROWS_AS(build_hs_tree(std::vector<long long>{}), std::invalid_argument);
  }

  SECTION("corpus overload counts tokens") {
    WalkCorpus corpus;
    corpus.sequences.push_back({0, 0, 1});
    HSTree tree = build_hs_tree(corpus);
    REQUIRE(tree.vocab_size == 2);
  }
}

TEST_CASE("hierarchical softmax probabilities", "[embedding]") {
  SECTION("zero classifiers give 2^-pathlength") {
    HSTree tree = build_hs_tree(std::vector<long long>(8, 1));
    Matrix<double> classifiers(tree.internal_count(), 4);
    std::vector<double> center{0.3, -0.2, 0.8, 0.1};
    for (int leaf = 0; leaf < 8; ++leaf)
      REQUIRE_THAT(hs_probability(tree, classifiers, std::span<const double>(center), leaf),
                   Catch::Matchers::WithinAbs(std::pow(2.0, -3.0), 1e-15));
  }

  SECTION("two leaves sum to one") {
    HSTree tree = build_hs_tree(std::vector<long long>{3, 1});
    Rng rng(8);
    Matrix<double> classifiers = random_matrix(tree.internal_count(), 3, rng, 2.0);
    std::vector<double> center{1.0, -2.0, 0.5};
    double p0 = hs_probability(tree, classifiers, std::span<const double>(center), 0);
    double p1 = hs_probability(tree, classifiers, std::span<const double>(center), 1);
    REQUIRE_THAT(p0 + p1, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }

  SECTION("leaf probabilities sum to one for vocabularies up to 64") {
    Rng rng(31);
    for (int vocab : {2, 3, 7, 16, 33, 64}) {
      std::vector<long long> freq(vocab);
      for (auto& f : freq) f = 1 + static_cast<long long>(rng.next_below(50));
      HSTree tree = build_hs_tree(freq);
      const int d = 5;
      Matrix<double> classifiers = random_matrix(tree.internal_count(), d, rng, 3.0);
      Matrix<double> centers = random_matrix(3, d, rng, 3.0);
      for (int c = 0; c < centers.rows; ++c) {
        double total = 0.0;
        for (int leaf = 0; leaf < vocab; ++leaf)
          total += hs_probability(tree, classifiers,
                                  std::span<const double>(centers.row(c), d), leaf);
        REQUIRE_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-9));
      }
    }
  }

  SECTION("unknown target rejected") {
    HSTree tree = build_hs_tree(std::vector<long long>{3, 1});
    Matrix<double> classifiers(tree.internal_count(), 2);
    std::vector<double> center{0.1, 0.2};
    REQUIRE_THROWS_AS(hs_probability(tree, classifiers, std::span<const double>(center), 5),
                      std::invalid_argument);
  }
}

TEST_CASE("analytic gradients match central finite differences", "[embedding][oracle]") {
  const int d = 6;
  const double step = 1e-6;
  const double tolerance = 1e-4;
  Rng rng(2718);

  auto check = [&](auto loss_fn, auto grad_fn, Matrix<double>& rows,
                   std::vector<double>& center) {
    std::vector<double> grad_center;
    std::vector<std::pair<int, std::vector<double>>> grad_rows;
    grad_fn(center.data(), rows, grad_center, grad_rows);

    auto rel_err = [](double a, double b) {
      return std::abs(a - b) / std::max({1e-8, std::abs(a), std::abs(b)});
    };

    for (int j = 0; j < d; ++j) {
      double keep = center[j];
      center[j] = keep + step;
      double up = loss_fn(center.data(), rows);
      center[j] = keep - step;
      double down = loss_fn(center.data(), rows);
      center[j] = keep;
      double fd = (up - down) / (2.0 * step);
      if (std::abs(fd) < 1e-10 && std::abs(grad_center[j]) < 1e-10) continue;
      REQUIRE(rel_err(fd, grad_center[j]) <= tolerance);
    }
    // aggregate duplicate rows (a noise draw can repeat)
    std::map<int, std::vector<double>> combined;
    for (const auto& [row, grad] : grad_rows) {
      auto& acc = combined[row];
      if (acc.empty()) acc.assign(d, 0.0);
      for (int j = 0; j < d; ++j) acc[j] += grad[j];
    }
    for (const auto& [row, grad] : combined)
      for (int j = 0; j < d; ++j) {
        double keep = rows.at(row, j);
        rows.at(row, j) = keep + step;
        double up = loss_fn(center.data(), rows);
        rows.at(row, j) = keep - step;
        double down = loss_fn(center.data(), rows);
        rows.at(row, j) = keep;
        double fd = (up - down) / (2.0 * step);
        if (std::abs(fd) < 1e-10 && std::abs(grad[j]) < 1e-10) continue;
        REQUIRE(rel_err(fd, grad[j]) <= tolerance);
      }
  };

  SECTION("hierarchical softmax") {
    std::vector<long long> freq{9, 7, 5, 4, 3, 2, 2, 1, 1};
    HSTree tree = build_hs_tree(freq);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix<double> classifiers =
          random_matrix(tree.internal_count(), d, rng, 1.5);
      std::vector<double> center(d);
      for (auto& x : center) x = (rng.next_double() - 0.5) * 1.5;
      int target = static_cast<int>(rng.next_below(freq.size()));
      check(
          [&](const double* c, const Matrix<double>& m) {
            return hs_pair_loss(c, d, m, tree, target);
          },
          [&](const double* c, const Matrix<double>& m, std::vector<double>& gc,
              std::vector<std::pair<int, std::vector<double>>>& gr) {
            return hs_pair_loss_grad(c, d, m, tree, target, gc, gr);
          },
          classifiers, center);
    }
  }

  SECTION("negative sampling") {
    const int vocab = 12;
    for (int trial = 0; trial < 20; ++trial) {
      Matrix<double> outputs = random_matrix(vocab, d, rng, 1.5);
      std::vector<double> center(d);
      for (auto& x : center) x = (rng.next_double() - 0.5) * 1.5;
      int positive = static_cast<int>(rng.next_below(vocab));
      std::vector<int> negatives;
      for (int k = 0; k < 5; ++k) {
        int cand = static_cast<int>(rng.next_below(vocab));
        if (cand != positive) negatives.push_back(cand);
      }
      check(
          [&](const double* c, const Matrix<double>& m) {
            return ns_pair_loss(c, d, m, positive, std::span<const int>(negatives));
          },
          [&](const double* c, const Matrix<double>& m, std::vector<double>& gc,
              std::vector<std::pair<int, std::vector<double>>>& gr) {
            return ns_pair_loss_grad(c, d, m, positive, std::span<const int>(negatives),
                                     gc, gr);
          },
          outputs, center);
    }
  }
}

TEST_CASE("fused updates apply the analytic gradients", "[embedding][oracle]") {
  const int d = 4;
  const float lr = 0.37f;
  Rng rng(14142);

  SECTION("hierarchical softmax") {
    std::vector<long long> freq{5, 4, 3, 2, 1};
    HSTree tree = build_hs_tree(freq);
    Matrix<float> classifiers(tree.internal_count(), d);
    for (auto& x : classifiers.data) x = static_cast<float>((rng.next_double() - 0.5));
    std::vector<float> center(d);
    for (auto& x : center) x = static_cast<float>((rng.next_double() - 0.5));

    std::vector<float> grad_center;
    std::vector<std::pair<int, std::vector<float>>> grad_rows;
    hs_pair_loss_grad(center.data(), d, classifiers, tree, 3, grad_center, grad_rows);

    std::vector<float> center2 = center;
    Matrix<float> classifiers2 = classifiers;
    std::vector<float> scratch(d);
    hs_pair_update(center2.data(), d, classifiers2, tree, 3, lr, scratch.data());

    for (int j = 0; j < d; ++j)
      REQUIRE_THAT(center2[j], Catch::Matchers::WithinAbs(center[j] - lr * grad_center[j], 2e-6));
    // the fused step uses the pre-update center for classifier rows too
    for (const auto& [row, grad] : grad_rows)
      for (int j = 0; j < d; ++j)
        REQUIRE_THAT(classifiers2.at(row, j),
                     Catch::Matchers::WithinAbs(classifiers.at(row, j) - lr * grad[j], 2e-6));
  }

  SECTION("negative sampling") {
    Matrix<float> outputs(6, d);
    for (auto& x : outputs.data) x = static_cast<float>((rng.next_double() - 0.5));
    std::vector<float> center(d);
    for (auto& x : center) x = static_cast<float>((rng.next_double() - 0.5));
    std::vector<int> negatives{0, 2, 5};

    std::vector<float> grad_center;
    std::vector<std::pair<int, std::vector<float>>> grad_rows;
    ns_pair_loss_grad(center.data(), d, outputs, 4, std::span<const int>(negatives),
                      grad_center, grad_rows);

    std::vector<float> center2 = center;
    Matrix<float> outputs2 = outputs;
    std::vector<float> scratch(d);
    ns_pair_update(center2.data(), d, outputs2, 4, std::span<const int>(negatives), lr,
                   scratch.data());

    for (int j = 0; j < d; ++j)
      REQUIRE_THAT(center2[j], Catch::Matchers::WithinAbs(center[j] - lr * grad_center[j], 2e-6));
    for (const auto& [row, grad] : grad_rows)
      for (int j = 0; j < d; ++j)
        REQUIRE_THAT(outputs2.at(row, j),
                     Catch::Matchers::WithinAbs(outputs.at(row, j) - lr * grad[j], 2e-6));
  }
}

TEST_CASE("training lowers the average pair loss", "[embedding]") {
  WalkCorpus corpus = toy_corpus();
  for (Objective objective : {Objective::kHierarchicalSoftmax, Objective::kNegativeSampling}) {
    TrainConfig cfg;
    cfg.dimensions = 8;
    cfg.window = 2;
    cfg.epochs = 5;
    cfg.objective = objective;
    cfg.seed = 99;

    std::vector<long long> freq = token_frequencies(corpus);
    HSTree tree = build_hs_tree(freq);
    NoiseSampler noise(freq);
    Matrix<float> syn0_init = init_embedding(static_cast<int>(freq.size()), cfg);
    Matrix<float> hs_zero(tree.internal_count(), cfg.dimensions);
    Matrix<float> ns_zero(static_cast<int>(freq.size()), cfg.dimensions);

    double before = corpus_average_loss(corpus, cfg.window, syn0_init, tree, hs_zero, ns_zero,
                                        objective, &noise, cfg.negative_samples);

    TrainerArtifacts artifacts;
    EmbeddingMatrix emb = train_embeddings(corpus, cfg, &artifacts);
    double after = corpus_average_loss(corpus, cfg.window, emb.vectors, artifacts.tree,
                                       artifacts.hs_classifiers, artifacts.ns_outputs,
                                       objective, &noise, cfg.negative_samples);
    INFO("objective " << (objective == Objective::kHierarchicalSoftmax ? "hs" : "ns"));
    REQUIRE(after < before);
  }
}

TEST_CASE("training is deterministic for a fixed seed", "[embedding]") {
  WalkCorpus corpus = toy_corpus();
  TrainConfig cfg;
  cfg.dimensions = 4;
  cfg.epochs = 3;
  cfg.seed = 1234;
  for (Objective objective : {Objective::kHierarchicalSoftmax, Objective::kNegativeSampling}) {
    cfg.objective = objective;
    EmbeddingMatrix a = train_embeddings(corpus, cfg);
    EmbeddingMatrix b = train_embeddings(corpus, cfg);
    REQUIRE(a.vectors.data == b.vectors.data);  // bit-for-bit
    cfg.seed++;
    EmbeddingMatrix c = train_embeddings(corpus, cfg);
    REQUIRE(a.vectors.data != c.vectors.data);
    cfg.seed--;
  }
}

TEST_CASE("degenerate one-token corpus still trains", "[embedding]") {
  WalkCorpus corpus;
  corpus.sequences.assign(4, std::vector<int>(6, 0));
  TrainConfig cfg;
  cfg.dimensions = 2;
  EmbeddingMatrix emb = train_embeddings(corpus, cfg);
  REQUIRE(emb.vectors.rows == 1);
  for (float x : emb.vectors.data) REQUIRE(std::isfinite(x));
}

TEST_CASE("negative tokens are rejected", "[embedding]") {
  WalkCorpus corpus;
  corpus.sequences.push_back({0, -3, 1});
  TrainConfig cfg;
  REQUIRE_THROWS_AS(train_embeddings(corpus, cfg), std::invalid_argument);
}

TEST_CASE("noise sampler follows the 3/4-power unigram law", "[embedding]") {
  std::vector<long long> freq{1, 16, 81};
  NoiseSampler noise(freq);
  Rng rng(77);
  std::vector<long long> counts(3, 0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) counts[noise.draw(rng)]++;
  double total_mass = std::pow(1.0, 0.75) + std::pow(16.0, 0.75) + std::pow(81.0, 0.75);
  for (int t = 0; t < 3; ++t) {
    double expected = std::pow(static_cast<double>(freq[t]), 0.75) / total_mass;
    double got = static_cast<double>(counts[t]) / draws;
    REQUIRE_THAT(got, Catch::Matchers::WithinAbs(expected, 0.01));
  }
}

TEST_CASE("embedding files round-trip with 6 significant digits", "[embedding]") {
  WalkCorpus corpus = toy_corpus();
  TrainConfig cfg;
  cfg.dimensions = 3;
  cfg.epochs = 1;
  EmbeddingMatrix emb = train_embeddings(corpus, cfg);
  std::vector<std::string> labels;
  for (int i = 0; i < emb.vectors.rows; ++i) labels.push_back("n" + std::to_string(i));

  testutil::TempFile f("embedding");
  save_embedding(emb, labels, f.path());

  LoadedEmbedding loaded = load_embedding(f.path());
  REQUIRE(loaded.vectors.rows == emb.vectors.rows);
  REQUIRE(loaded.vectors.cols == 3);
  REQUIRE(loaded.labels == labels);
  REQUIRE(loaded.require_label("n2") == 2);
  for (int i = 0; i < emb.vectors.rows; ++i)
    for (int j = 0; j < 3; ++j) {
      double orig = emb.vectors.at(i, j);
      double back = loaded.vectors.at(i, j);
      REQUIRE_THAT(back, Catch::Matchers::WithinRel(orig, 1e-5));
    }

  std::string header = f.read().substr(0, f.read().find('\n'));
  REQUIRE(header == std::to_string(emb.vectors.rows) + " 3");

  SECTION("label count must match") {
    labels.pop_back();
    REQUIRE_THROWS_AS(save_embedding(emb, labels, f.path()), std::invalid_argument);
  }
}
