#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>

#include "rolevec/distance.hpp"
#include "rolevec/generators.hpp"
#include "rolevec/graph.hpp"
#include "rolevec/multilayer.hpp"
#include "rolevec/walk.hpp"
#include "util.hpp"

using namespace rolevec;
using testutil::make_graph;

namespace {

MultilayerGraph multilayer_of(const Graph& g, SimilarityConfig cfg = {}) {
  return build_multilayer(structural_distances(g, cfg), g.node_count());
}

}  // namespace

TEST_CASE("intra-layer transition probabilities sum to one", "[walk]") {
  Graph g = load_edge_list(testutil::data_path("karate.edges"));
  MultilayerGraph m = multilayer_of(g);
  for (int k = 0; k < m.layer_count(); ++k)
    for (int u = 0; u < m.node_count(); ++u) {
      const auto& nb = m.neighbors(k, u);
      if (nb.empty()) continue;
      double z = m.normalization(k, u);
      double total = 0.0;
      for (const auto& [v, w] : nb) total += w / z;
      REQUIRE_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("layer-change probabilities are complementary", "[walk]") {
  Graph g = load_edge_list(testutil::data_path("karate.edges"));
  MultilayerGraph m = multilayer_of(g);
  for (int k = 1; k < m.layer_count() - 1; ++k)
    for (int u = 0; u < m.node_count(); ++u) {
      double up = m.up_weight(k, u);
      double p_up = up / (up + m.down_weight(k, u));
      double p_down = 1.0 - p_up;
      REQUIRE(p_up + p_down == 1.0);
      REQUIRE(p_up > 0.0);
      REQUIRE(p_down > 0.0);
    }
}

TEST_CASE("biased walks emit exactly walk_length tokens", "[walk]") {
  Graph g = load_edge_list(testutil::data_path("karate.edges"));
  MultilayerGraph m = multilayer_of(g);
  Rng rng(5);
  for (int start = 0; start < g.node_count(); start += 7)
    for (int len : {1, 3, 17}) {
      auto tokens = biased_walk(m, start, len, 0.3, rng);
      REQUIRE(static_cast<int>(tokens.size()) == len);
      REQUIRE(tokens.front() == start);
      for (int t : tokens) {
        REQUIRE(t >= 0);
        REQUIRE(t < g.node_count());
      }
    }
}

TEST_CASE("low stay probability still fills the walk", "[walk]") {
  // layer changes emit nothing, so the walk must keep stepping until the
  // token budget is met
  Graph g = load_edge_list(testutil::data_path("karate.edges"));
  MultilayerGraph m = multilayer_of(g);
  Rng rng(11);
  auto tokens = biased_walk(m, 0, 40, 0.05, rng);
  REQUIRE(tokens.size() == 40u);
}

TEST_CASE("plain walk degenerate shapes", "[walk]") {
  SECTION("dyad alternates") {
    Graph g = make_graph({{0, 1}});
    Rng rng(3);
    auto tokens = plain_walk(g, 0, 8, rng);
    for (int i = 0; i < 8; ++i) REQUIRE(tokens[i] == i % 2);
  }

  SECTION("length one emits only the start") {
    Graph g = make_graph({{0, 1}, {1, 2}, {0, 2}});
    Rng rng(4);
    REQUIRE(plain_walk(g, 1, 1, rng) == std::vector<int>{1});
  }

  SECTION("invalid start") {
    Graph g = make_graph({{0, 1}});
    Rng rng(4);
    REQUIRE_THROWS_AS(plain_walk(g, 9, 3, rng), std::invalid_argument);
  }
}

TEST_CASE("plain walk visit frequencies approach the stationary law", "[walk][oracle]") {
  // K4 is regular: stationary distribution deg(u)/2|E| is uniform 1/4
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) edges.emplace_back(i, j);
  Graph g = make_graph(edges);
  Rng rng(123);
  auto tokens = plain_walk(g, 0, 100000, rng);
  std::map<int, int> counts;
  for (int t : tokens) counts[t]++;
  for (const auto& [node, c] : counts) {
    double freq = static_cast<double>(c) / static_cast<double>(tokens.size());
    REQUIRE_THAT(freq, Catch::Matchers::WithinAbs(0.25, 0.0125));  // 5% of 1/4
  }
}

TEST_CASE("corpus generation is seeded and complete", "[walk]") {
  Graph g = load_edge_list(testutil::data_path("karate.edges"));
  MultilayerGraph m = multilayer_of(g);

  WalkConfig cfg;
  cfg.walks_per_node = 5;
  cfg.walk_length = 15;
  cfg.seed = 42;

  SECTION("biased corpus size and determinism") {
    WalkCorpus a = generate_corpus(m, cfg);
    REQUIRE(a.sequences.size() == 5u * 34u);
    for (const auto& seq : a.sequences) REQUIRE(seq.size() == 15u);
    WalkCorpus b = generate_corpus(m, cfg);
    REQUIRE(a.sequences == b.sequences);
    cfg.seed = 43;
    WalkCorpus c = generate_corpus(m, cfg);
    REQUIRE(a.sequences != c.sequences);
  }

  SECTION("parallel corpus equals serial corpus") {
    WalkCorpus serial = generate_corpus(m, cfg, 1);
    WalkCorpus parallel = generate_corpus(m, cfg, 3);
    REQUIRE(serial.sequences == parallel.sequences);
  }

  SECTION("plain corpus covers every start node") {
    WalkCorpus corpus = generate_corpus(g, cfg);
    REQUIRE(corpus.sequences.size() == 5u * 34u);
    std::set<int> starts;
    for (std::size_t i = 0; i < 34; ++i) starts.insert(corpus.sequences[i].front());
    REQUIRE(starts.size() == 34u);
  }

  SECTION("bad config rejected") {
    WalkConfig bad = cfg;
    bad.stay_probability = 0.0;
    REQUIRE_THROWS_AS(generate_corpus(m, bad), std::invalid_argument);
    bad = cfg;
    bad.walk_length = 0;
    REQUIRE_THROWS_AS(generate_corpus(m, bad), std::invalid_argument);
  }
}

TEST_CASE("corpus dump has one walk per line", "[walk]") {
  Graph g = make_graph({{0, 1}, {1, 2}});
  WalkConfig cfg;
  cfg.walks_per_node = 2;
  cfg.walk_length = 4;
  WalkCorpus corpus = generate_corpus(g, cfg);
  testutil::TempFile f("corpus");
  save_corpus(corpus, f.path());
  std::string text = f.read();
  REQUIRE(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("clique walk contexts stay structural on the barbell", "[walk][oracle]") {
  // tokens co-occurring near a clique node should be dominated by clique
  // nodes from either side, not by path nodes
  BarbellGraph barbell = gen_barbell(10, 10);
  MultilayerGraph m = multilayer_of(barbell.graph);
  WalkConfig cfg;
  cfg.walks_per_node = 10;
  cfg.walk_length = 40;
  cfg.seed = 7;
  WalkCorpus corpus = generate_corpus(m, cfg);

  auto is_clique = [&](int v) { return barbell.class_of[v] == 0; };
  long long clique_near_clique = 0, other_near_clique = 0;
  const int window = 3;
  for (const auto& seq : corpus.sequences)
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (!is_clique(seq[i])) continue;
      for (int off = -window; off <= window; ++off) {
        if (off == 0) continue;
        std::size_t j = i + off;
        if (j >= seq.size()) continue;
        (is_clique(seq[j]) ? clique_near_clique : other_near_clique)++;
      }
    }
  REQUIRE(clique_near_clique > 4 * other_near_clique);
}
