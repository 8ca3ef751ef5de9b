#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rolevec/graph.hpp"
#include "rolevec/rng.hpp"

namespace rolevec {

/// Two h-cliques joined by a k-node path, plus the ground-truth structural
/// equivalence classes: all non-bridge clique members together, the two
/// bridge nodes, and the symmetric path pairs {p_i, p_(k+1-i)}.
struct BarbellGraph {
  Graph graph;
  std::vector<std::vector<int>> equivalence_classes;  // dense node ids
  std::vector<int> class_of;                          // node -> class index
};

inline BarbellGraph gen_barbell(int h, int k) {
  if (h < 3 || k < 1) throw std::invalid_argument("barbell needs h >= 3 and k >= 1");
  const int n = 2 * h + k;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));

  // Clique 1 on 0..h-1 (bridge 0), clique 2 on h..2h-1 (bridge h),
  // path nodes p_1..p_k on 2h..2h+k-1.
  std::vector<std::pair<std::string, std::string>> edges;
  for (int base : {0, h})
    for (int i = 0; i < h; ++i)
      for (int j = i + 1; j < h; ++j) edges.emplace_back(labels[base + i], labels[base + j]);
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(labels[2 * h + i], labels[2 * h + i + 1]);
  edges.emplace_back(labels[0], labels[2 * h]);          // b1 - p_1
  edges.emplace_back(labels[h], labels[2 * h + k - 1]);  // b2 - p_k

  BarbellGraph out;
  out.graph = Graph::build(edges, labels);

  std::vector<int> clique_class;
  for (int i = 1; i < h; ++i) {
    clique_class.push_back(i);
    clique_class.push_back(h + i);
  }
  out.equivalence_classes.push_back(std::move(clique_class));
  out.equivalence_classes.push_back({0, h});
  for (int i = 1; 2 * i <= k + 1; ++i) {
    int a = 2 * h + (i - 1);
    int b = 2 * h + (k - i);
    if (a == b)
      out.equivalence_classes.push_back({a});
    else
      out.equivalence_classes.push_back({a, b});
  }

  out.class_of.assign(n, -1);
  for (std::size_t c = 0; c < out.equivalence_classes.size(); ++c)
    for (int v : out.equivalence_classes[c]) out.class_of[v] = static_cast<int>(c);
  return out;
}

/// Disjoint union of a graph and a copy of itself, with an optional single
/// edge between one node and its mirror. Mirror labels carry an "_m"
/// suffix; mirror(u) = u + n in dense ids.
struct MirroredGraph {
  Graph graph;
  std::vector<std::pair<int, int>> mirror_pairs;  // (u, mirror(u)) dense ids
};

inline MirroredGraph gen_mirrored(const Graph& g, const std::string& bridge_label = "") {
  const int n = g.node_count();
  std::vector<std::string> labels;
  labels.reserve(2 * n);
  for (int u = 0; u < n; ++u) labels.push_back(g.label(u));
  for (int u = 0; u < n; ++u) labels.push_back(g.label(u) + "_m");

  std::vector<std::pair<std::string, std::string>> edges;
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u))
      if (u < v) {
        edges.emplace_back(labels[u], labels[v]);
        edges.emplace_back(labels[n + u], labels[n + v]);
      }
  if (!bridge_label.empty()) {
    int b = g.require_label(bridge_label);
    edges.emplace_back(labels[b], labels[n + b]);
  }

  MirroredGraph out;
  out.graph = Graph::build(edges, labels);
  out.mirror_pairs.reserve(n);
  for (int u = 0; u < n; ++u) out.mirror_pairs.emplace_back(u, n + u);
  return out;
}

/// Keeps each edge independently with probability s. Nodes that lose all
/// their edges are dropped by graph validation and counted in the report.
inline Graph edge_sample(const Graph& g, double s, Rng& rng, LoadReport* report = nullptr) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("sampling probability must be in [0, 1]");
  std::vector<std::pair<std::string, std::string>> edges;
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v && rng.next_double() < s) edges.emplace_back(g.label(u), g.label(v));
  return Graph::build(edges, g.labels(), report, /*allow_empty=*/true);
}

/// Union of two independent edge-sampled copies of a base graph, the setup
/// for the structural-noise experiment. Copy-two labels carry an "_m"
/// suffix; corresponding pairs list the nodes that survived in both copies.
struct SampledPairGraph {
  Graph graph;
  std::vector<std::pair<int, int>> corresponding;  // dense ids in the union
};

inline SampledPairGraph gen_edge_sampled_pair(const Graph& base, double s, Rng& rng) {
  Graph g1 = edge_sample(base, s, rng);
  Graph g2 = edge_sample(base, s, rng);
  std::vector<std::pair<std::string, std::string>> edges;
  for (int u = 0; u < g1.node_count(); ++u)
    for (int v : g1.neighbors(u))
      if (u < v) edges.emplace_back(g1.label(u), g1.label(v));
  for (int u = 0; u < g2.node_count(); ++u)
    for (int v : g2.neighbors(u))
      if (u < v) edges.emplace_back(g2.label(u) + "_m", g2.label(v) + "_m");

  SampledPairGraph out;
  out.graph = Graph::build(edges);
  for (int u = 0; u < g1.node_count(); ++u) {
    auto a = out.graph.find_label(g1.label(u));
    auto b = out.graph.find_label(g1.label(u) + "_m");
    if (a && b) out.corresponding.emplace_back(*a, *b);
  }
  return out;
}

/// Erdős–Rényi G(n, p) with p chosen for the requested average degree.
/// Uses geometric edge skipping, so generation is linear in the edge count.
inline Graph gen_er(int n, double avg_degree, Rng& rng, LoadReport* report = nullptr) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  double p = avg_degree / static_cast<double>(n - 1);
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("average degree out of range");

  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));

  std::vector<std::pair<std::string, std::string>> edges;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (p >= 1.0) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) edges.emplace_back(labels[u], labels[v]);
  } else if (p > 0.0) {
    const double log1mp = std::log1p(-p);
    std::uint64_t idx = 0;
    for (;;) {
      double r = rng.next_double();
      idx += 1 + static_cast<std::uint64_t>(std::floor(std::log1p(-r) / log1mp));
      if (idx > total) break;
      // map linear index 1..total to pair (u, v), u < v
      std::uint64_t i = idx - 1;
      int u = static_cast<int>((2 * n - 1 - std::sqrt(static_cast<double>((2 * n - 1)) *
                                                          (2 * n - 1) -
                                                      8.0 * static_cast<double>(i))) /
                               2.0);
      while (static_cast<std::uint64_t>(u + 1) * (2 * n - u - 2) / 2 <= i) ++u;
      while (u > 0 && static_cast<std::uint64_t>(u) * (2 * n - u - 1) / 2 > i) --u;
      std::uint64_t offset = i - static_cast<std::uint64_t>(u) * (2 * n - u - 1) / 2;
      int v = u + 1 + static_cast<int>(offset);
      edges.emplace_back(labels[u], labels[v]);
    }
  }
  return Graph::build(edges, labels, report, /*allow_empty=*/true);
}

/// Deterministic 200-node benchmark built from four structural templates:
/// clique members, star hubs, star leaves and chain (path) nodes. Degrees
/// intentionally collide across classes (hub vs clique at 4 and 5, star
/// leaf vs chain end at 1), so degree alone cannot separate the labels.
struct RoleGraph {
  Graph graph;
  std::vector<int> labels;  // per dense node: 0 clique, 1 hub, 2 leaf, 3 path
  static constexpr int kClique = 0;
  static constexpr int kHub = 1;
  static constexpr int kLeaf = 2;
  static constexpr int kPath = 3;
};

inline RoleGraph gen_role_graph() {
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> labels;
  std::vector<int> classes;
  auto add_node = [&](int cls) {
    labels.push_back(std::to_string(labels.size()));
    classes.push_back(cls);
    return static_cast<int>(labels.size()) - 1;
  };
  auto connect = [&](int a, int b) { edges.emplace_back(labels[a], labels[b]); };

  // K5 and K6 cliques (member degrees 4 and 5).
  for (int size : {5, 5, 6, 6}) {
    std::vector<int> members;
    for (int i = 0; i < size; ++i) members.push_back(add_node(RoleGraph::kClique));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) connect(members[i], members[j]);
  }
  // Stars with 4 and 5 leaves (hub degrees 4 and 5, matching the cliques).
  for (int leaves : {4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5}) {
    int hub = add_node(RoleGraph::kHub);
    for (int i = 0; i < leaves; ++i) connect(hub, add_node(RoleGraph::kLeaf));
  }
  // Open chains; the chain ends share degree 1 with the star leaves.
  std::vector<int> chain_lengths(19, 6);
  chain_lengths.push_back(3);  // pads the node count to 200
  for (int len : chain_lengths) {
    int prev = add_node(RoleGraph::kPath);
    for (int i = 1; i < len; ++i) {
      int cur = add_node(RoleGraph::kPath);
      connect(prev, cur);
      prev = cur;
    }
  }

  RoleGraph out;
  out.graph = Graph::build(edges, labels);
  out.labels = std::move(classes);
  if (out.graph.node_count() != static_cast<int>(out.labels.size()))
    throw std::logic_error("role graph construction dropped nodes");
  return out;
}

}  // namespace rolevec
