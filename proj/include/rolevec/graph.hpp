#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rolevec {

/// Counters accumulated while validating raw edge input.
struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t edges_kept = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  std::size_t isolated_dropped = 0;
};

/// Undirected, unweighted graph with dense node ids 0..n-1 and a
/// bidirectional map to the original string labels. Immutable after
/// construction; all queries are safe for concurrent readers.
class Graph {
 public:
  Graph() = default;

  int node_count() const { return static_cast<int>(adj_.size()); }

  std::size_t edge_count() const { return edge_count_; }

  int degree(int u) const { return static_cast<int>(adj_[u].size()); }

  const std::vector<int>& neighbors(int u) const { return adj_[u]; }

  const std::string& label(int u) const { return labels_[u]; }

  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> find_label(const std::string& label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end()) return std::nullopt;
    return it->second;
  }

  /// Resolves an external label, throwing when unknown.
  int require_label(const std::string& label) const {
    auto id = find_label(label);
    if (!id) throw std::invalid_argument("unknown node label: " + label);
    return *id;
  }

  bool has_edge(int u, int v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Builds a validated graph from labelled edges. Duplicate edges and
  /// self-loops are dropped and counted; nodes left without any edge are
  /// removed (ids re-densified) and counted as isolated. `universe` may
  /// list labels that must exist even if no edge mentions them, fixing the
  /// dense-id order; otherwise ids follow first appearance in `edges`.
  static Graph build(const std::vector<std::pair<std::string, std::string>>& edges,
                     const std::vector<std::string>& universe = {},
                     LoadReport* report = nullptr, bool allow_empty = false) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    std::unordered_map<std::string, int> ids;
    std::vector<std::string> labels;
    auto intern = [&](const std::string& s) {
      auto [it, inserted] = ids.emplace(s, static_cast<int>(labels.size()));
      if (inserted) labels.push_back(s);
      return it->second;
    };
    for (const auto& lbl : universe) intern(lbl);

    std::vector<std::vector<int>> adj;
    for (const auto& [a, b] : edges) {
      int u = intern(a);
      int v = intern(b);
      if (static_cast<std::size_t>(std::max(u, v)) >= adj.size())
        adj.resize(labels.size());
      if (u == v) {
        rep.self_loops++;
        continue;
      }
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    adj.resize(labels.size());

    std::size_t kept = 0;
    for (auto& nb : adj) {
      std::sort(nb.begin(), nb.end());
      auto dup = nb.size();
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      rep.duplicate_edges += dup - nb.size();
      kept += nb.size();
    }
    rep.duplicate_edges /= 2;  // counted from both endpoints
    rep.edges_kept = kept / 2;

    // Drop degree-0 nodes and re-densify.
    std::vector<int> remap(adj.size(), -1);
    int next = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
      if (!adj[u].empty())
        remap[u] = next++;
      else
        rep.isolated_dropped++;
    }
    if (next == 0 && !allow_empty)
      throw std::runtime_error("graph is empty after validation");

    Graph g;
    g.adj_.resize(next);
    g.labels_.resize(next);
    for (std::size_t u = 0; u < adj.size(); ++u) {
      if (remap[u] < 0) continue;
      auto& nb = g.adj_[remap[u]];
      nb.reserve(adj[u].size());
      for (int v : adj[u]) nb.push_back(remap[v]);
      g.labels_[remap[u]] = labels[u];
      g.label_to_id_.emplace(labels[u], remap[u]);
    }
    g.edge_count_ = rep.edges_kept;
    return g;
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_to_id_;
  std::size_t edge_count_ = 0;
};

/// Parses an edge-list file: one edge per line, two whitespace-separated
/// tokens, lines starting with '#' (and blank lines) ignored.
inline Graph load_edge_list(const std::string& path, LoadReport* report = nullptr,
                            std::ostream* diagnostics = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t line_no = 0, lines_read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;  // blank line
    if (a[0] == '#') continue;
    if (!(ss >> b) || (ss >> extra)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected two node tokens");
    }
    edges.emplace_back(std::move(a), std::move(b));
    ++lines_read;
  }

  LoadReport local;
  LoadReport& rep = report ? *report : local;
  Graph g = Graph::build(edges, {}, &rep);
  rep.lines_read = lines_read;
  if (diagnostics) {
    *diagnostics << "loaded " << path << ": " << g.node_count() << " nodes, "
                 << g.edge_count() << " edges";
    if (rep.duplicate_edges) *diagnostics << ", " << rep.duplicate_edges << " duplicates dropped";
    if (rep.self_loops) *diagnostics << ", " << rep.self_loops << " self-loops dropped";
    if (rep.isolated_dropped)
      *diagnostics << ", warning: " << rep.isolated_dropped << " isolated nodes dropped";
    *diagnostics << "\n";
  }
  return g;
}

inline void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) out << g.label(u) << " " << g.label(v) << "\n";
}

/// BFS hop distances from `src`; -1 marks unreachable nodes.
inline std::vector<int> bfs_depths(const Graph& g, int src, int max_depth = -1) {
  std::vector<int> depth(g.node_count(), -1);
  depth[src] = 0;
  std::vector<int> frontier{src}, next;
  int d = 0;
  while (!frontier.empty() && (max_depth < 0 || d < max_depth)) {
    next.clear();
    for (int u : frontier)
      for (int v : g.neighbors(u))
        if (depth[v] < 0) {
          depth[v] = d + 1;
          next.push_back(v);
        }
    frontier.swap(next);
    ++d;
  }
  return depth;
}

/// Nodes at hop distance exactly `distance` from `center`.
struct Ring {
  int center = 0;
  int distance = 0;
  std::vector<int> members;
};

/// BFS rings for k = 0..k_max; stops at the first empty ring, so the
/// result never extends past the center's eccentricity.
inline std::vector<Ring> rings(const Graph& g, int u, int k_max) {
  if (u < 0 || u >= g.node_count()) throw std::invalid_argument("invalid node id");
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  std::vector<int> depth = bfs_depths(g, u, k_max);
  std::vector<Ring> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(Ring{u, k, {}});
  for (int v = 0; v < g.node_count(); ++v)
    if (depth[v] >= 0) out[depth[v]].members.push_back(v);
  while (!out.empty() && out.back().members.empty()) out.pop_back();
  return out;
}

/// Ascending degrees of the ring members.
inline std::vector<int> ordered_degree_sequence(const Graph& g, const Ring& ring) {
  if (ring.members.empty()) throw std::invalid_argument("empty ring");
  std::vector<int> seq;
  seq.reserve(ring.members.size());
  for (int v : ring.members) seq.push_back(g.degree(v));
  std::sort(seq.begin(), seq.end());
  return seq;
}

inline int eccentricity(const Graph& g, int u) {
  std::vector<int> depth = bfs_depths(g, u);
  int e = 0;
  for (int d : depth) e = std::max(e, d);
  return e;
}

/// Largest finite hop distance: the max eccentricity over all connected
/// components. Disconnected inputs are fine, cross-component distance is
/// simply not counted.
inline int diameter(const Graph& g) {
  int best = 0;
  for (int u = 0; u < g.node_count(); ++u) best = std::max(best, eccentricity(g, u));
  return best;
}

/// Component id per node, ids in discovery order.
inline std::vector<int> component_ids(const Graph& g) {
  std::vector<int> comp(g.node_count(), -1);
  int c = 0;
  for (int s = 0; s < g.node_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = c;
          q.push(v);
        }
    }
    ++c;
  }
  return comp;
}

}  // namespace rolevec
