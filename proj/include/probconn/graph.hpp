#pragma once

// Probabilistic graph model: validated edge list, Definition-1 adjacency
// matrix, and the support-graph structure (components, cut vertices).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probconn/matrix.hpp"

namespace probconn {

using Vertex = std::size_t;

/// Undirected link i < j existing independently with probability p.
struct Edge {
  Vertex i = 0;
  Vertex j = 0;
  double p = 0.0;

  bool operator==(const Edge&) const = default;
};

/// Union-find with path halving and union by size.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  void reset() {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::fill(size_.begin(), size_.end(), std::size_t{1});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Throws InvalidGraph if (i, j, p) cannot be an edge of an n-vertex graph.
inline void validate_edge(std::size_t n, Vertex i, Vertex j, double p) {
  if (i >= n || j >= n)
    throw InvalidGraph("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") has an index outside [0, " + std::to_string(n) + ")");
  if (i == j) throw InvalidGraph("self-loop on vertex " + std::to_string(i));
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidGraph("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") has probability outside [0, 1]");
}

/// Immutable probabilistic graph. Edges are stored with i < j, sorted by
/// (i, j); that order is the canonical edge indexing used everywhere else.
class ProbGraph {
public:
  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_.at(k); }

  /// Canonical index of the pair {i, j}, if it is a listed edge.
  std::optional<std::size_t> find_edge(Vertex i, Vertex j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{i, j},
                               [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                                 return std::pair{e.i, e.j} < key;
                               });
    if (it == edges_.end() || it->i != i || it->j != j) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  /// Copy with the probability of edge k replaced.
  ProbGraph with_probability(std::size_t k, double p) const {
    if (k >= edges_.size()) throw InvalidArgument("edge index out of range");
    validate_edge(n_, edges_[k].i, edges_[k].j, p);
    ProbGraph g = *this;
    g.edges_[k].p = p;
    return g;
  }

  /// Copy with one more edge; the pair must not already be present.
  ProbGraph with_edge(Vertex i, Vertex j, double p) const;

  /// Neighbour lists of the support graph (edges with p > 0).
  std::vector<std::vector<Vertex>> support_adjacency() const {
    std::vector<std::vector<Vertex>> adj(n_);
    for (const Edge& e : edges_) {
      if (e.p > 0.0) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
      }
    }
    return adj;
  }

  bool operator==(const ProbGraph&) const = default;

private:
  friend ProbGraph build_graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Validates and canonicalizes an edge list. Pairs may be given in either
/// orientation; zero-probability edges are kept.
inline ProbGraph build_graph(std::size_t n, std::vector<Edge> edges) {
  if (n == 0) throw InvalidGraph("graph must have at least one vertex");
  for (Edge& e : edges) {
    validate_edge(n, e.i, e.j, e.p);
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair{a.i, a.j} < std::pair{b.i, b.j};
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j)
      throw InvalidGraph("duplicate edge (" + std::to_string(edges[k].i) + ", " +
                         std::to_string(edges[k].j) + ")");
  }
  ProbGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  return g;
}

inline ProbGraph ProbGraph::with_edge(Vertex i, Vertex j, double p) const {
  std::vector<Edge> edges = edges_;
  edges.push_back({i, j, p});
  return build_graph(n_, std::move(edges));
}

/// Builds a graph from a matrix with unit diagonal. Zero off-diagonal
/// entries are absent pairs. Asymmetric input is rejected.
inline ProbGraph graph_from_adjacency(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) != 1.0)
      throw InvalidGraph("adjacency diagonal entry " + std::to_string(i) + " is not 1");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) != a(j, i))
        throw InvalidGraph("adjacency matrix is not symmetric at (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
      if (a(i, j) != 0.0) edges.push_back({i, j, a(i, j)});
    }
  }
  return build_graph(n, std::move(edges));
}

inline AdjacencyMatrix adjacency_matrix(const ProbGraph& g) {
  AdjacencyMatrix a = AdjacencyMatrix::identity(g.vertex_count());
  for (const Edge& e : g.edges()) {
    a(e.i, e.j) = e.p;
    a(e.j, e.i) = e.p;
  }
  return a;
}

/// Vertex partition; each block sorted, blocks ordered by smallest vertex.
struct ComponentPartition {
  std::vector<std::vector<Vertex>> blocks;

  /// block_of[v] = index of the block holding v.
  std::vector<std::size_t> block_index(std::size_t n) const {
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (Vertex v : blocks[b]) idx[v] = b;
    return idx;
  }

  bool operator==(const ComponentPartition&) const = default;
};

/// Components of the support graph (edges with p > 0).
inline ComponentPartition support_components(const ProbGraph& g) {
  const std::size_t n = g.vertex_count();
  DisjointSets ds(n);
  for (const Edge& e : g.edges())
    if (e.p > 0.0) ds.unite(e.i, e.j);

  ComponentPartition part;
  std::vector<std::size_t> root_block(n, n);
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t r = ds.find(v);
    if (root_block[r] == n) {
      root_block[r] = part.blocks.size();
      part.blocks.emplace_back();
    }
    part.blocks[root_block[r]].push_back(v);
  }
  return part;
}

/// Cut vertices of the support graph, ascending. Iterative Hopcroft-Tarjan.
inline std::vector<Vertex> articulation_points(const ProbGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto adj = g.support_adjacency();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, unvisited), low(n, 0), parent(n, unvisited), next(n, 0);
  std::vector<bool> is_cut(n, false);
  std::size_t timer = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != unvisited) continue;
    std::size_t root_children = 0;
    std::vector<Vertex> stack{root};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      if (next[u] < adj[u].size()) {
        const Vertex w = adj[u][next[u]++];
        if (disc[w] == unvisited) {
          parent[w] = u;
          disc[w] = low[w] = timer++;
          if (u == root) ++root_children;
          stack.push_back(w);
        } else if (w != parent[u]) {
          low[u] = std::min(low[u], disc[w]);
        }
      } else {
        stack.pop_back();
        if (parent[u] != unvisited) {
          const Vertex p = parent[u];
          low[p] = std::min(low[p], low[u]);
          if (p != root && low[u] >= disc[p]) is_cut[p] = true;
        }
      }
    }
    if (root_children > 1) is_cut[root] = true;
  }

  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

/// Vertices reachable from `from` in the support graph with `removed` deleted.
inline std::vector<Vertex> support_reachable_avoiding(const ProbGraph& g, Vertex from,
                                                      Vertex removed) {
  const auto adj = g.support_adjacency();
  std::vector<bool> seen(g.vertex_count(), false);
  seen[removed] = true;
  seen[from] = true;
  std::vector<Vertex> stack{from}, out;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (Vertex w : adj[u]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace probconn
