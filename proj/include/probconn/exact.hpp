#pragma once

// Exact connectivity matrix by enumeration of edge states.
//
// Q_G is the expectation, over all 2^m joint edge realizations, of the
// 0/1 matrix telling which vertex pairs end up in the same connected
// component. The expectation factorizes over support components, so each
// component is enumerated on its own and the result is block diagonal.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "probconn/graph.hpp"
#include "probconn/matrix.hpp"

namespace probconn {

/// One realization of all edge indicators, in canonical edge order.
class EdgeState {
public:
  EdgeState() = default;
  explicit EdgeState(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// Bit k of `mask` becomes the indicator of canonical edge k.
  static EdgeState from_mask(std::uint64_t mask, std::size_t m) {
    std::vector<bool> bits(m);
    for (std::size_t k = 0; k < m; ++k) bits[k] = ((mask >> k) & 1U) != 0;
    return EdgeState(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t k) const { return bits_[k]; }

private:
  std::vector<bool> bits_;
};

namespace detail {

inline void require_state_size(const ProbGraph& g, const EdgeState& s) {
  if (s.size() != g.edge_count())
    throw InvalidArgument("edge state has " + std::to_string(s.size()) +
                          " bits, graph has " + std::to_string(g.edge_count()) + " edges");
}

}  // namespace detail

/// 0/1 matrix: entry (i, j) is 1 iff i and j are joined by active edges.
inline ConnectivityMatrix conditional_connectivity(const ProbGraph& g, const EdgeState& s) {
  detail::require_state_size(g, s);
  const std::size_t n = g.vertex_count();
  DisjointSets ds(n);
  for (std::size_t k = 0; k < g.edge_count(); ++k)
    if (s[k]) ds.unite(g.edge(k).i, g.edge(k).j);
  std::vector<std::size_t> root(n);
  for (Vertex v = 0; v < n; ++v) root[v] = ds.find(v);
  ConnectivityMatrix c(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) c(i, j) = root[i] == root[j] ? 1.0 : 0.0;
  return c;
}

/// Product over edges of p_k (active) or 1 - p_k (inactive).
inline double state_probability(const ProbGraph& g, const EdgeState& s) {
  detail::require_state_size(g, s);
  double w = 1.0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const double p = g.edge(k).p;
    w *= s[k] ? p : 1.0 - p;
  }
  return w;
}

struct ExactOptions {
  /// Largest number of uncertain links (0 < p < 1) enumerated per component.
  std::size_t max_edges = 22;
  /// Worker threads; 0 picks the hardware concurrency. Does not affect the
  /// result, which is fixed by the chunking below.
  unsigned threads = 0;
};

namespace detail {

struct LocalComponent {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // uncertain links, local endpoints
  std::vector<double> probs;                                // in (0, 1)
  std::vector<std::pair<std::size_t, std::size_t>> sure;    // links with p = 1
};

inline std::vector<CompensatedSum> enumerate_range(const LocalComponent& comp,
                                                   std::uint64_t first, std::uint64_t last) {
  const std::size_t nc = comp.vertices.size();
  const std::size_t mc = comp.edges.size();
  std::vector<CompensatedSum> sums(nc * (nc - 1) / 2);
  DisjointSets ds(nc);
  std::vector<std::size_t> root(nc);

  for (std::uint64_t mask = first; mask < last; ++mask) {
    double w = 1.0;
    for (std::size_t k = 0; k < mc; ++k)
      w *= ((mask >> k) & 1U) ? comp.probs[k] : 1.0 - comp.probs[k];
    if (w == 0.0) continue;

    ds.reset();
    for (const auto& [a, b] : comp.sure) ds.unite(a, b);
    for (std::size_t k = 0; k < mc; ++k)
      if ((mask >> k) & 1U) ds.unite(comp.edges[k].first, comp.edges[k].second);
    for (std::size_t v = 0; v < nc; ++v) root[v] = ds.find(v);

    std::size_t slot = 0;
    for (std::size_t a = 0; a < nc; ++a)
      for (std::size_t b = a + 1; b < nc; ++b, ++slot)
        if (root[a] == root[b]) sums[slot].add(w);
  }
  return sums;
}

/// Enumerates every state of one component. The mask range is cut into a
/// fixed number of chunks whose partial sums are merged in chunk order, so
/// the result does not depend on how many threads ran the chunks.
inline std::vector<double> enumerate_component(const LocalComponent& comp, unsigned threads) {
  const std::size_t nc = comp.vertices.size();
  const std::uint64_t states = std::uint64_t{1} << comp.edges.size();
  const std::uint64_t chunks = states <= (std::uint64_t{1} << 14) ? 1 : 64;
  const std::uint64_t span = states / chunks;

  std::vector<std::vector<CompensatedSum>> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++)
      partial[c] = enumerate_range(comp, c * span, (c + 1) * span);
  };

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  std::vector<double> out(nc * (nc - 1) / 2);
  for (std::size_t slot = 0; slot < out.size(); ++slot) {
    CompensatedSum total;
    for (const auto& chunk : partial) total.merge(chunk[slot]);
    out[slot] = std::min(1.0, total.value());
  }
  return out;
}

/// Splits the positive-probability edges by support component. Edges with
/// p = 0 are dropped and edges with p = 1 are always active: every state
/// disagreeing with them has weight exactly zero, and the factor they add
/// to the others is exactly one, so the sums are unchanged bit for bit.
inline std::vector<LocalComponent> split_components(const ProbGraph& g) {
  const ComponentPartition part = support_components(g);
  const auto block = part.block_index(g.vertex_count());
  std::vector<std::size_t> local(g.vertex_count());
  std::vector<LocalComponent> comps(part.blocks.size());
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    comps[b].vertices = part.blocks[b];
    for (std::size_t v = 0; v < part.blocks[b].size(); ++v) local[part.blocks[b][v]] = v;
  }
  for (const Edge& e : g.edges()) {
    if (e.p <= 0.0) continue;
    LocalComponent& c = comps[block[e.i]];
    if (e.p >= 1.0) {
      c.sure.emplace_back(local[e.i], local[e.j]);
    } else {
      c.edges.emplace_back(local[e.i], local[e.j]);
      c.probs.push_back(e.p);
    }
  }
  return comps;
}

}  // namespace detail

/// Exact Q_G. Throws EdgeLimitExceeded if some support component has more
/// than `opts.max_edges` links with probability strictly between 0 and 1.
inline ConnectivityMatrix exact_connectivity(const ProbGraph& g, const ExactOptions& opts = {}) {
  const auto comps = detail::split_components(g);
  for (const auto& c : comps)
    if (c.edges.size() > opts.max_edges || c.edges.size() >= 63)
      throw EdgeLimitExceeded(c.edges.size(), std::min<std::size_t>(opts.max_edges, 62));

  ConnectivityMatrix q = ConnectivityMatrix::identity(g.vertex_count());
  for (const auto& c : comps) {
    const std::size_t nc = c.vertices.size();
    if (nc < 2) continue;
    const auto packed = detail::enumerate_component(c, opts.threads);
    std::size_t slot = 0;
    for (std::size_t a = 0; a < nc; ++a) {
      for (std::size_t b = a + 1; b < nc; ++b, ++slot) {
        q(c.vertices[a], c.vertices[b]) = packed[slot];
        q(c.vertices[b], c.vertices[a]) = packed[slot];
      }
    }
  }
  return q;
}

}  // namespace probconn
