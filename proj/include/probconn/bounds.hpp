#pragma once

// Entry bounds on Q_G and critical-vertex detection.
//
// For distinct i, j and every third vertex k:
//   q_ik q_kj  <=  q_ij  <=  1 - (1 - a_ij) prod_k (1 - q_ik q_kj)
// and equality on the left singles out k as a vertex every i-j path
// must cross.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "probconn/graph.hpp"
#include "probconn/matrix.hpp"

namespace probconn {

enum class BoundKind { lower, upper };

inline const char* to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

struct BoundViolation {
  Vertex i = 0;
  Vertex j = 0;
  BoundKind kind = BoundKind::lower;
  double magnitude = 0.0;  // distance past the bound
};

struct BoundsReport {
  Matrix lower;  // max_k q_ik q_kj (0 with no third vertex); 1 on the diagonal
  Matrix upper;  // 1 - (1 - a_ij) prod_k (1 - q_ik q_kj); 1 on the diagonal
  std::vector<BoundViolation> violations;
  /// Pairs with no third vertex, so the bounds carry no information about them.
  std::vector<std::pair<Vertex, Vertex>> unconstrained;
  double tolerance = 0.0;
};

inline BoundsReport compute_bounds(const AdjacencyMatrix& a, const ConnectivityMatrix& q,
                                   double tolerance = 1e-12) {
  require_same_size(a, q, "compute_bounds");
  if (!(tolerance >= 0.0)) throw InvalidArgument("bounds tolerance must be non-negative");
  const std::size_t n = q.size();
  BoundsReport r;
  r.lower = Matrix::identity(n);
  r.upper = Matrix::identity(n);
  r.tolerance = tolerance;

  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i == j) continue;
      double best = 0.0;
      double miss = 1.0;
      for (Vertex k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double via = q(i, k) * q(k, j);
        best = std::max(best, via);
        miss *= 1.0 - via;
      }
      r.lower(i, j) = best;
      r.upper(i, j) = 1.0 - (1.0 - a(i, j)) * miss;
    }
  }

  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (n == 2) r.unconstrained.emplace_back(i, j);
      // Both orientations, since q need not be exactly symmetric.
      for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
        if (q(x, y) < r.lower(x, y) - tolerance)
          r.violations.push_back({x, y, BoundKind::lower, r.lower(x, y) - q(x, y)});
        if (q(x, y) > r.upper(x, y) + tolerance)
          r.violations.push_back({x, y, BoundKind::upper, q(x, y) - r.upper(x, y)});
      }
    }
  }
  return r;
}

struct CriticalFinding {
  Vertex k = 0;
  std::vector<std::pair<Vertex, Vertex>> witnesses;  // i < j with q_ij = q_ik q_kj
  /// (V1, V3) around k derived from the support graph for the first witness;
  /// present only when a graph was supplied.
  std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> partition_hint;
  /// Cut-vertex cross-check against the support graph, when a graph was supplied.
  std::optional<bool> support_articulation;
};

struct CriticalAnalysis {
  std::vector<CriticalFinding> findings;  // ascending k
  std::vector<std::string> warnings;
  /// Set by callers passing a sampled matrix: findings are then evidence,
  /// not certified facts.
  bool statistical = false;
  double tolerance = 0.0;

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (const auto& f : findings) out.push_back(f.k);
    return out;
  }
};

struct CriticalOptions {
  double tolerance = 1e-9;
  bool statistical = false;
  const ProbGraph* graph = nullptr;  // enables partition hints and cross-checks
};

/// Reports every k with some pair i, j (q_ij > 0) satisfying
/// |q_ij - q_ik q_kj| <= tolerance. Witness pairs are listed exhaustively.
inline CriticalAnalysis find_critical_vertices(const ConnectivityMatrix& q,
                                               const CriticalOptions& opts = {}) {
  if (!(opts.tolerance >= 0.0)) throw InvalidArgument("critical tolerance must be non-negative");
  const std::size_t n = q.size();
  if (opts.graph != nullptr && opts.graph->vertex_count() != n)
    throw DimensionMismatch("graph and connectivity matrix sizes differ");

  CriticalAnalysis out;
  out.statistical = opts.statistical;
  out.tolerance = opts.tolerance;
  std::vector<Vertex> cuts;
  if (opts.graph != nullptr) cuts = articulation_points(*opts.graph);

  for (Vertex k = 0; k < n; ++k) {
    CriticalFinding f;
    f.k = k;
    for (Vertex i = 0; i < n; ++i) {
      if (i == k) continue;
      for (Vertex j = i + 1; j < n; ++j) {
        if (j == k || q(i, j) <= 0.0) continue;
        if (std::abs(q(i, j) - q(i, k) * q(k, j)) <= opts.tolerance) f.witnesses.emplace_back(i, j);
      }
    }
    if (f.witnesses.empty()) continue;

    if (opts.graph != nullptr) {
      f.support_articulation = std::binary_search(cuts.begin(), cuts.end(), k);
      if (!*f.support_articulation)
        out.warnings.push_back("vertex " + std::to_string(k) +
                               " satisfies the product equality but is not a cut vertex of "
                               "the support graph");
      const auto [wi, wj] = f.witnesses.front();
      std::vector<Vertex> v1 = support_reachable_avoiding(*opts.graph, wi, k);
      if (!std::binary_search(v1.begin(), v1.end(), wj)) {
        std::vector<Vertex> v3;
        for (Vertex v = 0; v < n; ++v)
          if (v != k && !std::binary_search(v1.begin(), v1.end(), v)) v3.push_back(v);
        for (Vertex l : v1) {
          for (Vertex m : v3) {
            const double gap = std::abs(q(l, m) - q(l, k) * q(k, m));
            if (gap > opts.tolerance)
              out.warnings.push_back("vertex " + std::to_string(k) + ": q(" + std::to_string(l) +
                                     ", " + std::to_string(m) + ") differs from the product "
                                     "through it by " + std::to_string(gap));
          }
        }
        f.partition_hint.emplace(std::move(v1), std::move(v3));
      }
    }
    out.findings.push_back(std::move(f));
  }
  return out;
}

}  // namespace probconn
