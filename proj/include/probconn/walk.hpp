#pragma once

// Walk-probability matrices built with the composition
//   (A (x) B)_ij = 1 - prod_{l != i, j} (1 - A_il B_lj).
// Input matrices use a zero diagonal, unlike AdjacencyMatrix.

#include <cstddef>

#include "probconn/graph.hpp"
#include "probconn/matrix.hpp"

namespace probconn {

struct WalkMatrix {
  Matrix entries;
  std::size_t z = 1;  // walk length represented

  std::size_t size() const noexcept { return entries.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/// One-step walk matrix of g: link probabilities, zero diagonal.
inline WalkMatrix walk_matrix(const ProbGraph& g) {
  WalkMatrix m{Matrix(g.vertex_count()), 1};
  for (const Edge& e : g.edges()) m.entries(e.i, e.j) = m.entries(e.j, e.i) = e.p;
  return m;
}

inline WalkMatrix otimes(const WalkMatrix& a, const WalkMatrix& b) {
  require_same_size(a.entries, b.entries, "otimes");
  const std::size_t n = a.size();
  WalkMatrix c{Matrix(n), a.z + b.z};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double miss = 1.0;
      for (std::size_t l = 0; l < n; ++l)
        if (l != i && l != j) miss *= 1.0 - a(i, l) * b(l, j);
      c.entries(i, j) = 1.0 - miss;
    }
  }
  return c;
}

/// m (x) m (x) ... (x) m, z factors, folded from the left.
inline WalkMatrix walk_probabilities(const WalkMatrix& m, std::size_t z) {
  if (z == 0) throw InvalidArgument("walk length must be at least 1");
  WalkMatrix acc = m;
  for (std::size_t step = 1; step < z; ++step) acc = otimes(acc, m);
  return acc;
}

}  // namespace probconn
