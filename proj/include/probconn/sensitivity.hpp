#pragma once

// Link-improvement sensitivity. Every q_ij is affine in each single link
// probability, so two exact evaluations (link dead, link perfect) give the
// whole line Q(t) = q0 + t * slope. The derivative of lambda_max along that
// line is x^T slope x for the unit principal eigenvector x.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "probconn/exact.hpp"
#include "probconn/graph.hpp"
#include "probconn/spectral.hpp"

namespace probconn {

struct AffineSlice {
  std::size_t edge = 0;
  ConnectivityMatrix q0;  // link probability 0
  ConnectivityMatrix q1;  // link probability 1
  Matrix slope;           // q1 - q0

  /// q0 + t * slope.
  ConnectivityMatrix at(double t) const {
    ConnectivityMatrix q(q0.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) q(i, j) = q0(i, j) + t * slope(i, j);
    return q;
  }
};

inline AffineSlice affine_slice(const ProbGraph& g, std::size_t edge,
                                const ExactOptions& opts = {}) {
  if (edge >= g.edge_count()) throw InvalidArgument("edge index out of range");
  AffineSlice s;
  s.edge = edge;
  s.q0 = exact_connectivity(g.with_probability(edge, 0.0), opts);
  s.q1 = exact_connectivity(g.with_probability(edge, 1.0), opts);
  const std::size_t n = g.vertex_count();
  s.slope = Matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.slope(i, j) = s.q1(i, j) - s.q0(i, j);
  return s;
}

struct LambdaDerivative {
  double value = 0.0;
  double spectral_gap = 0.0;
  /// lambda_max was (near) degenerate, so value is a central finite difference.
  bool finite_difference = false;
};

inline constexpr double simple_gap_threshold = 1e-8;
inline constexpr double fd_step = 1e-5;

namespace detail {

inline double rayleigh(const std::vector<double>& x, const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * m(i, j) * x[j];
  return s;
}

/// Central difference of lambda_max along the affine line through a.
inline double lambda_central_difference(const AffineSlice& s, double a) {
  return (lambda_max(s.at(a + fd_step)) - lambda_max(s.at(a - fd_step))) / (2.0 * fd_step);
}

inline LambdaDerivative lambda_derivative(const AffineSlice& s, const SpectralReport& current,
                                          double a) {
  LambdaDerivative d;
  d.spectral_gap = current.spectral_gap;
  if (current.eigenvalues.size() < 2 || current.spectral_gap > simple_gap_threshold) {
    d.value = rayleigh(current.principal_eigvec, s.slope);
  } else {
    d.value = lambda_central_difference(s, a);
    d.finite_difference = true;
  }
  return d;
}

}  // namespace detail

/// d lambda_max / d a_e at the current link probability.
inline LambdaDerivative lambda_derivative(const ProbGraph& g, std::size_t edge,
                                          const ExactOptions& opts = {}) {
  const AffineSlice s = affine_slice(g, edge, opts);
  const ConnectivityMatrix q = exact_connectivity(g, opts);
  const SpectralReport current = spectral_report(q, support_components(g));
  return detail::lambda_derivative(s, current, g.edge(edge).p);
}

struct RankedLink {
  Vertex i = 0;
  Vertex j = 0;
  /// Canonical index in the input graph; absent candidates have none.
  std::optional<std::size_t> edge;
  double probability = 0.0;
  double dlambda = 0.0;
  bool finite_difference = false;
  double headroom = 0.0;        // 1 - a_e
  double projected_gain = 0.0;  // lambda_max(a_e = 1) - lambda_max(current)
};

struct SensitivityRanking {
  double lambda_max = 0.0;
  std::vector<RankedLink> entries;  // by projected gain, then candidate order
};

/// Ranks every listed link, and with `include_absent` every missing pair
/// too (treated as a new link at probability 0), by the lambda_max gain of
/// making it perfect. Gains within 1e-12 of each other tie and keep
/// candidate order: listed edges by index, then absent pairs by (i, j).
inline SensitivityRanking rank_improvements(const ProbGraph& g, bool include_absent = false,
                                            const ExactOptions& opts = {}) {
  const ConnectivityMatrix q = exact_connectivity(g, opts);
  const SpectralReport current = spectral_report(q, support_components(g));

  SensitivityRanking ranking;
  ranking.lambda_max = current.lambda_max;

  auto evaluate = [&](const ProbGraph& host, std::size_t k, std::optional<std::size_t> listed) {
    const Edge& e = host.edge(k);
    const AffineSlice s = affine_slice(host, k, opts);
    const LambdaDerivative d = detail::lambda_derivative(s, current, e.p);
    RankedLink link;
    link.i = e.i;
    link.j = e.j;
    link.edge = listed;
    link.probability = e.p;
    link.dlambda = d.value;
    link.finite_difference = d.finite_difference;
    link.headroom = 1.0 - e.p;
    link.projected_gain = e.p == 1.0 ? 0.0 : lambda_max(s.q1) - current.lambda_max;
    ranking.entries.push_back(link);
  };

  for (std::size_t k = 0; k < g.edge_count(); ++k) evaluate(g, k, k);
  if (include_absent) {
    for (Vertex i = 0; i < g.vertex_count(); ++i) {
      for (Vertex j = i + 1; j < g.vertex_count(); ++j) {
        if (g.find_edge(i, j)) continue;
        const ProbGraph host = g.with_edge(i, j, 0.0);
        evaluate(host, *host.find_edge(i, j), std::nullopt);
      }
    }
  }

  auto key = [](double gain) { return std::llround(gain * 1e12); };
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [&](const RankedLink& x, const RankedLink& y) {
                     return key(x.projected_gain) > key(y.projected_gain);
                   });
  return ranking;
}

}  // namespace probconn
