#pragma once

// Monte Carlo estimate of Q_G by sampling full edge states.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "probconn/graph.hpp"
#include "probconn/matrix.hpp"

namespace probconn {

inline constexpr std::uint64_t default_mc_seed = 1;

struct McEstimate {
  ConnectivityMatrix q_hat;
  std::uint64_t samples = 0;
  Matrix std_err;  // sqrt(q(1 - q) / N) per entry, 0 on the diagonal
  std::uint64_t seed = 0;
};

struct McOptions {
  unsigned threads = 0;  // 0 = hardware concurrency; never changes the result
};

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random stream for one sample, keyed only by (seed, sample index).
class SampleStream {
public:
  SampleStream(std::uint64_t seed, std::uint64_t sample) noexcept
      : state_(splitmix64(seed ^ splitmix64(sample ^ 0x6a09e667f3bcc909ULL))) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

}  // namespace detail

/// Crude Monte Carlo: each sample activates edge k iff U < p_k.
inline McEstimate mc_connectivity(const ProbGraph& g, std::uint64_t samples,
                                  std::uint64_t seed = default_mc_seed,
                                  const McOptions& opts = {}) {
  if (samples == 0) throw InvalidArgument("Monte Carlo needs at least one sample");
  const std::size_t n = g.vertex_count();
  const std::size_t pairs = n * (n - 1) / 2;
  constexpr std::uint64_t chunk = 4096;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;

  auto slot = [n](std::size_t a, std::size_t b) { return a * n - a * (a + 1) / 2 + (b - a - 1); };

  std::atomic<std::uint64_t> next{0};
  auto work = [&](std::vector<std::uint64_t>& counts) {
    DisjointSets ds(n);
    std::vector<std::size_t> head(n), link(n);
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t end = std::min(samples, (c + 1) * chunk);
      for (std::uint64_t s = c * chunk; s < end; ++s) {
        detail::SampleStream rng(seed, s);
        ds.reset();
        for (const Edge& e : g.edges())
          if (rng.uniform() < e.p) ds.unite(e.i, e.j);
        std::fill(head.begin(), head.end(), none);
        // Build per-root vertex lists in descending order so each list is ascending.
        for (std::size_t v = n; v-- > 0;) {
          const std::size_t r = ds.find(v);
          link[v] = head[r];
          head[r] = v;
        }
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t a = head[r]; a != none; a = link[a])
            for (std::size_t b = link[a]; b != none; b = link[b]) ++counts[slot(a, b)];
        }
      }
    }
  };

  unsigned workers = opts.threads != 0 ? opts.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(pairs, 0));
  if (workers == 1) {
    work(counts[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back([&, t] { work(counts[t]); });
  }

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.q_hat = ConnectivityMatrix::identity(n);
  est.std_err = Matrix(n);
  const double total = static_cast<double>(samples);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::uint64_t hits = 0;
      for (const auto& w : counts) hits += w[slot(a, b)];
      const double q = static_cast<double>(hits) / total;
      const double se = std::sqrt(q * (1.0 - q) / total);
      est.q_hat(a, b) = est.q_hat(b, a) = q;
      est.std_err(a, b) = est.std_err(b, a) = se;
    }
  }
  return est;
}

struct CiHalfwidth {
  double normal = 0.0;     // z * std_err, normal approximation
  double hoeffding = 0.0;  // sqrt(ln(2 / (1 - c)) / (2N)), distribution free
};

/// Confidence half-widths for entry (i, j); confidence must be 0.90, 0.95 or 0.99.
inline CiHalfwidth ci_halfwidth(const McEstimate& est, Vertex i, Vertex j, double confidence) {
  const std::size_t n = est.q_hat.size();
  if (i >= n || j >= n || i == j)
    throw InvalidArgument("confidence interval needs two distinct vertices in range");
  static constexpr std::array<std::pair<double, double>, 3> z_table{{
      {0.90, 1.6448536269514722},
      {0.95, 1.959963984540054},
      {0.99, 2.5758293035489004},
  }};
  const auto it = std::find_if(z_table.begin(), z_table.end(), [&](const auto& row) {
    return std::abs(row.first - confidence) < 1e-12;
  });
  if (it == z_table.end())
    throw InvalidArgument("confidence level must be 0.90, 0.95 or 0.99");
  CiHalfwidth out;
  out.normal = it->second * est.std_err(i, j);
  out.hoeffding = std::sqrt(std::log(2.0 / (1.0 - it->first)) /
                            (2.0 * static_cast<double>(est.samples)));
  return out;
}

}  // namespace probconn
