#pragma once

// Spectral analysis of connectivity matrices: a cyclic Jacobi eigensolver,
// the lambda_max quality metric, network comparison by entrywise dominance,
// and certification of the block-of-ones structure of 0/1 matrices.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "probconn/graph.hpp"
#include "probconn/matrix.hpp"

namespace probconn {

class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Raised when a matrix contradicts structure it must have (partition
/// zero pattern, 0/1 block form).
class StructureViolation : public Error {
public:
  using Error::Error;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k is the unit eigenvector of values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm is at most
/// 1e-12 times the input norm; throws ConvergenceError after 100 sweeps.
inline EigenDecomposition sym_eig(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidArgument("eigensolver needs a non-empty matrix");
  if (!m.is_symmetric(1e-12)) throw InvalidArgument("eigensolver input is not symmetric");

  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * m.frobenius_norm();
  constexpr int max_sweeps = 100;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; off_norm() > target; ++sweep) {
    if (sweep == max_sweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                             std::to_string(max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// ||V diag(values) V^T - m||_F.
inline double reconstruction_residual(const Matrix& m, const EigenDecomposition& eig) {
  const std::size_t n = m.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double r = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        r += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
      s += (r - m(i, j)) * (r - m(i, j));
    }
  }
  return std::sqrt(s);
}

/// Square submatrix on the given index set.
inline Matrix principal_submatrix(const Matrix& m, const std::vector<Vertex>& idx) {
  Matrix sub(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = m(idx[a], idx[b]);
  return sub;
}

inline double lambda_max(const Matrix& m) { return sym_eig(m).values.front(); }

struct SpectralReport {
  std::vector<double> eigenvalues;  // descending
  double lambda_max = 0.0;
  double lambda_max_normalized = 0.0;  // lambda_max / n
  bool psd = false;
  bool definite = false;
  std::vector<double> principal_eigvec;  // signed so its entries sum >= 0
  double spectral_gap = 0.0;             // lambda_1 - lambda_2, 0 when n = 1
  std::vector<double> component_lambdas;  // one per partition block
  double residual = 0.0;                  // eigensolver reconstruction error
};

/// Throws StructureViolation unless `partition` covers all vertices and q
/// vanishes between different blocks.
inline void check_partition(const Matrix& q, const ComponentPartition& partition) {
  const std::size_t n = q.size();
  std::vector<std::size_t> block(n, static_cast<std::size_t>(-1));
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    for (Vertex v : partition.blocks[b]) {
      if (v >= n || block[v] != static_cast<std::size_t>(-1))
        throw StructureViolation("partition is not a partition of the matrix indices");
      block[v] = b;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (block[v] == static_cast<std::size_t>(-1))
      throw StructureViolation("partition misses vertex " + std::to_string(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block[i] != block[j] && q(i, j) != 0.0)
        throw StructureViolation("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") is non-zero across partition blocks");
}

inline SpectralReport spectral_report(const ConnectivityMatrix& q,
                                      const ComponentPartition& partition,
                                      double tolerance = 1e-9) {
  check_partition(q, partition);
  const std::size_t n = q.size();
  const EigenDecomposition eig = sym_eig(q);

  SpectralReport r;
  r.eigenvalues = eig.values;
  r.lambda_max = eig.values.front();
  r.lambda_max_normalized = r.lambda_max / static_cast<double>(n);
  const double smallest = eig.values.back();
  const double slack = tolerance * static_cast<double>(n);
  r.psd = smallest >= -slack;
  r.definite = smallest > slack;
  r.spectral_gap = n > 1 ? eig.values[0] - eig.values[1] : 0.0;
  r.residual = reconstruction_residual(q, eig);

  r.principal_eigvec.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += eig.vectors(i, 0);
  const double sign = sum < 0.0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) r.principal_eigvec[i] = sign * eig.vectors(i, 0);

  for (const auto& block : partition.blocks)
    r.component_lambdas.push_back(lambda_max(principal_submatrix(q, block)));
  return r;
}

enum class QualityVerdict {
  b_better,      // q_b >= q_a entrywise, q_b != q_a, both irreducible
  a_better,      // the mirror case
  incomparable,  // dominance preconditions not met; lambdas still reported
};

struct QualityComparison {
  QualityVerdict verdict = QualityVerdict::incomparable;
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  double lambda_a_normalized = 0.0;
  double lambda_b_normalized = 0.0;
  bool irreducible_a = false;
  bool irreducible_b = false;
  /// For a dominance verdict: whether the eigenvalues are strictly ordered
  /// as dominance requires. False would indicate a numerical or engine bug.
  bool strict_increase = false;
  std::string note;
};

/// A connectivity matrix is irreducible iff every entry is positive.
inline bool is_irreducible(const Matrix& q) {
  return std::all_of(q.values().begin(), q.values().end(), [](double x) { return x > 0.0; });
}

inline QualityComparison compare_quality(const ConnectivityMatrix& q_a,
                                         const ConnectivityMatrix& q_b) {
  require_same_size(q_a, q_b, "compare_quality");
  const double n = static_cast<double>(q_a.size());
  QualityComparison c;
  c.lambda_a = lambda_max(q_a);
  c.lambda_b = lambda_max(q_b);
  c.lambda_a_normalized = c.lambda_a / n;
  c.lambda_b_normalized = c.lambda_b / n;
  c.irreducible_a = is_irreducible(q_a);
  c.irreducible_b = is_irreducible(q_b);

  bool b_ge = true, a_ge = true, differ = false;
  for (std::size_t k = 0; k < q_a.values().size(); ++k) {
    const double d = q_b.values()[k] - q_a.values()[k];
    if (d < 0.0) b_ge = false;
    if (d > 0.0) a_ge = false;
    if (d != 0.0) differ = true;
  }

  if (!differ) {
    c.note = "matrices are equal";
  } else if (!b_ge && !a_ge) {
    c.note = "neither matrix dominates the other entrywise";
  } else if (!c.irreducible_a || !c.irreducible_b) {
    c.note = std::string("irreducibility precondition not met for ") +
             (!c.irreducible_a && !c.irreducible_b ? "both networks"
              : !c.irreducible_a                   ? "network a"
                                                   : "network b");
  } else if (b_ge) {
    c.verdict = QualityVerdict::b_better;
    c.strict_increase = c.lambda_a < c.lambda_b;
    c.note = "q_b dominates q_a entrywise";
  } else {
    c.verdict = QualityVerdict::a_better;
    c.strict_increase = c.lambda_b < c.lambda_a;
    c.note = "q_a dominates q_b entrywise";
  }
  return c;
}

/// Certificate that a 0/1 connectivity matrix is a permuted direct sum of
/// all-ones blocks.
struct BlockCertificate {
  std::vector<std::vector<Vertex>> blocks;  // ordered by smallest vertex
  std::vector<Vertex> permutation;          // blocks concatenated
  std::vector<std::size_t> block_sizes;
  std::vector<double> eigenvalues;          // from sym_eig, descending
  double max_eigenvalue_error = 0.0;        // vs block sizes followed by zeros
};

inline BlockCertificate verify_corner_structure(const ConnectivityMatrix& q,
                                                double eigen_tolerance = 1e-9) {
  const std::size_t n = q.size();
  constexpr double tol = 1e-12;
  auto is_one = [&](double x) { return std::abs(x - 1.0) <= tol; };
  for (double x : q.values())
    if (!(std::abs(x) <= tol || is_one(x)))
      throw InvalidArgument("corner structure needs a matrix with entries in {0, 1}");

  BlockCertificate cert;
  std::vector<bool> placed(n, false);
  for (Vertex i = 0; i < n; ++i) {
    if (placed[i]) continue;
    std::vector<Vertex> block;
    for (Vertex j = 0; j < n; ++j)
      if (is_one(q(i, j))) block.push_back(j);
    for (Vertex j : block) {
      if (placed[j])
        throw StructureViolation("vertex " + std::to_string(j) + " belongs to two blocks");
      placed[j] = true;
    }
    cert.blocks.push_back(std::move(block));
  }
  for (const auto& block : cert.blocks) {
    for (Vertex u : block) {
      if (!is_one(q(u, u)))
        throw StructureViolation("diagonal entry " + std::to_string(u) + " is not 1");
      for (Vertex w = 0; w < n; ++w) {
        const bool same = std::binary_search(block.begin(), block.end(), w);
        if (same != is_one(q(u, w)))
          throw StructureViolation("rows of block containing vertex " + std::to_string(u) +
                                   " are not identical");
      }
    }
    cert.permutation.insert(cert.permutation.end(), block.begin(), block.end());
    cert.block_sizes.push_back(block.size());
  }

  cert.eigenvalues = sym_eig(q).values;
  std::vector<double> expected(n, 0.0);
  std::vector<std::size_t> sizes = cert.block_sizes;
  std::sort(sizes.rbegin(), sizes.rend());
  for (std::size_t k = 0; k < sizes.size(); ++k) expected[k] = static_cast<double>(sizes[k]);
  for (std::size_t k = 0; k < n; ++k)
    cert.max_eigenvalue_error =
        std::max(cert.max_eigenvalue_error, std::abs(cert.eigenvalues[k] - expected[k]));
  if (cert.max_eigenvalue_error > eigen_tolerance)
    throw StructureViolation("eigenvalues deviate from block sizes by " +
                             std::to_string(cert.max_eigenvalue_error));
  return cert;
}

}  // namespace probconn
