#pragma once

// Dense square matrices, error types and compensated summation shared by
// every probconn module.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace probconn {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph input: self-loop, bad index, duplicate pair, bad probability.
class InvalidGraph : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Raised when a support component has more edges than the exact engine is
/// allowed to enumerate. Callers should fall back to Monte Carlo.
class EdgeLimitExceeded : public Error {
public:
  EdgeLimitExceeded(std::size_t edges, std::size_t limit)
      : Error("component has " + std::to_string(edges) +
              " edges, exact enumeration limit is " + std::to_string(limit) +
              "; use the Monte Carlo engine (`mc`) instead"),
        edges_(edges), limit_(limit) {}

  std::size_t edges() const noexcept { return edges_; }
  std::size_t limit() const noexcept { return limit_; }

private:
  std::size_t edges_;
  std::size_t limit_;
};

/// Row-major dense n x n matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  bool is_symmetric(double tol = 0.0) const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// A Matrix tagged with its meaning, so adjacency, connectivity and walk
/// matrices cannot be passed for one another by accident.
template <class Tag>
class TypedMatrix : public Matrix {
public:
  TypedMatrix() = default;
  explicit TypedMatrix(std::size_t n, double fill = 0.0) : Matrix(n, fill) {}
  explicit TypedMatrix(Matrix m) : Matrix(std::move(m)) {}

  static TypedMatrix identity(std::size_t n) { return TypedMatrix(Matrix::identity(n)); }

  bool operator==(const TypedMatrix&) const = default;
};

struct AdjacencyTag {};
struct ConnectivityTag {};

/// Definition-1 matrix A_G: symmetric, unit diagonal, link probabilities off it.
using AdjacencyMatrix = TypedMatrix<AdjacencyTag>;
/// Path-probability matrix Q_G: q_ij = Pr(some path joins i and j).
using ConnectivityMatrix = TypedMatrix<ConnectivityTag>;

inline void require_same_size(const Matrix& a, const Matrix& b, const char* what) {
  if (a.size() != b.size())
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
}

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace probconn
