#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

#include "tandem/errors.hpp"

namespace tandem {

using Vector = std::vector<double>;

/// Dense row-major matrix. Just enough linear algebra for the networks here;
/// not a BLAS.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// result[i] = sum_j w(i,j) * x[j] + b[i]
Vector affine(const Matrix& w, const Vector& x, const Vector& b);

double sigmoid(double x);
Vector sigmoid(const Vector& x);

double euclidean_distance(const Vector& a, const Vector& b);
double squared_distance(const Vector& a, const Vector& b);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

/// Deterministic seeded generator. All draws are derived from the raw 64-bit
/// output of a mt19937_64 so sequences are identical across platforms
/// (the standard distributions make no such promise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Value in [lo, hi). Requires lo < hi.
  double uniform(double lo, double hi);

  /// Uniform index in [0, n). Unbiased via rejection. Requires n > 0.
  std::size_t uniform_index(std::size_t n);

  /// Gaussian draw via Box-Muller; consumes exactly two uniform draws.
  double normal(double mean, double stddev);

  /// Independent substream keyed on (seed, index); derived from the seed, not
  /// the current state, so streams are reproducible in isolation.
  Rng stream(std::uint64_t index) const;

  /// Fisher-Yates shuffle driven by this generator.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Free-function form used by the clustering and init code.
double uniform_draw(Rng& rng, double lo, double hi);

}  // namespace tandem
