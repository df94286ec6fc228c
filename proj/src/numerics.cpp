#include "tandem/numerics.hpp"

#include <cmath>

namespace tandem {

Vector affine(const Matrix& w, const Vector& x, const Vector& b) {
  if (w.cols() != x.size())
    throw ContractError("affine: matrix has " + std::to_string(w.cols()) +
                        " columns but input has " + std::to_string(x.size()) + " entries");
  if (w.rows() != b.size())
    throw ContractError("affine: matrix has " + std::to_string(w.rows()) +
                        " rows but bias has " + std::to_string(b.size()) + " entries");
  Vector out(b);
  const auto& wd = w.data();
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double acc = 0.0;
    const double* row = wd.data() + i * w.cols();
    for (std::size_t j = 0; j < w.cols(); ++j) acc += row[j] * x[j];
    out[i] += acc;
  }
  return out;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Vector sigmoid(const Vector& x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sigmoid(x[i]);
  return out;
}

double squared_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw ContractError("distance: dimension mismatch (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double euclidean_distance(const Vector& a, const Vector& b) {
  return std::sqrt(squared_distance(a, b));
}

bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  for (double x : m.data())
    if (!std::isfinite(x)) return false;
  return true;
}

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi))
    throw ContractError("uniform: requires lo < hi, got [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + ")");
  // 53 random mantissa bits -> u in [0, 1)
  double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  double v = lo + u * (hi - lo);
  if (v >= hi) v = std::nextafter(hi, lo);  // guard against rounding up to hi
  return v;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw ContractError("uniform_index: n must be positive");
  std::uint64_t range = static_cast<std::uint64_t>(n);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

double Rng::normal(double mean, double stddev) {
  double u1 = 1.0 - uniform(0.0, 1.0);  // (0, 1], keeps log finite
  double u2 = uniform(0.0, 1.0);
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return mean + stddev * z;
}

namespace {
// splitmix64 finalizer; standard seed-mixing step.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng Rng::stream(std::uint64_t index) const {
  return Rng(mix64(seed_ + mix64(index + 1)));
}

double uniform_draw(Rng& rng, double lo, double hi) { return rng.uniform(lo, hi); }

}  // namespace tandem
