#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tandem/numerics.hpp"

namespace tandem {

/// Sample matrix with optional held-out (class, subclass) labels. Labels feed
/// evaluation only; training code never sees them.
struct Dataset {
  std::vector<Vector> samples;
  std::optional<std::vector<std::pair<int, int>>> labels;
  std::size_t width = 0;

  std::size_t size() const { return samples.size(); }
};

/// Parameters of the synthetic hierarchical corpus: classes * subclasses_per_class
/// Gaussian blobs with class centers farther apart than subclass offsets, which
/// in turn exceed the per-dimension noise.
struct SyntheticSpec {
  std::size_t width = 20;
  std::size_t classes = 3;
  std::size_t subclasses_per_class = 2;
  std::size_t samples_per_subclass = 85;
  double class_separation = 1.25;
  double subclass_separation = 0.5;
  double noise_sigma = 0.03;

  void validate() const;
};

/// Loads a CSV of sample rows (expected_width numeric columns, optionally two
/// trailing integer label columns). Values are min-max normalized per column
/// to [0,1] unless the file already lies inside [0,1]; a constant column
/// normalizes to 0.
Dataset load_vectors(const std::string& path, std::size_t expected_width);

/// One row per sample, shortest round-trip decimals, labels as two trailing
/// integer columns. Written atomically (temp file + rename).
void write_csv(const Dataset& dataset, const std::string& path);

Dataset generate_synthetic(const SyntheticSpec& spec, Rng& rng);

/// Disjoint train/test split, stratified by (class, subclass) when labels are
/// present. Every stratum must keep at least one sample on each side.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction, Rng& rng);

/// Train followed by test, labels concatenated when both carry them.
Dataset concat(const Dataset& a, const Dataset& b);

}  // namespace tandem
