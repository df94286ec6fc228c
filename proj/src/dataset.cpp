#include "tandem/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "tandem/fsio.hpp"

namespace tandem {

void SyntheticSpec::validate() const {
  if (width == 0) throw ConfigError("synthetic spec: width must be positive");
  if (classes == 0 || subclasses_per_class == 0 || samples_per_subclass == 0)
    throw ConfigError("synthetic spec: classes, subclasses_per_class and samples_per_subclass must be positive");
  if (!(class_separation > subclass_separation && subclass_separation > noise_sigma &&
        noise_sigma > 0.0))
    throw ConfigError(
        "synthetic spec: requires class_separation > subclass_separation > noise_sigma > 0");
}

namespace {

double parse_cell(const std::string& cell, std::size_t line_no) {
  double value;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + cell +
                     "' as a number");
  return value;
}

int parse_label(const std::string& cell, std::size_t line_no) {
  int value;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + cell +
                     "' as an integer label");
  return value;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding spaces
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
  }
  return cells;
}

// Per-column min-max rescaling; constant columns go to 0. Applied only when
// some entry falls outside [0,1], so corpora already in the sigmoid range
// (including everything generate_synthetic emits) load back verbatim.
void normalize_in_place(std::vector<Vector>& samples, std::size_t width) {
  bool in_range = true;
  for (const Vector& s : samples)
    for (double v : s)
      if (v < 0.0 || v > 1.0) {
        in_range = false;
        break;
      }
  if (in_range) return;
  for (std::size_t col = 0; col < width; ++col) {
    double lo = samples[0][col], hi = samples[0][col];
    for (const Vector& s : samples) {
      lo = std::min(lo, s[col]);
      hi = std::max(hi, s[col]);
    }
    if (hi > lo) {
      double scale = 1.0 / (hi - lo);
      for (Vector& s : samples) s[col] = (s[col] - lo) * scale;
    } else {
      for (Vector& s : samples) s[col] = 0.0;
    }
  }
}

}  // namespace

Dataset load_vectors(const std::string& path, std::size_t expected_width) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");

  Dataset ds;
  ds.width = expected_width;
  std::vector<std::pair<int, int>> labels;
  bool labeled = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_row(line);
    bool row_labeled;
    if (cells.size() == expected_width)
      row_labeled = false;
    else if (cells.size() == expected_width + 2)
      row_labeled = true;
    else
      throw SchemaError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected_width) + " values (plus optional 2 labels), got " +
                        std::to_string(cells.size()));
    if (ds.samples.empty())
      labeled = row_labeled;
    else if (row_labeled != labeled)
      throw SchemaError("line " + std::to_string(line_no) + ": mixed labeled and unlabeled rows");

    Vector sample(expected_width);
    for (std::size_t i = 0; i < expected_width; ++i) sample[i] = parse_cell(cells[i], line_no);
    if (!all_finite(sample))
      throw ParseError("line " + std::to_string(line_no) + ": non-finite value");
    ds.samples.push_back(std::move(sample));
    if (row_labeled)
      labels.emplace_back(parse_label(cells[expected_width], line_no),
                          parse_label(cells[expected_width + 1], line_no));
  }
  if (ds.samples.empty()) throw SchemaError("'" + path + "' holds no samples");

  normalize_in_place(ds.samples, expected_width);
  if (labeled) ds.labels = std::move(labels);
  return ds;
}

void write_csv(const Dataset& dataset, const std::string& path) {
  std::string out;
  out.reserve(dataset.size() * dataset.width * 8);
  char buf[32];
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const Vector& s = dataset.samples[i];
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), s[j]);
      if (j) out.push_back(',');
      out.append(buf, ptr);
    }
    if (dataset.labels) {
      const auto& [cls, sub] = (*dataset.labels)[i];
      out.push_back(',');
      out.append(std::to_string(cls));
      out.push_back(',');
      out.append(std::to_string(sub));
    }
    out.push_back('\n');
  }
  atomic_write_text(path, out);
}

namespace {

// Rejection-samples `count` points in the box with pairwise distance >= min_dist.
std::vector<Vector> spaced_points(std::size_t count, std::size_t width, double lo, double hi,
                                  double min_dist, Rng& rng, const std::string& what) {
  constexpr std::size_t kMaxAttempts = 20000;
  std::vector<Vector> points;
  std::size_t attempts = 0;
  while (points.size() < count) {
    if (++attempts > kMaxAttempts)
      throw GenerationError("generate_synthetic: cannot place " + std::to_string(count) + " " +
                            what + " at separation " + std::to_string(min_dist) + " in " +
                            std::to_string(width) + " dimensions");
    Vector p(width);
    for (double& v : p) v = rng.uniform(lo, hi);
    bool ok = true;
    for (const Vector& q : points)
      if (euclidean_distance(p, q) < min_dist) {
        ok = false;
        break;
      }
    if (ok) points.push_back(std::move(p));
  }
  return points;
}

// Offsets of fixed radius with pairwise distance >= min_dist; directions are
// uniform via normalized Gaussians.
std::vector<Vector> spaced_offsets(std::size_t count, std::size_t width, double radius,
                                   double min_dist, Rng& rng) {
  constexpr std::size_t kMaxAttempts = 20000;
  std::vector<Vector> offsets;
  std::size_t attempts = 0;
  while (offsets.size() < count) {
    if (++attempts > kMaxAttempts)
      throw GenerationError("generate_synthetic: cannot place " + std::to_string(count) +
                            " subclass offsets at separation " + std::to_string(min_dist) +
                            " in " + std::to_string(width) + " dimensions");
    Vector o(width);
    double norm2 = 0.0;
    for (double& v : o) {
      v = rng.normal(0.0, 1.0);
      norm2 += v * v;
    }
    if (norm2 == 0.0) continue;
    double scale = radius / std::sqrt(norm2);
    for (double& v : o) v *= scale;
    bool ok = true;
    for (const Vector& q : offsets)
      if (euclidean_distance(o, q) < min_dist) {
        ok = false;
        break;
      }
    if (ok) offsets.push_back(std::move(o));
  }
  return offsets;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec, Rng& rng) {
  spec.validate();
  // Class centers live away from the box edge so subclass blobs keep room
  // before clipping.
  auto centers = spaced_points(spec.classes, spec.width, 0.25, 0.75, spec.class_separation, rng,
                               "class centers");
  const double offset_radius = 0.75 * spec.subclass_separation;

  Dataset ds;
  ds.width = spec.width;
  ds.labels.emplace();
  for (std::size_t c = 0; c < spec.classes; ++c) {
    auto offsets = spaced_offsets(spec.subclasses_per_class, spec.width, offset_radius,
                                  spec.subclass_separation, rng);
    for (std::size_t s = 0; s < spec.subclasses_per_class; ++s) {
      Vector center(spec.width);
      for (std::size_t d = 0; d < spec.width; ++d) center[d] = centers[c][d] + offsets[s][d];
      for (std::size_t n = 0; n < spec.samples_per_subclass; ++n) {
        Vector sample(spec.width);
        for (std::size_t d = 0; d < spec.width; ++d)
          sample[d] = std::clamp(center[d] + rng.normal(0.0, spec.noise_sigma), 0.0, 1.0);
        ds.samples.push_back(std::move(sample));
        ds.labels->emplace_back(static_cast<int>(c), static_cast<int>(s));
      }
    }
  }
  return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ContractError("split: train_fraction must lie strictly between 0 and 1");

  // Strata keyed by (class, subclass); one catch-all stratum when unlabeled.
  std::map<std::pair<int, int>, std::vector<std::size_t>> strata;
  if (dataset.labels) {
    for (std::size_t i = 0; i < dataset.size(); ++i) strata[(*dataset.labels)[i]].push_back(i);
  } else {
    auto& all = strata[{0, 0}];
    all.resize(dataset.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
  }

  Dataset train, test;
  train.width = test.width = dataset.width;
  if (dataset.labels) {
    train.labels.emplace();
    test.labels.emplace();
  }
  for (auto& [key, indices] : strata) {
    if (indices.size() < 2)
      throw StratifyError("split: stratum (" + std::to_string(key.first) + ", " +
                          std::to_string(key.second) + ") has fewer than 2 samples");
    rng.shuffle(indices);
    auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(indices.size())));
    if (n_train == 0 || n_train == indices.size())
      throw StratifyError("split: fraction " + std::to_string(train_fraction) +
                          " leaves stratum (" + std::to_string(key.first) + ", " +
                          std::to_string(key.second) + ") empty on one side");
    for (std::size_t pos = 0; pos < indices.size(); ++pos) {
      Dataset& dst = pos < n_train ? train : test;
      dst.samples.push_back(dataset.samples[indices[pos]]);
      if (dataset.labels) dst.labels->push_back((*dataset.labels)[indices[pos]]);
    }
  }
  return {std::move(train), std::move(test)};
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.width != b.width) throw ContractError("concat: widths differ");
  Dataset out;
  out.width = a.width;
  out.samples = a.samples;
  out.samples.insert(out.samples.end(), b.samples.begin(), b.samples.end());
  if (a.labels && b.labels) {
    out.labels = a.labels;
    out.labels->insert(out.labels->end(), b.labels->begin(), b.labels->end());
  }
  return out;
}

}  // namespace tandem
