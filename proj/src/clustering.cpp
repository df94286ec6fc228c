#include "tandem/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tandem {

void ForgyParams::validate() const {
  if (k < 2) throw ConfigError("forgy params: k must be at least 2");
  if (!(seed_min_distance >= 0.0)) throw ConfigError("forgy params: seed_min_distance must be >= 0");
  if (max_iterations == 0) throw ConfigError("forgy params: max_iterations must be positive");
}

std::vector<Vector> select_seeds(const std::vector<Vector>& data, const ForgyParams& params,
                                 Rng& rng) {
  params.validate();
  if (data.size() < params.k)
    throw ContractError("select_seeds: " + std::to_string(data.size()) + " samples for k=" +
                        std::to_string(params.k));
  std::vector<std::size_t> indices(data.size());
  for (std::size_t attempt = 0; attempt <= params.max_seed_retries; ++attempt) {
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    // partial Fisher-Yates: the first k entries become the candidate draw
    for (std::size_t i = 0; i < params.k; ++i) {
      std::size_t j = i + rng.uniform_index(indices.size() - i);
      std::swap(indices[i], indices[j]);
    }
    bool ok = true;
    for (std::size_t a = 0; a < params.k && ok; ++a)
      for (std::size_t b = a + 1; b < params.k && ok; ++b)
        if (euclidean_distance(data[indices[a]], data[indices[b]]) < params.seed_min_distance)
          ok = false;
    if (ok) {
      std::vector<Vector> seeds;
      seeds.reserve(params.k);
      for (std::size_t i = 0; i < params.k; ++i) seeds.push_back(data[indices[i]]);
      return seeds;
    }
  }
  throw SeedingError("select_seeds: no seed set with pairwise distance >= " +
                     std::to_string(params.seed_min_distance) + " found in " +
                     std::to_string(params.max_seed_retries) +
                     " retries; lower the seed threshold");
}

std::size_t assign_one(const Vector& point, const std::vector<Vector>& centroids) {
  if (centroids.empty()) throw ContractError("assign: no centroids");
  std::size_t best = 0;
  double best_d = squared_distance(point, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    double d = squared_distance(point, centroids[c]);
    if (d < best_d) {  // strict: ties keep the lowest index
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<std::size_t> assign(const std::vector<Vector>& data,
                                const std::vector<Vector>& centroids) {
  std::vector<std::size_t> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = assign_one(data[i], centroids);
  return out;
}

namespace {

// Means per cluster; an empty cluster is re-seeded to the sample farthest from
// its nearest centroid in the set built so far.
std::vector<Vector> recompute_centroids(const std::vector<Vector>& data,
                                        const std::vector<std::size_t>& assignments,
                                        std::size_t k) {
  const std::size_t dim = data.front().size();
  std::vector<Vector> centroids(k, Vector(dim, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::size_t c = assignments[i];
    ++counts[c];
    for (std::size_t d = 0; d < dim; ++d) centroids[c][d] += data[i][d];
  }
  for (std::size_t c = 0; c < k; ++c)
    if (counts[c] > 0)
      for (std::size_t d = 0; d < dim; ++d) centroids[c][d] /= static_cast<double>(counts[c]);
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    double far_d = -1.0;
    std::size_t far_i = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double near_d = std::numeric_limits<double>::infinity();
      for (std::size_t oc = 0; oc < k; ++oc) {
        if (counts[oc] == 0 && oc != c) continue;  // not yet re-seeded
        if (oc == c) continue;
        near_d = std::min(near_d, squared_distance(data[i], centroids[oc]));
      }
      if (near_d > far_d) {
        far_d = near_d;
        far_i = i;
      }
    }
    centroids[c] = data[far_i];
    counts[c] = 1;  // marks the slot as populated for later empties
  }
  return centroids;
}

}  // namespace

Clustering forgy_converge(const std::vector<Vector>& data, const std::vector<Vector>& seeds,
                          const ForgyParams& params) {
  params.validate();
  if (seeds.size() != params.k)
    throw ContractError("forgy_converge: seed count differs from k");
  if (data.empty()) throw ContractError("forgy_converge: empty data");
  for (std::size_t a = 0; a < seeds.size(); ++a)
    for (std::size_t b = a + 1; b < seeds.size(); ++b)
      if (seeds[a] == seeds[b]) throw ContractError("forgy_converge: duplicate seeds");

  Clustering result;
  result.assignments = assign(data, seeds);
  result.centroids = recompute_centroids(data, result.assignments, params.k);
  result.iterations_run = 1;
  while (result.iterations_run < params.max_iterations) {
    std::vector<std::size_t> next = assign(data, result.centroids);
    if (next == result.assignments) break;  // no sample left its cluster
    result.assignments = std::move(next);
    result.centroids = recompute_centroids(data, result.assignments, params.k);
    ++result.iterations_run;
  }
  return result;
}

std::vector<std::size_t> pair_centroids(const std::vector<Vector>& a,
                                        const std::vector<Vector>& b) {
  if (a.size() != b.size()) throw ContractError("pair_centroids: set sizes differ");
  const std::size_t k = a.size();
  if (k == 0) throw ContractError("pair_centroids: empty sets");
  if (k > kMaxExactClusters)
    throw UnsupportedSizeError("pair_centroids: exact search supports k <= " +
                               std::to_string(kMaxExactClusters));
  std::vector<std::size_t> perm(k), best(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) cost += euclidean_distance(a[i], b[perm[i]]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Clustering averaged_forgy(const std::vector<Vector>& data, const ForgyParams& params, Rng& rng) {
  auto seeds_a = select_seeds(data, params, rng);
  Clustering run_a = forgy_converge(data, seeds_a, params);
  auto seeds_b = select_seeds(data, params, rng);
  Clustering run_b = forgy_converge(data, seeds_b, params);

  auto pairing = pair_centroids(run_a.centroids, run_b.centroids);
  std::vector<Vector> averaged(params.k);
  for (std::size_t c = 0; c < params.k; ++c) {
    const Vector& ca = run_a.centroids[c];
    const Vector& cb = run_b.centroids[pairing[c]];
    Vector mid(ca.size());
    for (std::size_t d = 0; d < ca.size(); ++d) mid[d] = 0.5 * (ca[d] + cb[d]);
    averaged[c] = std::move(mid);
  }

  Clustering result;
  result.assignments = assign(data, averaged);
  result.centroids = recompute_centroids(data, result.assignments, params.k);
  result.iterations_run = run_a.iterations_run + run_b.iterations_run;
  return result;
}

double within_cluster_ss(const std::vector<Vector>& data, const Clustering& clustering) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    total += squared_distance(data[i], clustering.centroids[clustering.assignments[i]]);
  return total;
}

}  // namespace tandem
