#pragma once

#include <cstddef>
#include <vector>

#include "tandem/numerics.hpp"

namespace tandem {

/// Exact permutation search is used for centroid pairing and label matching,
/// so cluster counts are capped.
inline constexpr std::size_t kMaxExactClusters = 8;

struct ForgyParams {
  std::size_t k = 2;
  double seed_min_distance = 0.0;
  std::size_t max_iterations = 100;
  std::size_t max_seed_retries = 1000;

  void validate() const;
};

struct Clustering {
  std::vector<Vector> centroids;
  std::vector<std::size_t> assignments;  // per-sample cluster index in [0, k)
  std::size_t iterations_run = 0;

  std::size_t k() const { return centroids.size(); }
};

/// k distinct data points with pairwise distance >= seed_min_distance, found
/// by rejection sampling; throws SeedingError once max_seed_retries is spent.
std::vector<Vector> select_seeds(const std::vector<Vector>& data, const ForgyParams& params,
                                 Rng& rng);

/// Index of the nearest centroid; ties go to the lowest index.
std::size_t assign_one(const Vector& point, const std::vector<Vector>& centroids);

std::vector<std::size_t> assign(const std::vector<Vector>& data,
                                const std::vector<Vector>& centroids);

/// Alternates assignment and centroid recomputation until a pass changes no
/// label or max_iterations is reached (then iterations_run == max_iterations).
/// A cluster that loses all members is re-seeded to the sample farthest from
/// its nearest current centroid.
Clustering forgy_converge(const std::vector<Vector>& data, const std::vector<Vector>& seeds,
                          const ForgyParams& params);

/// Permutation p minimizing sum_i distance(a[i], b[p[i]]); exact search,
/// k <= kMaxExactClusters.
std::vector<std::size_t> pair_centroids(const std::vector<Vector>& a,
                                        const std::vector<Vector>& b);

/// Two independent converged runs, optimally paired centroids averaged, one
/// final assignment pass, centroids recomputed as the means of that pass.
Clustering averaged_forgy(const std::vector<Vector>& data, const ForgyParams& params, Rng& rng);

/// Within-cluster sum of squared distances to centroids.
double within_cluster_ss(const std::vector<Vector>& data, const Clustering& clustering);

}  // namespace tandem
