#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tandem/dataset.hpp"
#include "tandem/hierarchy.hpp"

namespace tandem {

/// Accuracy of anonymous cluster labels against ground truth, maximized over
/// all relabelings of the predictions. Exact search, k <= kMaxExactClusters.
double permutation_accuracy(const std::vector<std::size_t>& predicted,
                            const std::vector<int>& truth, std::size_t k);

struct NodeEvaluation {
  std::size_t routed = 0;            // samples whose level-1 label selected this node
  std::size_t correctly_routed = 0;  // of those, samples whose true class matches the node
  std::size_t matched = 0;           // correctly routed and sub-cluster matches the subclass
  double accuracy = 0.0;             // matched / routed; misrouted samples count as errors
};

struct HierarchyEvaluation {
  double level1_accuracy = 0.0;
  /// Unweighted mean over level-2 nodes that received samples; absent for
  /// depth-1 trees.
  std::optional<double> level2_accuracy;
  /// Fraction of all samples correct at every level of their path.
  double overall_leaf_accuracy = 0.0;
  std::vector<std::size_t> level1_permutation;  // cluster label -> class label
  std::map<std::size_t, NodeEvaluation> level2_nodes;
};

/// Scores the tree against the dataset's held-out labels: level 1 by
/// permutation-matched class accuracy at the root, level 2 per node against
/// subclass labels among the samples routed to it.
HierarchyEvaluation evaluate_hierarchy(const TrainedNode& root, const Dataset& dataset);

struct TrialReport {
  std::size_t trial_index = 0;
  bool failed = false;
  std::string failure;
  double level1_train = 0.0, level1_test = 0.0, level1_union = 0.0;
  std::optional<double> level2_train, level2_test, level2_union;
  std::vector<std::pair<std::string, MirrorReport>> mirror_reports;
  double wall_seconds = 0.0;  // console diagnostics only; never serialized
};

struct Stats {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  std::size_t count = 0;
};

Stats compute_stats(const std::vector<double>& values);

struct AggregateReport {
  std::vector<TrialReport> trials;
  std::size_t failed_trials = 0;
  Stats level1_train, level1_test, level1_union;
  Stats level2_train, level2_test, level2_union;
};

/// Where trial corpora come from: a synthetic spec or a CSV path, plus the
/// train share of the split.
struct CorpusSource {
  std::optional<SyntheticSpec> synthetic;
  std::optional<std::string> csv_path;
  double train_fraction = 360.0 / 510.0;
  std::size_t csv_width = 0;  // required with csv_path
};

/// Resolves the corpus and splits it once (streams 0 of base_seed), then runs
/// n ab-initio trials, trial t on stream t+1. Failed trials are flagged and
/// excluded from the aggregate statistics.
AggregateReport run_trials(std::size_t n, const CorpusSource& corpus,
                           const HierarchyConfig& config, std::uint64_t base_seed);

/// Same protocol with the corpus already resolved and split.
AggregateReport run_trials_on(std::size_t n, const Dataset& train, const Dataset& test,
                              const HierarchyConfig& config, std::uint64_t base_seed);

}  // namespace tandem
