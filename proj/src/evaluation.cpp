#include "tandem/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace tandem {

double permutation_accuracy(const std::vector<std::size_t>& predicted,
                            const std::vector<int>& truth, std::size_t k) {
  if (predicted.size() != truth.size())
    throw ContractError("permutation_accuracy: label sequences differ in length");
  if (k == 0) throw ContractError("permutation_accuracy: k must be positive");
  if (k > kMaxExactClusters)
    throw UnsupportedSizeError("permutation_accuracy: exact search supports k <= " +
                               std::to_string(kMaxExactClusters));
  for (std::size_t p : predicted)
    if (p >= k) throw ContractError("permutation_accuracy: predicted label out of range");
  if (predicted.empty()) return 1.0;

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
      if (static_cast<int>(perm[predicted[i]]) == truth[i]) ++hits;
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(predicted.size());
}

HierarchyEvaluation evaluate_hierarchy(const TrainedNode& root, const Dataset& dataset) {
  if (!dataset.labels) throw EvalError("evaluate_hierarchy: dataset carries no labels");
  const auto& labels = *dataset.labels;

  std::vector<ClassPath> paths(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) paths[i] = classify(root, dataset.samples[i]);

  HierarchyEvaluation eval;
  const std::size_t k1 = root.clustering.k();

  // Level 1: permutation-matched accuracy of root labels vs class labels,
  // keeping the argmax permutation for the routing analysis below.
  std::vector<int> class_truth(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) class_truth[i] = labels[i].first;
  {
    std::vector<std::size_t> perm(k1), best_perm(k1);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    best_perm = perm;
    std::size_t best = 0;
    do {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < dataset.size(); ++i)
        if (static_cast<int>(perm[paths[i][0]]) == class_truth[i]) ++hits;
      if (hits > best) {
        best = hits;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    eval.level1_accuracy = static_cast<double>(best) / static_cast<double>(dataset.size());
    eval.level1_permutation = best_perm;
  }

  // Level 2, per existing child: among samples routed to it, a sample scores
  // only if it was routed correctly and its sub-cluster matches its subclass
  // under the node's own best permutation.
  std::size_t leaf_hits = 0;
  std::vector<double> node_accuracies;
  for (const auto& [label, child] : root.children) {
    int node_class = static_cast<int>(eval.level1_permutation[label]);
    std::vector<std::size_t> routed_idx;
    for (std::size_t i = 0; i < dataset.size(); ++i)
      if (paths[i][0] == label) routed_idx.push_back(i);

    NodeEvaluation ne;
    ne.routed = routed_idx.size();
    for (std::size_t i : routed_idx)
      if (class_truth[i] == node_class) ++ne.correctly_routed;

    const std::size_t k2 = child.clustering.k();
    if (k2 > kMaxExactClusters)
      throw UnsupportedSizeError("evaluate_hierarchy: node has k > " +
                                 std::to_string(kMaxExactClusters));
    std::vector<std::size_t> perm(k2);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t best = 0;
    do {
      std::size_t hits = 0;
      for (std::size_t i : routed_idx) {
        if (class_truth[i] != node_class) continue;  // misrouted never scores
        if (paths[i].size() < 2) continue;
        if (static_cast<int>(perm[paths[i][1]]) == labels[i].second) ++hits;
      }
      best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));

    ne.matched = best;
    if (ne.routed > 0) {
      ne.accuracy = static_cast<double>(ne.matched) / static_cast<double>(ne.routed);
      node_accuracies.push_back(ne.accuracy);
    }
    leaf_hits += ne.matched;
    eval.level2_nodes[label] = ne;
  }
  if (!node_accuracies.empty())
    eval.level2_accuracy = std::accumulate(node_accuracies.begin(), node_accuracies.end(), 0.0) /
                           static_cast<double>(node_accuracies.size());
  eval.overall_leaf_accuracy =
      dataset.size() ? static_cast<double>(leaf_hits) / static_cast<double>(dataset.size()) : 0.0;
  return eval;
}

Stats compute_stats(const std::vector<double>& values) {
  Stats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (s.count > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(s.count - 1));
  }
  return s;
}

AggregateReport run_trials_on(std::size_t n, const Dataset& train, const Dataset& test,
                              const HierarchyConfig& config, std::uint64_t base_seed) {
  if (n == 0) throw ContractError("run_trials: need at least one trial");
  config.validate();
  const Dataset union_set = concat(train, test);

  AggregateReport agg;
  for (std::size_t t = 0; t < n; ++t) {
    TrialReport report;
    report.trial_index = t;
    Rng trial_rng = Rng(base_seed).stream(t + 1);
    auto started = std::chrono::steady_clock::now();
    try {
      TrainedNode root = tandem_train(train.samples, config, trial_rng);
      auto on_train = evaluate_hierarchy(root, train);
      auto on_test = evaluate_hierarchy(root, test);
      auto on_union = evaluate_hierarchy(root, union_set);
      report.level1_train = on_train.level1_accuracy;
      report.level1_test = on_test.level1_accuracy;
      report.level1_union = on_union.level1_accuracy;
      report.level2_train = on_train.level2_accuracy;
      report.level2_test = on_test.level2_accuracy;
      report.level2_union = on_union.level2_accuracy;
      report.mirror_reports = collect_mirror_reports(root);
    } catch (const Error& e) {
      report.failed = true;
      report.failure = e.what();
      ++agg.failed_trials;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    agg.trials.push_back(std::move(report));
  }

  auto gather = [&](auto select) {
    std::vector<double> values;
    for (const TrialReport& r : agg.trials) {
      if (r.failed) continue;
      if (auto v = select(r)) values.push_back(*v);
    }
    return compute_stats(values);
  };
  auto opt = [](double v) { return std::optional<double>(v); };
  agg.level1_train = gather([&](const TrialReport& r) { return opt(r.level1_train); });
  agg.level1_test = gather([&](const TrialReport& r) { return opt(r.level1_test); });
  agg.level1_union = gather([&](const TrialReport& r) { return opt(r.level1_union); });
  agg.level2_train = gather([](const TrialReport& r) { return r.level2_train; });
  agg.level2_test = gather([](const TrialReport& r) { return r.level2_test; });
  agg.level2_union = gather([](const TrialReport& r) { return r.level2_union; });
  return agg;
}

AggregateReport run_trials(std::size_t n, const CorpusSource& corpus,
                           const HierarchyConfig& config, std::uint64_t base_seed) {
  if (corpus.synthetic.has_value() == corpus.csv_path.has_value())
    throw ConfigError("corpus: exactly one of synthetic spec or csv path required");
  Rng corpus_rng = Rng(base_seed).stream(0);
  Dataset full = corpus.synthetic ? generate_synthetic(*corpus.synthetic, corpus_rng)
                                  : load_vectors(*corpus.csv_path, corpus.csv_width);
  auto [train, test] = split(full, corpus.train_fraction, corpus_rng);
  return run_trials_on(n, train, test, config, base_seed);
}

}  // namespace tandem
