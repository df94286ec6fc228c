#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tandem/clustering.hpp"
#include "tandem/mnn.hpp"

namespace tandem {

/// What a node forwards to its children: the bottleneck code (default) or the
/// node's own input vector.
enum class ChildInput { kReducedCode, kRawPassthrough };

struct NodeConfig {
  MnnConfig mnn;
  ForgyParams forgy;
  ChildInput child_input = ChildInput::kReducedCode;
  std::size_t min_samples_to_split = 20;
  /// Keep the partially-trained network when the epoch budget runs out instead
  /// of failing the node.
  bool accept_unconverged = false;

  void validate() const;
};

/// Per-level node configs plus a depth cap. Level 0 is the root.
struct HierarchyConfig {
  std::vector<NodeConfig> levels;
  std::size_t max_depth = 2;

  void validate() const;
  std::size_t levels_in_use() const;
};

using ClassPath = std::vector<std::size_t>;

/// One trained node: mirroring network, clustering of the training codes, and
/// children keyed by cluster label. Children that failed to train are absent,
/// with the failure message kept per label.
struct TrainedNode {
  Mnn mnn;
  Clustering clustering;
  MirrorReport mirror_report;
  ChildInput child_input = ChildInput::kReducedCode;
  std::size_t level = 0;
  std::vector<std::pair<std::size_t, TrainedNode>> children;  // sorted by label
  std::map<std::size_t, std::string> child_errors;

  const TrainedNode* find_child(std::size_t label) const;
};

/// Mirror-train on data, encode it, cluster the codes. Children are left empty.
TrainedNode train_node(const std::vector<Vector>& data, const NodeConfig& config, Rng& rng,
                       std::size_t level = 0, const std::string& path = "root");

/// Full tandem recursion: train the root, then a child per cluster that has
/// enough members, each on its members' codes (or raw vectors). A failed child
/// is recorded and skipped; siblings are unaffected.
TrainedNode tandem_train(const std::vector<Vector>& data, const HierarchyConfig& config, Rng& rng);

/// Root-to-leaf cluster labels for x. Stops early where a child is absent.
ClassPath classify(const TrainedNode& root, const Vector& x);

/// (path, report) for every node, depth-first in label order.
std::vector<std::pair<std::string, MirrorReport>> collect_mirror_reports(const TrainedNode& root);

}  // namespace tandem
