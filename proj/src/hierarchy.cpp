#include "tandem/hierarchy.hpp"

#include <algorithm>

namespace tandem {

void NodeConfig::validate() const {
  mnn.validate();
  forgy.validate();
  if (min_samples_to_split < forgy.k)
    throw ConfigError("node config: min_samples_to_split must be at least k");
}

void HierarchyConfig::validate() const {
  if (levels.empty()) throw ConfigError("hierarchy config: no levels");
  if (max_depth == 0) throw ConfigError("hierarchy config: max_depth must be positive");
  const std::size_t used = levels_in_use();
  for (std::size_t l = 0; l < used; ++l) levels[l].validate();
  for (std::size_t l = 0; l + 1 < used; ++l) {
    std::size_t child_width = levels[l].child_input == ChildInput::kReducedCode
                                  ? levels[l].mnn.bottleneck_dim()
                                  : levels[l].mnn.input_dim();
    if (levels[l + 1].mnn.input_dim() != child_width)
      throw ConfigError("hierarchy config: level " + std::to_string(l + 1) + " expects input " +
                        std::to_string(levels[l + 1].mnn.input_dim()) + " but level " +
                        std::to_string(l) + " hands down " + std::to_string(child_width));
  }
}

std::size_t HierarchyConfig::levels_in_use() const { return std::min(levels.size(), max_depth); }

const TrainedNode* TrainedNode::find_child(std::size_t label) const {
  for (const auto& [l, child] : children)
    if (l == label) return &child;
  return nullptr;
}

TrainedNode train_node(const std::vector<Vector>& data, const NodeConfig& config, Rng& rng,
                       std::size_t level, const std::string& path) {
  config.validate();
  if (data.size() < config.min_samples_to_split)
    throw ContractError("train_node [" + path + "]: " + std::to_string(data.size()) +
                        " samples, need at least " + std::to_string(config.min_samples_to_split));

  TrainedNode node;
  node.child_input = config.child_input;
  node.level = level;
  Mnn net = init_mnn(config.mnn, rng);
  try {
    auto [trained, report] = train_mirror(net, data, config.mnn, rng);
    node.mnn = std::move(trained);
    node.mirror_report = report;
  } catch (const TrainingError& e) {
    if (!config.accept_unconverged)
      throw TrainingError("node " + path + ": " + e.what(), e.network, e.report);
    node.mnn = e.network;
    node.mirror_report = e.report;
  }

  std::vector<Vector> codes;
  codes.reserve(data.size());
  for (const Vector& s : data) codes.push_back(encode(node.mnn, s));
  try {
    node.clustering = averaged_forgy(codes, config.forgy, rng);
  } catch (const SeedingError& e) {
    throw SeedingError("node " + path + ": " + e.what());
  }
  return node;
}

namespace {

TrainedNode train_subtree(const std::vector<Vector>& data, const HierarchyConfig& config,
                          Rng& rng, std::size_t level, const std::string& path) {
  TrainedNode node = train_node(data, config.levels[level], rng, level, path);

  const std::size_t next = level + 1;
  if (next >= config.levels_in_use()) return node;

  const bool pass_codes = node.child_input == ChildInput::kReducedCode;
  for (std::size_t label = 0; label < node.clustering.k(); ++label) {
    std::vector<Vector> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (node.clustering.assignments[i] != label) continue;
      members.push_back(pass_codes ? encode(node.mnn, data[i]) : data[i]);
    }
    if (members.size() < config.levels[next].min_samples_to_split) continue;  // step-7 stop rule
    std::string child_path = path + "/" + std::to_string(label);
    Rng child_rng = rng.stream(label + 1);
    try {
      node.children.emplace_back(label,
                                 train_subtree(members, config, child_rng, next, child_path));
    } catch (const Error& e) {
      node.child_errors[label] = e.what();
    }
  }
  return node;
}

}  // namespace

TrainedNode tandem_train(const std::vector<Vector>& data, const HierarchyConfig& config,
                         Rng& rng) {
  config.validate();
  if (data.empty()) throw ContractError("tandem_train: empty data");
  return train_subtree(data, config, rng, 0, "root");
}

ClassPath classify(const TrainedNode& root, const Vector& x) {
  ClassPath path;
  const TrainedNode* node = &root;
  Vector input = x;
  while (true) {
    Vector code = encode(node->mnn, input);
    std::size_t label = assign_one(code, node->clustering.centroids);
    path.push_back(label);
    const TrainedNode* child = node->find_child(label);
    if (!child) return path;
    if (node->child_input == ChildInput::kReducedCode) input = std::move(code);
    node = child;
  }
}

namespace {

void collect_reports(const TrainedNode& node, const std::string& path,
                     std::vector<std::pair<std::string, MirrorReport>>& out) {
  out.emplace_back(path, node.mirror_report);
  for (const auto& [label, child] : node.children)
    collect_reports(child, path + "/" + std::to_string(label), out);
}

}  // namespace

std::vector<std::pair<std::string, MirrorReport>> collect_mirror_reports(const TrainedNode& root) {
  std::vector<std::pair<std::string, MirrorReport>> out;
  collect_reports(root, "root", out);
  return out;
}

}  // namespace tandem
