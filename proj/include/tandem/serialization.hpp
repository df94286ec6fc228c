#pragma once

#include <string>

#include "json.hpp"
#include "tandem/evaluation.hpp"
#include "tandem/hierarchy.hpp"

namespace tandem {

// JSON forms round-trip exactly: nlohmann emits shortest round-trip decimals,
// and loaders validate shape invariants before returning.

nlohmann::json mnn_to_json(const Mnn& mnn);
Mnn mnn_from_json(const nlohmann::json& j);

nlohmann::json clustering_to_json(const Clustering& c);
Clustering clustering_from_json(const nlohmann::json& j);

nlohmann::json node_to_json(const TrainedNode& node);
TrainedNode node_from_json(const nlohmann::json& j);

nlohmann::json mirror_report_to_json(const MirrorReport& r);

/// Hierarchy document: {"format": "tandem-hierarchy", "root": {...}}.
void save_hierarchy(const TrainedNode& root, const std::string& path);
TrainedNode load_hierarchy(const std::string& path);

std::string output_activation_name(OutputActivation a);
OutputActivation output_activation_from_name(const std::string& name);
std::string child_input_name(ChildInput c);
ChildInput child_input_from_name(const std::string& name);

}  // namespace tandem
