#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "tandem/evaluation.hpp"

namespace tandem {

/// Everything a run needs, fully validated. Unknown keys anywhere in the
/// config file are rejected with the offending key named.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  std::optional<CorpusSource> corpus;           // generate / eval-trials
  std::optional<HierarchyConfig> hierarchy;     // train / eval-trials

  /// Effective configuration with every default materialized; written next to
  /// the outputs, and accepted back as an input config.
  nlohmann::json echo(const std::string& command) const;
};

/// Parses and validates a config file for the given command
/// ("generate", "train" or "eval-trials").
RunConfig parse_config(const std::string& path, const std::string& command);
RunConfig parse_config_json(const nlohmann::json& j, const std::string& command);

}  // namespace tandem
