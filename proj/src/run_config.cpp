#include "tandem/run_config.hpp"

#include <set>

#include "tandem/fsio.hpp"
#include "tandem/serialization.hpp"

namespace tandem {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("config: unknown key \"" + key + "\" in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError("config: missing required key \"" + key + "\" in " + where);
  return obj.at(key);
}

double positive_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError("config: " + where + " must be a number");
  double x = v.get<double>();
  if (!(x > 0.0)) throw ConfigError("config: " + where + " must be positive");
  return x;
}

std::size_t uint_value(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ConfigError("config: " + where + " must be a non-negative integer");
  return v.get<std::size_t>();
}

SyntheticSpec parse_synthetic(const json& j, const std::string& where) {
  reject_unknown(j, {"width", "classes", "subclasses_per_class", "samples_per_subclass",
                     "class_separation", "subclass_separation", "noise_sigma"},
                 where);
  SyntheticSpec spec;
  if (j.contains("width")) spec.width = uint_value(j.at("width"), where + ".width");
  if (j.contains("classes")) spec.classes = uint_value(j.at("classes"), where + ".classes");
  if (j.contains("subclasses_per_class"))
    spec.subclasses_per_class =
        uint_value(j.at("subclasses_per_class"), where + ".subclasses_per_class");
  if (j.contains("samples_per_subclass"))
    spec.samples_per_subclass =
        uint_value(j.at("samples_per_subclass"), where + ".samples_per_subclass");
  if (j.contains("class_separation"))
    spec.class_separation = positive_number(j.at("class_separation"), where + ".class_separation");
  if (j.contains("subclass_separation"))
    spec.subclass_separation =
        positive_number(j.at("subclass_separation"), where + ".subclass_separation");
  if (j.contains("noise_sigma"))
    spec.noise_sigma = positive_number(j.at("noise_sigma"), where + ".noise_sigma");
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + " (in " + where + ")");
  }
  return spec;
}

CorpusSource parse_corpus(const json& j) {
  reject_unknown(j, {"synthetic", "csv", "csv_width", "train_fraction"}, "corpus");
  CorpusSource corpus;
  if (j.contains("synthetic")) corpus.synthetic = parse_synthetic(j.at("synthetic"), "corpus.synthetic");
  if (j.contains("csv")) {
    corpus.csv_path = j.at("csv").get<std::string>();
    corpus.csv_width = uint_value(require(j, "csv_width", "corpus"), "corpus.csv_width");
    if (corpus.csv_width == 0) throw ConfigError("config: corpus.csv_width must be positive");
  }
  if (corpus.synthetic.has_value() == corpus.csv_path.has_value())
    throw ConfigError("config: corpus needs exactly one of \"synthetic\" or \"csv\"");
  if (j.contains("train_fraction")) {
    corpus.train_fraction = j.at("train_fraction").get<double>();
    if (!(corpus.train_fraction > 0.0 && corpus.train_fraction < 1.0))
      throw ConfigError("config: corpus.train_fraction must lie strictly between 0 and 1");
  }
  return corpus;
}

NodeConfig parse_level(const json& j, std::size_t index) {
  const std::string where = "hierarchy.levels[" + std::to_string(index) + "]";
  reject_unknown(j,
                 {"layer_dims", "mirror_threshold", "success_fraction", "learning_rate",
                  "weight_init", "max_epochs", "output_activation", "clusters",
                  "seed_min_distance", "max_cluster_iterations", "max_seed_retries",
                  "child_input", "min_samples_to_split", "accept_unconverged"},
                 where);
  NodeConfig level;
  level.mnn.layer_dims =
      require(j, "layer_dims", where).get<std::vector<std::size_t>>();
  level.mnn.mirror_threshold =
      positive_number(require(j, "mirror_threshold", where), where + ".mirror_threshold");
  level.mnn.learning_rate =
      positive_number(require(j, "learning_rate", where), where + ".learning_rate");
  if (j.contains("success_fraction"))
    level.mnn.success_fraction = j.at("success_fraction").get<double>();
  if (j.contains("weight_init")) {
    const auto& init = j.at("weight_init");
    if (!init.is_array() || init.size() != 2)
      throw ConfigError("config: " + where + ".weight_init must be [lo, hi]");
    level.mnn.weight_init_lo = init.at(0).get<double>();
    level.mnn.weight_init_hi = init.at(1).get<double>();
  }
  if (j.contains("max_epochs"))
    level.mnn.max_epochs = uint_value(j.at("max_epochs"), where + ".max_epochs");
  if (j.contains("output_activation"))
    level.mnn.output_activation =
        output_activation_from_name(j.at("output_activation").get<std::string>());
  level.forgy.k = uint_value(require(j, "clusters", where), where + ".clusters");
  level.forgy.seed_min_distance = require(j, "seed_min_distance", where).get<double>();
  if (j.contains("max_cluster_iterations"))
    level.forgy.max_iterations =
        uint_value(j.at("max_cluster_iterations"), where + ".max_cluster_iterations");
  if (j.contains("max_seed_retries"))
    level.forgy.max_seed_retries =
        uint_value(j.at("max_seed_retries"), where + ".max_seed_retries");
  if (j.contains("child_input"))
    level.child_input = child_input_from_name(j.at("child_input").get<std::string>());
  if (j.contains("min_samples_to_split"))
    level.min_samples_to_split =
        uint_value(j.at("min_samples_to_split"), where + ".min_samples_to_split");
  if (j.contains("accept_unconverged"))
    level.accept_unconverged = j.at("accept_unconverged").get<bool>();
  try {
    level.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + " (in " + where + ")");
  }
  return level;
}

HierarchyConfig parse_hierarchy(const json& j) {
  reject_unknown(j, {"max_depth", "levels"}, "hierarchy");
  HierarchyConfig config;
  if (j.contains("max_depth"))
    config.max_depth = uint_value(j.at("max_depth"), "hierarchy.max_depth");
  const json& levels = require(j, "levels", "hierarchy");
  if (!levels.is_array() || levels.empty())
    throw ConfigError("config: hierarchy.levels must be a non-empty array");
  for (std::size_t i = 0; i < levels.size(); ++i)
    config.levels.push_back(parse_level(levels.at(i), i));
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + " (in hierarchy)");
  }
  return config;
}

json synthetic_to_json(const SyntheticSpec& spec) {
  return json{{"width", spec.width},
              {"classes", spec.classes},
              {"subclasses_per_class", spec.subclasses_per_class},
              {"samples_per_subclass", spec.samples_per_subclass},
              {"class_separation", spec.class_separation},
              {"subclass_separation", spec.subclass_separation},
              {"noise_sigma", spec.noise_sigma}};
}

json corpus_to_json(const CorpusSource& corpus) {
  json j;
  if (corpus.synthetic) j["synthetic"] = synthetic_to_json(*corpus.synthetic);
  if (corpus.csv_path) {
    j["csv"] = *corpus.csv_path;
    j["csv_width"] = corpus.csv_width;
  }
  j["train_fraction"] = corpus.train_fraction;
  return j;
}

json level_to_json(const NodeConfig& level) {
  return json{{"layer_dims", level.mnn.layer_dims},
              {"mirror_threshold", level.mnn.mirror_threshold},
              {"success_fraction", level.mnn.success_fraction},
              {"learning_rate", level.mnn.learning_rate},
              {"weight_init", {level.mnn.weight_init_lo, level.mnn.weight_init_hi}},
              {"max_epochs", level.mnn.max_epochs},
              {"output_activation", output_activation_name(level.mnn.output_activation)},
              {"clusters", level.forgy.k},
              {"seed_min_distance", level.forgy.seed_min_distance},
              {"max_cluster_iterations", level.forgy.max_iterations},
              {"max_seed_retries", level.forgy.max_seed_retries},
              {"child_input", child_input_name(level.child_input)},
              {"min_samples_to_split", level.min_samples_to_split},
              {"accept_unconverged", level.accept_unconverged}};
}

}  // namespace

json RunConfig::echo(const std::string& command) const {
  json j;
  j["seed"] = seed;
  if (command == "eval-trials") j["trials"] = trials;
  if (corpus) {
    if (command == "generate")
      j["synthetic"] = synthetic_to_json(*corpus->synthetic);
    else
      j["corpus"] = corpus_to_json(*corpus);
  }
  if (hierarchy) {
    json levels = json::array();
    for (const NodeConfig& level : hierarchy->levels) levels.push_back(level_to_json(level));
    j["hierarchy"] = json{{"max_depth", hierarchy->max_depth}, {"levels", std::move(levels)}};
  }
  return j;
}

RunConfig parse_config_json(const json& j, const std::string& command) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  RunConfig config;
  if (command == "generate") {
    reject_unknown(j, {"seed", "synthetic"}, "config");
    CorpusSource corpus;
    corpus.synthetic = parse_synthetic(require(j, "synthetic", "config"), "synthetic");
    config.corpus = std::move(corpus);
  } else if (command == "train") {
    reject_unknown(j, {"seed", "hierarchy"}, "config");
    config.hierarchy = parse_hierarchy(require(j, "hierarchy", "config"));
  } else if (command == "eval-trials") {
    reject_unknown(j, {"seed", "trials", "corpus", "hierarchy"}, "config");
    config.corpus = parse_corpus(require(j, "corpus", "config"));
    config.hierarchy = parse_hierarchy(require(j, "hierarchy", "config"));
    if (j.contains("trials")) {
      config.trials = uint_value(j.at("trials"), "trials");
      if (config.trials == 0) throw ConfigError("config: trials must be positive");
    }
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned())
      throw ConfigError("config: seed must be a non-negative integer");
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  return config;
}

RunConfig parse_config(const std::string& path, const std::string& command) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config_json(j, command);
}

}  // namespace tandem
