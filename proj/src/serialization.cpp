#include "tandem/serialization.hpp"

#include <algorithm>

#include "tandem/fsio.hpp"

namespace tandem {

using nlohmann::json;

std::string output_activation_name(OutputActivation a) {
  return a == OutputActivation::kSigmoid ? "sigmoid" : "linear";
}

OutputActivation output_activation_from_name(const std::string& name) {
  if (name == "sigmoid") return OutputActivation::kSigmoid;
  if (name == "linear") return OutputActivation::kLinear;
  throw ConfigError("unknown output_activation '" + name + "'");
}

std::string child_input_name(ChildInput c) {
  return c == ChildInput::kReducedCode ? "reduced_code" : "raw_passthrough";
}

ChildInput child_input_from_name(const std::string& name) {
  if (name == "reduced_code") return ChildInput::kReducedCode;
  if (name == "raw_passthrough") return ChildInput::kRawPassthrough;
  throw ConfigError("unknown child_input '" + name + "'");
}

json mnn_to_json(const Mnn& mnn) {
  json j;
  j["layer_dims"] = mnn.config.layer_dims;
  j["output_activation"] = output_activation_name(mnn.config.output_activation);
  j["mirror_threshold"] = mnn.config.mirror_threshold;
  j["success_fraction"] = mnn.config.success_fraction;
  j["learning_rate"] = mnn.config.learning_rate;
  j["weight_init"] = {mnn.config.weight_init_lo, mnn.config.weight_init_hi};
  j["max_epochs"] = mnn.config.max_epochs;
  json weights = json::array();
  for (const Matrix& w : mnn.weights) weights.push_back(w.data());  // row-major
  j["weights"] = std::move(weights);
  json biases = json::array();
  for (const Vector& b : mnn.biases) biases.push_back(b);
  j["biases"] = std::move(biases);
  return j;
}

Mnn mnn_from_json(const json& j) {
  Mnn mnn;
  mnn.config.layer_dims = j.at("layer_dims").get<std::vector<std::size_t>>();
  mnn.config.output_activation = output_activation_from_name(j.at("output_activation"));
  mnn.config.mirror_threshold = j.at("mirror_threshold");
  mnn.config.success_fraction = j.at("success_fraction");
  mnn.config.learning_rate = j.at("learning_rate");
  mnn.config.weight_init_lo = j.at("weight_init").at(0);
  mnn.config.weight_init_hi = j.at("weight_init").at(1);
  mnn.config.max_epochs = j.at("max_epochs");
  mnn.config.validate();
  const auto& dims = mnn.config.layer_dims;
  const auto& weights = j.at("weights");
  const auto& biases = j.at("biases");
  if (weights.size() != dims.size() - 1 || biases.size() != dims.size() - 1)
    throw SchemaError("mnn json: parameter count does not match layer_dims");
  for (std::size_t t = 0; t + 1 < dims.size(); ++t) {
    auto flat = weights.at(t).get<std::vector<double>>();
    if (flat.size() != dims[t + 1] * dims[t])
      throw SchemaError("mnn json: weight block " + std::to_string(t) + " has wrong size");
    Matrix w(dims[t + 1], dims[t]);
    w.data() = std::move(flat);
    if (!all_finite(w)) throw SchemaError("mnn json: non-finite weight");
    mnn.weights.push_back(std::move(w));
    auto b = biases.at(t).get<Vector>();
    if (b.size() != dims[t + 1])
      throw SchemaError("mnn json: bias block " + std::to_string(t) + " has wrong size");
    if (!all_finite(b)) throw SchemaError("mnn json: non-finite bias");
    mnn.biases.push_back(std::move(b));
  }
  return mnn;
}

json clustering_to_json(const Clustering& c) {
  json j;
  j["centroids"] = c.centroids;
  j["assignments"] = c.assignments;
  j["iterations_run"] = c.iterations_run;
  return j;
}

Clustering clustering_from_json(const json& j) {
  Clustering c;
  c.centroids = j.at("centroids").get<std::vector<Vector>>();
  c.assignments = j.at("assignments").get<std::vector<std::size_t>>();
  c.iterations_run = j.at("iterations_run");
  if (c.centroids.empty()) throw SchemaError("clustering json: no centroids");
  for (std::size_t a : c.assignments)
    if (a >= c.centroids.size()) throw SchemaError("clustering json: assignment out of range");
  return c;
}

json mirror_report_to_json(const MirrorReport& r) {
  return json{{"epochs_run", r.epochs_run},
              {"mirrored_fraction", r.mirrored_fraction},
              {"mean_reconstruction_distance", r.mean_reconstruction_distance},
              {"converged", r.converged}};
}

namespace {

MirrorReport mirror_report_from_json(const json& j) {
  MirrorReport r;
  r.epochs_run = j.at("epochs_run");
  r.mirrored_fraction = j.at("mirrored_fraction");
  r.mean_reconstruction_distance = j.at("mean_reconstruction_distance");
  r.converged = j.at("converged");
  return r;
}

}  // namespace

json node_to_json(const TrainedNode& node) {
  json j;
  j["level"] = node.level;
  j["child_input"] = child_input_name(node.child_input);
  j["mnn"] = mnn_to_json(node.mnn);
  j["clustering"] = clustering_to_json(node.clustering);
  j["mirror_report"] = mirror_report_to_json(node.mirror_report);
  json children = json::object();
  for (const auto& [label, child] : node.children)
    children[std::to_string(label)] = node_to_json(child);
  j["children"] = std::move(children);
  json errors = json::object();
  for (const auto& [label, message] : node.child_errors)
    errors[std::to_string(label)] = message;
  j["child_errors"] = std::move(errors);
  return j;
}

TrainedNode node_from_json(const json& j) {
  TrainedNode node;
  node.level = j.at("level");
  node.child_input = child_input_from_name(j.at("child_input"));
  node.mnn = mnn_from_json(j.at("mnn"));
  node.clustering = clustering_from_json(j.at("clustering"));
  node.mirror_report = mirror_report_from_json(j.at("mirror_report"));
  for (const auto& [key, value] : j.at("children").items())
    node.children.emplace_back(std::stoul(key), node_from_json(value));
  std::sort(node.children.begin(), node.children.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, value] : j.at("child_errors").items())
    node.child_errors[std::stoul(key)] = value.get<std::string>();
  return node;
}

void save_hierarchy(const TrainedNode& root, const std::string& path) {
  json doc{{"format", "tandem-hierarchy"}, {"root", node_to_json(root)}};
  atomic_write_text(path, doc.dump(2) + "\n");
}

TrainedNode load_hierarchy(const std::string& path) {
  json doc = nlohmann::json::parse(read_text(path));
  if (doc.value("format", "") != "tandem-hierarchy")
    throw SchemaError("'" + path + "' is not a hierarchy file");
  return node_from_json(doc.at("root"));
}

}  // namespace tandem
