// Python bindings for the core operations: corpus generation, mirror
// training, Forgy clustering, hierarchy training/classification and the
// trial-evaluation harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tandem/evaluation.hpp"
#include "tandem/run_config.hpp"
#include "tandem/serialization.hpp"

namespace py = pybind11;
using namespace tandem;

namespace {

// Matrices cross the boundary as nested row lists.
std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ContractError("matrix rows differ in length");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mirroring-network tandem classifier core";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<SeedingError>(m, "SeedingError", PyExc_RuntimeError);
  py::register_exception<UnsupportedSizeError>(m, "UnsupportedSizeError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<StratifyError>(m, "StratifyError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
  static py::exception<TrainingError> training_error(m, "TrainingError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const TrainingError& e) {
      py::set_error(training_error, e.what());
    }
  });

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &Rng::seed)
      .def("uniform", &Rng::uniform, py::arg("lo"), py::arg("hi"))
      .def("uniform_index", &Rng::uniform_index, py::arg("n"))
      .def("normal", &Rng::normal, py::arg("mean"), py::arg("stddev"))
      .def("stream", &Rng::stream, py::arg("index"));

  m.def("affine", [](const std::vector<std::vector<double>>& w, const Vector& x,
                     const Vector& b) { return affine(matrix_from_rows(w), x, b); });
  m.def("sigmoid", py::overload_cast<const Vector&>(&sigmoid));
  m.def("euclidean_distance", &euclidean_distance);
  m.def("uniform_draw", &uniform_draw);

  py::enum_<OutputActivation>(m, "OutputActivation")
      .value("SIGMOID", OutputActivation::kSigmoid)
      .value("LINEAR", OutputActivation::kLinear);

  py::class_<MnnConfig>(m, "MnnConfig")
      .def(py::init<>())
      .def_readwrite("layer_dims", &MnnConfig::layer_dims)
      .def_readwrite("mirror_threshold", &MnnConfig::mirror_threshold)
      .def_readwrite("success_fraction", &MnnConfig::success_fraction)
      .def_readwrite("learning_rate", &MnnConfig::learning_rate)
      .def_readwrite("weight_init_lo", &MnnConfig::weight_init_lo)
      .def_readwrite("weight_init_hi", &MnnConfig::weight_init_hi)
      .def_readwrite("max_epochs", &MnnConfig::max_epochs)
      .def_readwrite("output_activation", &MnnConfig::output_activation)
      .def("validate", &MnnConfig::validate)
      .def("bottleneck_dim", &MnnConfig::bottleneck_dim);

  py::class_<Mnn>(m, "Mnn")
      .def_readonly("config", &Mnn::config)
      .def_property_readonly("weights",
                             [](const Mnn& net) {
                               std::vector<std::vector<std::vector<double>>> out;
                               for (const Matrix& w : net.weights) out.push_back(matrix_rows(w));
                               return out;
                             })
      .def_readonly("biases", &Mnn::biases)
      .def("__eq__", [](const Mnn& a, const Mnn& b) { return a == b; });

  py::class_<MirrorReport>(m, "MirrorReport")
      .def_readonly("epochs_run", &MirrorReport::epochs_run)
      .def_readonly("mirrored_fraction", &MirrorReport::mirrored_fraction)
      .def_readonly("mean_reconstruction_distance", &MirrorReport::mean_reconstruction_distance)
      .def_readonly("converged", &MirrorReport::converged);

  m.def("init_mnn", &init_mnn, py::arg("config"), py::arg("rng"));
  m.def("forward", [](const Mnn& net, const Vector& x) {
    auto res = forward(net, x);
    return py::make_tuple(res.output, res.code);
  });
  m.def("encode", &encode);
  m.def("is_mirrored", &is_mirrored, py::arg("mnn"), py::arg("x"), py::arg("threshold"));
  m.def("backprop_step", &backprop_step, py::arg("mnn"), py::arg("x"), py::arg("learning_rate"));
  m.def("train_mirror", &train_mirror, py::arg("mnn"), py::arg("data"), py::arg("config"),
        py::arg("rng"));
  m.def("reconstruction_loss", &reconstruction_loss);

  py::class_<ForgyParams>(m, "ForgyParams")
      .def(py::init<>())
      .def_readwrite("k", &ForgyParams::k)
      .def_readwrite("seed_min_distance", &ForgyParams::seed_min_distance)
      .def_readwrite("max_iterations", &ForgyParams::max_iterations)
      .def_readwrite("max_seed_retries", &ForgyParams::max_seed_retries);

  py::class_<Clustering>(m, "Clustering")
      .def_readonly("centroids", &Clustering::centroids)
      .def_readonly("assignments", &Clustering::assignments)
      .def_readonly("iterations_run", &Clustering::iterations_run)
      .def("k", &Clustering::k);

  m.def("select_seeds", &select_seeds, py::arg("data"), py::arg("params"), py::arg("rng"));
  m.def("assign", &assign, py::arg("data"), py::arg("centroids"));
  m.def("forgy_converge", &forgy_converge, py::arg("data"), py::arg("seeds"), py::arg("params"));
  m.def("pair_centroids", &pair_centroids);
  m.def("averaged_forgy", &averaged_forgy, py::arg("data"), py::arg("params"), py::arg("rng"));
  m.def("within_cluster_ss", &within_cluster_ss);

  py::enum_<ChildInput>(m, "ChildInput")
      .value("REDUCED_CODE", ChildInput::kReducedCode)
      .value("RAW_PASSTHROUGH", ChildInput::kRawPassthrough);

  py::class_<NodeConfig>(m, "NodeConfig")
      .def(py::init<>())
      .def_readwrite("mnn", &NodeConfig::mnn)
      .def_readwrite("forgy", &NodeConfig::forgy)
      .def_readwrite("child_input", &NodeConfig::child_input)
      .def_readwrite("min_samples_to_split", &NodeConfig::min_samples_to_split)
      .def_readwrite("accept_unconverged", &NodeConfig::accept_unconverged);

  py::class_<HierarchyConfig>(m, "HierarchyConfig")
      .def(py::init<>())
      .def_readwrite("levels", &HierarchyConfig::levels)
      .def_readwrite("max_depth", &HierarchyConfig::max_depth);

  py::class_<TrainedNode>(m, "TrainedNode")
      .def_readonly("mnn", &TrainedNode::mnn)
      .def_readonly("clustering", &TrainedNode::clustering)
      .def_readonly("mirror_report", &TrainedNode::mirror_report)
      .def_readonly("level", &TrainedNode::level)
      .def_readonly("child_errors", &TrainedNode::child_errors)
      .def_property_readonly("children",
                             [](const TrainedNode& node) {
                               std::map<std::size_t, const TrainedNode*> out;
                               for (const auto& [label, child] : node.children)
                                 out[label] = &child;
                               return out;
                             },
                             py::return_value_policy::reference_internal);

  m.def("train_node", &train_node, py::arg("data"), py::arg("config"), py::arg("rng"),
        py::arg("level") = 0, py::arg("path") = "root");
  m.def("tandem_train", &tandem_train, py::arg("data"), py::arg("config"), py::arg("rng"));
  m.def("classify", &classify, py::arg("root"), py::arg("x"));
  m.def("save_hierarchy", &save_hierarchy, py::arg("root"), py::arg("path"));
  m.def("load_hierarchy", &load_hierarchy, py::arg("path"));

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("samples", &Dataset::samples)
      .def_readwrite("labels", &Dataset::labels)
      .def_readwrite("width", &Dataset::width)
      .def("__len__", &Dataset::size);

  py::class_<SyntheticSpec>(m, "SyntheticSpec")
      .def(py::init<>())
      .def_readwrite("width", &SyntheticSpec::width)
      .def_readwrite("classes", &SyntheticSpec::classes)
      .def_readwrite("subclasses_per_class", &SyntheticSpec::subclasses_per_class)
      .def_readwrite("samples_per_subclass", &SyntheticSpec::samples_per_subclass)
      .def_readwrite("class_separation", &SyntheticSpec::class_separation)
      .def_readwrite("subclass_separation", &SyntheticSpec::subclass_separation)
      .def_readwrite("noise_sigma", &SyntheticSpec::noise_sigma);

  m.def("load_vectors", &load_vectors, py::arg("path"), py::arg("expected_width"));
  m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("path"));
  m.def("generate_synthetic", &generate_synthetic, py::arg("spec"), py::arg("rng"));
  m.def("split", &split, py::arg("dataset"), py::arg("train_fraction"), py::arg("rng"));
  m.def("concat", &concat);

  py::class_<NodeEvaluation>(m, "NodeEvaluation")
      .def_readonly("routed", &NodeEvaluation::routed)
      .def_readonly("correctly_routed", &NodeEvaluation::correctly_routed)
      .def_readonly("matched", &NodeEvaluation::matched)
      .def_readonly("accuracy", &NodeEvaluation::accuracy);

  py::class_<HierarchyEvaluation>(m, "HierarchyEvaluation")
      .def_readonly("level1_accuracy", &HierarchyEvaluation::level1_accuracy)
      .def_readonly("level2_accuracy", &HierarchyEvaluation::level2_accuracy)
      .def_readonly("overall_leaf_accuracy", &HierarchyEvaluation::overall_leaf_accuracy)
      .def_readonly("level1_permutation", &HierarchyEvaluation::level1_permutation)
      .def_readonly("level2_nodes", &HierarchyEvaluation::level2_nodes);

  py::class_<TrialReport>(m, "TrialReport")
      .def_readonly("trial_index", &TrialReport::trial_index)
      .def_readonly("failed", &TrialReport::failed)
      .def_readonly("failure", &TrialReport::failure)
      .def_readonly("level1_train", &TrialReport::level1_train)
      .def_readonly("level1_test", &TrialReport::level1_test)
      .def_readonly("level1_union", &TrialReport::level1_union)
      .def_readonly("level2_train", &TrialReport::level2_train)
      .def_readonly("level2_test", &TrialReport::level2_test)
      .def_readonly("level2_union", &TrialReport::level2_union)
      .def_readonly("wall_seconds", &TrialReport::wall_seconds);

  py::class_<Stats>(m, "Stats")
      .def_readonly("mean", &Stats::mean)
      .def_readonly("stddev", &Stats::stddev)
      .def_readonly("min", &Stats::min)
      .def_readonly("max", &Stats::max)
      .def_readonly("count", &Stats::count);

  py::class_<CorpusSource>(m, "CorpusSource")
      .def(py::init<>())
      .def_readwrite("synthetic", &CorpusSource::synthetic)
      .def_readwrite("csv_path", &CorpusSource::csv_path)
      .def_readwrite("train_fraction", &CorpusSource::train_fraction)
      .def_readwrite("csv_width", &CorpusSource::csv_width);

  py::class_<AggregateReport>(m, "AggregateReport")
      .def_readonly("trials", &AggregateReport::trials)
      .def_readonly("failed_trials", &AggregateReport::failed_trials)
      .def_readonly("level1_train", &AggregateReport::level1_train)
      .def_readonly("level1_test", &AggregateReport::level1_test)
      .def_readonly("level1_union", &AggregateReport::level1_union)
      .def_readonly("level2_train", &AggregateReport::level2_train)
      .def_readonly("level2_test", &AggregateReport::level2_test)
      .def_readonly("level2_union", &AggregateReport::level2_union);

  m.def("permutation_accuracy", &permutation_accuracy, py::arg("predicted"), py::arg("truth"),
        py::arg("k"));
  m.def("evaluate_hierarchy", &evaluate_hierarchy, py::arg("root"), py::arg("dataset"));
  m.def("run_trials", &run_trials, py::arg("n"), py::arg("corpus"), py::arg("config"),
        py::arg("base_seed"));
  m.def("run_trials_on", &run_trials_on, py::arg("n"), py::arg("train"), py::arg("test"),
        py::arg("config"), py::arg("base_seed"));
}
