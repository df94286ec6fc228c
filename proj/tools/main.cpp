// Command-line front end: generate synthetic corpora, train hierarchies,
// classify samples, and run repeated-trial evaluations.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tandem/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical unsupervised classifier built from mirroring networks"};
  app.require_subcommand(1);

  std::string config_path, data_path, model_path, out_path, spec_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::size_t> trials_flag;

  CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic corpus CSV");
  generate->add_option("--spec", spec_path, "Corpus spec (JSON)")->required();
  generate->add_option("--out", out_path, "Output CSV path")->required();
  generate->add_option("--seed", seed_flag, "Override the spec's seed");

  CLI::App* train = app.add_subcommand("train", "Train a hierarchy on a CSV corpus");
  train->add_option("--config", config_path, "Run config (JSON)")->required();
  train->add_option("--data", data_path, "Training CSV")->required();
  train->add_option("--out", out_path, "Output directory")->required();
  train->add_option("--seed", seed_flag, "Override the config's seed");

  CLI::App* classify = app.add_subcommand("classify", "Print the class path of each input row");
  classify->add_option("--model", model_path, "Model directory (or model.json)")->required();
  classify->add_option("--data", data_path, "Input CSV")->required();

  CLI::App* eval = app.add_subcommand("eval-trials", "Run repeated ab-initio trials and report");
  eval->add_option("--config", config_path, "Run config (JSON)")->required();
  eval->add_option("--trials", trials_flag, "Override the config's trial count");
  eval->add_option("--seed", seed_flag, "Override the config's seed");
  eval->add_option("--out", out_path, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      tandem::RunConfig config = tandem::parse_config(spec_path, "generate");
      if (seed_flag) config.seed = *seed_flag;
      return tandem::run_generate(config, out_path);
    }
    if (train->parsed()) {
      tandem::RunConfig config = tandem::parse_config(config_path, "train");
      if (seed_flag) config.seed = *seed_flag;
      return tandem::run_train(config, data_path, out_path);
    }
    if (classify->parsed()) {
      return tandem::run_classify(model_path, data_path);
    }
    tandem::RunConfig config = tandem::parse_config(config_path, "eval-trials");
    if (seed_flag) config.seed = *seed_flag;
    if (trials_flag) {
      if (*trials_flag == 0) throw tandem::ConfigError("--trials must be positive");
      config.trials = *trials_flag;
    }
    return tandem::run_eval_trials(config, out_path);
  } catch (const tandem::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
