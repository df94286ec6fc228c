#pragma once

#include <string>

#include "tandem/run_config.hpp"

namespace tandem {

// Command entry points behind the CLI. Each returns a process exit status and
// reports problems on stderr. Every file-producing command writes an echo of
// its effective configuration alongside the outputs; re-running from the echo
// reproduces the outputs byte for byte.

int run_generate(const RunConfig& config, const std::string& out_csv);
int run_train(const RunConfig& config, const std::string& data_csv, const std::string& out_dir);
int run_classify(const std::string& model_dir, const std::string& data_csv);
int run_eval_trials(const RunConfig& config, const std::string& out_dir);

/// Plain-text result table of an aggregate run; the layout mirrors the
/// train-vs-union success-rate summary the reports are compared against.
std::string render_summary(const AggregateReport& agg, const Dataset& train, const Dataset& test);

nlohmann::json aggregate_to_json(const AggregateReport& agg);
std::string trials_to_csv(const AggregateReport& agg);

}  // namespace tandem
