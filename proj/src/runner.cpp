#include "tandem/runner.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "tandem/fsio.hpp"
#include "tandem/serialization.hpp"

namespace tandem {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string shortest_decimal(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_echo(const RunConfig& config, const std::string& command, const fs::path& path) {
  atomic_write_text(path.string(), config.echo(command).dump(2) + "\n");
}

std::string format_accuracy(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << std::fixed << v;
  return ss.str();
}

std::string format_optional(const Stats& s) {
  return s.count == 0 ? std::string("   n/a") : format_accuracy(s.mean);
}

}  // namespace

int run_generate(const RunConfig& config, const std::string& out_csv) {
  Rng rng(config.seed);
  Dataset corpus = generate_synthetic(*config.corpus->synthetic, rng);
  write_csv(corpus, out_csv);
  write_echo(config, "generate", out_csv + ".echo.json");
  std::cerr << "generated " << corpus.size() << " samples of width " << corpus.width << " -> "
            << out_csv << "\n";
  return 0;
}

int run_train(const RunConfig& config, const std::string& data_csv, const std::string& out_dir) {
  const HierarchyConfig& hierarchy = *config.hierarchy;
  Dataset data = load_vectors(data_csv, hierarchy.levels.front().mnn.input_dim());
  Rng rng(config.seed);
  TrainedNode root = tandem_train(data.samples, hierarchy, rng);

  fs::create_directories(out_dir);
  save_hierarchy(root, (fs::path(out_dir) / "model.json").string());

  json reports = json::object();
  for (const auto& [path, report] : collect_mirror_reports(root))
    reports[path] = mirror_report_to_json(report);
  atomic_write_text((fs::path(out_dir) / "mirror_reports.json").string(), reports.dump(2) + "\n");
  write_echo(config, "train", fs::path(out_dir) / "config_echo.json");

  for (const auto& [path, report] : collect_mirror_reports(root))
    std::cerr << path << ": epochs=" << report.epochs_run
              << " mirrored=" << format_accuracy(report.mirrored_fraction)
              << (report.converged ? "" : " (unconverged)") << "\n";
  for (const auto& [label, message] : root.child_errors)
    std::cerr << "child " << label << " failed: " << message << "\n";
  std::cerr << "model written to " << out_dir << "\n";
  return 0;
}

int run_classify(const std::string& model_dir, const std::string& data_csv) {
  fs::path model_path = fs::path(model_dir) / "model.json";
  if (!fs::exists(model_path)) model_path = model_dir;  // accept a direct file too
  TrainedNode root = load_hierarchy(model_path.string());
  Dataset data = load_vectors(data_csv, root.mnn.config.input_dim());
  for (const Vector& sample : data.samples) {
    ClassPath path = classify(root, sample);
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << path[i];
    }
    std::cout << '\n';
  }
  return 0;
}

std::string trials_to_csv(const AggregateReport& agg) {
  std::string out =
      "trial,status,level1_train,level1_test,level1_union,level2_train,level2_test,level2_union\n";
  for (const TrialReport& r : agg.trials) {
    out += std::to_string(r.trial_index);
    out += r.failed ? ",failed" : ",ok";
    if (r.failed) {
      out += ",,,,,,\n";
      continue;
    }
    auto cell = [&](double v) { out += ',' + shortest_decimal(v); };
    auto opt_cell = [&](const std::optional<double>& v) {
      out += ',';
      if (v) out += shortest_decimal(*v);
    };
    cell(r.level1_train);
    cell(r.level1_test);
    cell(r.level1_union);
    opt_cell(r.level2_train);
    opt_cell(r.level2_test);
    opt_cell(r.level2_union);
    out += '\n';
  }
  return out;
}

namespace {

json stats_to_json(const Stats& s) {
  if (s.count == 0) return json{{"count", 0}};
  return json{{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max},
              {"count", s.count}};
}

}  // namespace

json aggregate_to_json(const AggregateReport& agg) {
  json trials = json::array();
  for (const TrialReport& r : agg.trials) {
    json t{{"trial", r.trial_index}, {"status", r.failed ? "failed" : "ok"}};
    if (r.failed) {
      t["failure"] = r.failure;
    } else {
      t["level1_train"] = r.level1_train;
      t["level1_test"] = r.level1_test;
      t["level1_union"] = r.level1_union;
      if (r.level2_train) t["level2_train"] = *r.level2_train;
      if (r.level2_test) t["level2_test"] = *r.level2_test;
      if (r.level2_union) t["level2_union"] = *r.level2_union;
      json reports = json::object();
      for (const auto& [path, report] : r.mirror_reports)
        reports[path] = mirror_report_to_json(report);
      t["mirror_reports"] = std::move(reports);
    }
    trials.push_back(std::move(t));
  }
  return json{{"trials", std::move(trials)},
              {"failed_trials", agg.failed_trials},
              {"metrics",
               json{{"level1_train", stats_to_json(agg.level1_train)},
                    {"level1_test", stats_to_json(agg.level1_test)},
                    {"level1_union", stats_to_json(agg.level1_union)},
                    {"level2_train", stats_to_json(agg.level2_train)},
                    {"level2_test", stats_to_json(agg.level2_test)},
                    {"level2_union", stats_to_json(agg.level2_union)}}}};
}

std::string render_summary(const AggregateReport& agg, const Dataset& train, const Dataset& test) {
  std::ostringstream out;
  std::size_t ok = agg.trials.size() - agg.failed_trials;
  out << "Hierarchical classifier success rates (averaged over " << ok << " trial"
      << (ok == 1 ? "" : "s");
  if (agg.failed_trials) out << ", " << agg.failed_trials << " failed";
  out << ")\n";
  out << "Samples: " << train.size() << " training / " << test.size() << " testing\n\n";
  out << "                                Training samples    Training & test sets\n";
  out << "Level I success rate                " << format_optional(agg.level1_train)
      << "                " << format_optional(agg.level1_union) << "\n";
  out << "Level II success rate (node avg)    " << format_optional(agg.level2_train)
      << "                " << format_optional(agg.level2_union) << "\n\n";
  out << "Std dev (level I / level II, train+test): " << format_accuracy(agg.level1_union.stddev)
      << " / "
      << (agg.level2_union.count ? format_accuracy(agg.level2_union.stddev) : std::string("n/a"))
      << "\n";
  return out.str();
}

int run_eval_trials(const RunConfig& config, const std::string& out_dir) {
  const CorpusSource& corpus = *config.corpus;
  Rng corpus_rng = Rng(config.seed).stream(0);
  Dataset full = corpus.synthetic ? generate_synthetic(*corpus.synthetic, corpus_rng)
                                  : load_vectors(*corpus.csv_path, corpus.csv_width);
  auto [train, test] = split(full, corpus.train_fraction, corpus_rng);

  AggregateReport agg = run_trials_on(config.trials, train, test, *config.hierarchy, config.seed);
  for (const TrialReport& r : agg.trials) {
    std::cerr << "trial " << r.trial_index << ": ";
    if (r.failed)
      std::cerr << "failed: " << r.failure;
    else
      std::cerr << "level1_union=" << format_accuracy(r.level1_union) << " level2_union="
                << (r.level2_union ? format_accuracy(*r.level2_union) : std::string("n/a"))
                << " (" << format_accuracy(r.wall_seconds) << "s)";
    std::cerr << "\n";
  }

  fs::create_directories(out_dir);
  atomic_write_text((fs::path(out_dir) / "trials.csv").string(), trials_to_csv(agg));
  atomic_write_text((fs::path(out_dir) / "aggregate.json").string(),
                    aggregate_to_json(agg).dump(2) + "\n");
  std::string summary = render_summary(agg, train, test);
  atomic_write_text((fs::path(out_dir) / "summary.txt").string(), summary);
  write_echo(config, "eval-trials", fs::path(out_dir) / "config_echo.json");
  std::cout << summary;
  return 0;
}

}  // namespace tandem
