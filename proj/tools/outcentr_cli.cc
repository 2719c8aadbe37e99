/*
 * Copyright 2026 The OutCenTR Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command line driver.
//
//   outcentr run --config <file> [--seed N] [--t-fraction F] [--transductive]
//                [--label-budget F] [--save-model]
//   outcentr synth --spec <file> --out <dir> [--seed N]
//   outcentr rank --data <csv> --label <col> --out <csv> [...]
//   outcentr rank-diff <a.csv> <b.csv> [--out <csv>]
//   outcentr detect --data <csv> --detector iforest|lof --out <csv> [...]
//
// Exit status: 0 success, 1 configuration error, 2 runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "outcentr/bench.h"
#include "outcentr/config.h"
#include "outcentr/dataset.h"
#include "outcentr/detectors.h"
#include "outcentr/reducer.h"
#include "outcentr/synthgen.h"

namespace {

using namespace outcentr;

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_fraction;
  bool transductive = false;
  std::optional<double> label_budget;
  bool save_model = false;
};

int cmd_run(const RunArgs& args) {
  RunConfig cfg = load_run_config(args.config);
  if (args.seed) cfg.seeds = {*args.seed};
  if (args.t_fraction) cfg.t_fraction = *args.t_fraction;
  if (args.transductive) cfg.transductive = true;
  if (args.label_budget) cfg.label_budget = *args.label_budget;
  if (args.save_model) cfg.save_models = true;
  cfg.validate();

  const auto report = run_experiment(cfg);
  emit_report(report, cfg.output_dir);
  for (const auto& a : report.aggregates) {
    std::cout << a.dataset << ' ' << reducer_name(a.reducer) << ' '
              << detector_name(a.detector) << " k=" << a.k_used
              << " f1=" << a.f1 << " auc=" << a.auc << '\n';
  }
  std::cout << "wrote " << (cfg.output_dir / "results.csv").string() << '\n';
  return 0;
}

struct SynthArgs {
  std::string spec;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_synth(const SynthArgs& args) {
  const auto file = parse_config_file(args.spec);
  const ConfigSection* section = file.find("synth");
  if (!section) throw ConfigError("spec file needs a [synth] section");
  section->check_keys({"name", "n", "m", "contamination", "n_informative",
                       "separation", "seed"});
  SynthSpec spec = parse_synth_spec(*section);
  if (args.seed) spec.seed = *args.seed;
  const std::string name = section->get_string("name", "synth");
  const auto synth = generate(spec);
  write_synth(synth, args.out, name);
  std::cout << "wrote " << (std::filesystem::path(args.out) / (name + ".csv")).string()
            << " (n=" << synth.data.n() << ", m=" << synth.data.m()
            << ", outliers=" << synth.data.outlier_count() << ")\n";
  return 0;
}

struct RankArgs {
  std::string data;
  std::string label = "target";
  std::string out;
  std::string positive = "1";
  std::string negative = "0";
  double t_fraction = 0.10;
  double label_budget = 1.0;
  std::uint64_t seed = 0;
  std::string scores_out;
  std::string deviation = "signed";
};

int cmd_rank(const RankArgs& args) {
  const auto mode = parse_deviation_mode(args.deviation);
  const Dataset raw =
      load_csv(args.data, {args.label, args.positive, args.negative});
  const Dataset data = normalize_minmax(raw);
  const auto rank = fit_reducer(data, {.label_ratio = args.label_budget,
                                       .t_fraction = args.t_fraction,
                                       .seed = args.seed});
  write_rank_csv(rank, std::filesystem::path(args.out));
  if (!args.scores_out.empty()) {
    const auto parts = partition_labels(data);
    const auto c_in = compute_centroid(data, parts.inlier_rows, ClassTag::kInlier);
    write_attribute_scores_csv(
        attribute_scores(data, parts.outlier_rows, c_in, mode), args.scores_out);
  }
  std::cout << "selected " << rank.t() << " of " << rank.size()
            << " attributes:";
  for (const auto& name : rank.selected_names()) std::cout << ' ' << name;
  std::cout << '\n';
  return 0;
}

struct DiffArgs {
  std::string a;
  std::string b;
  std::string out;
};

int cmd_rank_diff(const DiffArgs& args) {
  const auto diff = rank_diff(read_rank_csv(std::filesystem::path(args.a)),
                              read_rank_csv(std::filesystem::path(args.b)));
  if (args.out.empty()) {
    write_rank_diff_csv(diff, std::cout);
  } else {
    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot write file: " + args.out);
    write_rank_diff_csv(diff, out);
  }
  return 0;
}

struct DetectArgs {
  std::string data;
  std::string label;
  std::string detector = "iforest";
  std::string out;
  double contamination = 0.1;
  std::size_t n_trees = 100;
  std::size_t k_neighbors = 20;
  std::string metric = "euclidean";
  std::uint64_t seed = 0;
};

int cmd_detect(const DetectArgs& args) {
  CsvOptions options;
  if (!args.label.empty()) options.label_column = args.label;
  const Dataset data = normalize_minmax(load_csv(args.data, options));
  DetectorConfig cfg;
  cfg.kind = parse_detector_kind(args.detector);
  cfg.contamination = args.contamination;
  cfg.n_trees = args.n_trees;
  cfg.k_neighbors = args.k_neighbors;
  cfg.metric = parse_metric(args.metric);
  cfg.seed = args.seed;
  cfg.validate();
  const DetectionResult result =
      cfg.kind == DetectorKind::kIForest
          ? IsolationForest::fit(data, cfg).score(data, ThresholdMode::kTransductive)
          : lof_fit_predict(data, cfg);
  write_detection_csv(result, args.out);
  std::cout << "flagged " << result.flagged() << " of " << data.n()
            << " records\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outlier-centric feature reduction and detector benchmarks"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment matrix");
  run_cmd->add_option("--config", run.config, "Experiment config file")->required();
  run_cmd->add_option("--seed", run.seed, "Run a single seed");
  run_cmd->add_option("--t-fraction", run.t_fraction, "Fraction of attributes kept");
  run_cmd->add_flag("--transductive", run.transductive,
                    "Threshold on the scored set instead of the training set");
  run_cmd->add_option("--label-budget", run.label_budget,
                      "Fraction of labeled rows used by the reducer");
  run_cmd->add_flag("--save-model", run.save_model, "Save PCA/GRP models");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--spec", synth.spec, "Synth spec file")->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "Override the spec seed");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Export the attribute rank of a dataset");
  rank_cmd->add_option("--data", rank.data, "Labeled CSV")->required();
  rank_cmd->add_option("--label", rank.label, "Label column")->capture_default_str();
  rank_cmd->add_option("--out", rank.out, "Rank CSV to write")->required();
  rank_cmd->add_option("--positive", rank.positive, "Outlier label token");
  rank_cmd->add_option("--negative", rank.negative, "Inlier label token");
  rank_cmd->add_option("--t-fraction", rank.t_fraction, "Fraction of attributes kept");
  rank_cmd->add_option("--label-budget", rank.label_budget,
                       "Fraction of labeled rows per class used");
  rank_cmd->add_option("--seed", rank.seed, "Seed for label subsampling");
  rank_cmd->add_option("--scores-out", rank.scores_out,
                       "Also write per-attribute deviation scores");
  rank_cmd->add_option("--deviation", rank.deviation, "signed or absolute");

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("rank-diff", "Compare two rank exports");
  diff_cmd->add_option("a", diff.a, "First rank CSV")->required();
  diff_cmd->add_option("b", diff.b, "Second rank CSV")->required();
  diff_cmd->add_option("--out", diff.out, "Write to a file instead of stdout");

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Score one dataset with a detector");
  detect_cmd->add_option("--data", detect.data, "CSV input")->required();
  detect_cmd->add_option("--label", detect.label, "Label column to drop");
  detect_cmd->add_option("--detector", detect.detector, "iforest or lof");
  detect_cmd->add_option("--out", detect.out, "Detection CSV to write")->required();
  detect_cmd->add_option("--contamination", detect.contamination, "Outlier fraction");
  detect_cmd->add_option("--n-trees", detect.n_trees, "Isolation trees");
  detect_cmd->add_option("--k-neighbors", detect.k_neighbors, "LOF neighbors");
  detect_cmd->add_option("--metric", detect.metric, "euclidean or manhattan");
  detect_cmd->add_option("--seed", detect.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*synth_cmd) return cmd_synth(synth);
    if (*rank_cmd) return cmd_rank(rank);
    if (*diff_cmd) return cmd_rank_diff(diff);
    if (*detect_cmd) return cmd_detect(detect);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kConfigError;
}
