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

#include "outcentr/bench.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "outcentr/baselines.h"
#include "outcentr/csv.h"

namespace outcentr {

ReducerKind parse_reducer_kind(std::string_view name) {
  if (name == "none") return ReducerKind::kNone;
  if (name == "outcentr") return ReducerKind::kOutcentr;
  if (name == "pca") return ReducerKind::kPca;
  if (name == "grp") return ReducerKind::kGrp;
  throw std::invalid_argument("unknown reducer: " + std::string(name));
}

std::string_view reducer_name(ReducerKind kind) {
  switch (kind) {
    case ReducerKind::kNone:
      return "none";
    case ReducerKind::kOutcentr:
      return "outcentr";
    case ReducerKind::kPca:
      return "pca";
    case ReducerKind::kGrp:
      return "grp";
  }
  return "none";
}

// --- configuration ----------------------------------------------------------

void RunConfig::validate() const {
  if (datasets.empty()) throw ConfigError("no [dataset.<name>] section");
  if (reducers.empty()) throw ConfigError("at least one reducer is required");
  if (detectors.empty()) throw ConfigError("at least one detector is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (!(t_fraction > 0.0 && t_fraction <= 1.0)) {
    throw ConfigError("t_fraction must lie in (0, 1]");
  }
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ConfigError("split must lie in (0, 1)");
  }
  if (!(label_budget > 0.0 && label_budget <= 1.0)) {
    throw ConfigError("label_budget must lie in (0, 1]");
  }
  if (contamination && !(*contamination > 0.0 && *contamination <= 0.5)) {
    throw ConfigError("contamination must lie in (0, 0.5]");
  }
  for (const auto* d : {&iforest, &lof}) {
    try {
      d->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  std::vector<std::string> names;
  for (const auto& ds : datasets) {
    if (ds.csv_path.has_value() == ds.synth.has_value()) {
      throw ConfigError("dataset '" + ds.name +
                        "' needs exactly one of a csv path or a synth spec");
    }
    if (std::find(names.begin(), names.end(), ds.name) != names.end()) {
      throw ConfigError("duplicate dataset name: " + ds.name);
    }
    names.push_back(ds.name);
  }
}

namespace {

template <typename Fn>
auto as_config_error(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::uint64_t> parse_seeds(std::string_view value) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_list(value)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_config_uint("seeds", item));
      continue;
    }
    const auto lo = parse_config_uint("seeds", item.substr(0, dots));
    const auto hi = parse_config_uint("seeds", item.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty seed range: " + item);
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

SynthSpec parse_synth_spec(const ConfigSection& s) {
  SynthSpec spec;
  spec.n = s.get_uint("n", spec.n);
  spec.m = s.get_uint("m", spec.m);
  spec.contamination = s.get_double("contamination", spec.contamination);
  spec.n_informative = s.get_uint("n_informative", spec.n_informative);
  spec.separation = s.get_double("separation", spec.separation);
  if (auto seed = s.get("seed"); seed && *seed != "run") {
    spec.seed = parse_config_uint("seed", *seed);
  }
  as_config_error([&] {
    spec.validate();
    return 0;
  });
  return spec;
}

RunConfig parse_run_config(const ConfigFile& file,
                           const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.reducers = {ReducerKind::kNone, ReducerKind::kOutcentr, ReducerKind::kPca,
                  ReducerKind::kGrp};
  cfg.detectors = {DetectorKind::kIForest, DetectorKind::kLof};
  cfg.seeds = {0};

  for (const auto& section : file.sections) {
    const auto& name = section.name();
    if (name == "run") {
      section.check_keys({"reducers", "detectors", "t_fraction", "split",
                          "seeds", "output", "transductive", "label_budget",
                          "contamination", "deviation", "threads",
                          "save_models"});
      cfg.reducers.clear();
      for (const auto& r : section.get_list("reducers", {"none", "outcentr", "pca", "grp"})) {
        cfg.reducers.push_back(as_config_error([&] { return parse_reducer_kind(r); }));
      }
      cfg.detectors.clear();
      for (const auto& d : section.get_list("detectors", {"iforest", "lof"})) {
        cfg.detectors.push_back(as_config_error([&] { return parse_detector_kind(d); }));
      }
      cfg.t_fraction = section.get_double("t_fraction", cfg.t_fraction);
      cfg.split_fraction = section.get_double("split", cfg.split_fraction);
      if (auto seeds = section.get("seeds")) cfg.seeds = parse_seeds(*seeds);
      cfg.output_dir = resolve(base_dir, section.get_string("output", "results"));
      cfg.transductive = section.get_bool("transductive", cfg.transductive);
      cfg.label_budget = section.get_double("label_budget", cfg.label_budget);
      if (auto c = section.get("contamination"); c && *c != "auto") {
        cfg.contamination = parse_config_double("contamination", *c);
      }
      cfg.deviation = as_config_error([&] {
        return parse_deviation_mode(section.get_string("deviation", "signed"));
      });
      const auto threads = section.get_uint("threads", 1);
      cfg.iforest.threads = cfg.lof.threads = threads;
      cfg.save_models = section.get_bool("save_models", cfg.save_models);
    } else if (name == "iforest") {
      section.check_keys({"n_trees", "max_samples"});
      cfg.iforest.n_trees = section.get_uint("n_trees", cfg.iforest.n_trees);
      if (auto ms = section.get("max_samples"); ms && *ms != "auto") {
        cfg.iforest.max_samples = parse_config_uint("max_samples", *ms);
      }
    } else if (name == "lof") {
      section.check_keys({"k_neighbors", "metric"});
      cfg.lof.k_neighbors = section.get_uint("k_neighbors", cfg.lof.k_neighbors);
      cfg.lof.metric = as_config_error(
          [&] { return parse_metric(section.get_string("metric", "euclidean")); });
    } else if (name.starts_with("dataset.") && name.size() > 8) {
      DatasetSource ds;
      ds.name = name.substr(8);
      const auto source = section.get_string("source", "csv");
      if (source == "csv") {
        section.check_keys({"source", "path", "label", "positive", "negative"});
        const auto path = section.get("path");
        if (!path) throw ConfigError("dataset '" + ds.name + "' needs a path");
        ds.csv_path = resolve(base_dir, *path);
        ds.csv_options.label_column = section.get_string("label", "target");
        ds.csv_options.positive_token = section.get_string("positive", "1");
        ds.csv_options.negative_token = section.get_string("negative", "0");
      } else if (source == "synth") {
        section.check_keys({"source", "n", "m", "contamination",
                            "n_informative", "separation", "seed"});
        ds.synth = parse_synth_spec(section);
        ds.synth_seed_per_run = section.get("seed") == std::optional<std::string>("run");
      } else {
        throw ConfigError("dataset '" + ds.name + "': unknown source '" +
                          source + "'");
      }
      cfg.datasets.push_back(std::move(ds));
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto file = parse_config_file(path);
  return parse_run_config(file, path.parent_path());
}

// --- experiment -------------------------------------------------------------

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  std::vector<AggregateRow> out;
  std::vector<std::vector<const ResultRow*>> groups;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AggregateRow& a) {
      return a.dataset == row.dataset && a.reducer == row.reducer &&
             a.detector == row.detector;
    });
    if (it == out.end()) {
      out.push_back({row.dataset, row.reducer, row.detector, row.k_used});
      groups.emplace_back();
      it = out.end() - 1;
    }
    groups[static_cast<std::size_t>(it - out.begin())].push_back(&row);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    auto collect = [&](auto field) {
      std::vector<double> v;
      for (const auto* r : groups[g]) v.push_back(field(*r));
      return median(std::move(v));
    };
    out[g].runs = groups[g].size();
    out[g].f1 = collect([](const ResultRow& r) { return r.metrics.f1; });
    out[g].precision = collect([](const ResultRow& r) { return r.metrics.precision; });
    out[g].recall = collect([](const ResultRow& r) { return r.metrics.recall; });
    out[g].auc = collect([](const ResultRow& r) { return r.metrics.auc.value_or(0.0); });
    out[g].fit_seconds = collect([](const ResultRow& r) { return r.fit_seconds; });
    out[g].predict_seconds =
        collect([](const ResultRow& r) { return r.predict_seconds; });
  }
  return out;
}

namespace {

std::string cell_name(std::string_view dataset, std::string_view reducer,
                      std::string_view detector, std::uint64_t seed) {
  return "[dataset=" + std::string(dataset) + " reducer=" + std::string(reducer) +
         " detector=" + std::string(detector) + " seed=" + std::to_string(seed) +
         "] ";
}

template <typename Fn>
auto in_cell(const std::string& cell, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const CellError&) {
    throw;
  } catch (const std::exception& e) {
    throw CellError(cell + e.what());
  }
}

Dataset load_source(const DatasetSource& ds, std::uint64_t run_seed) {
  if (ds.csv_path) return load_csv(*ds.csv_path, ds.csv_options);
  SynthSpec spec = *ds.synth;
  if (ds.synth_seed_per_run) spec.seed = run_seed;
  return generate(spec).data;
}

struct Reduced {
  Dataset train;
  Dataset test;
  std::size_t k = 0;
};

struct DetectorRun {
  DetectionResult result;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
};

DetectorRun run_detector(const DetectorConfig& cfg, const Dataset& train,
                         const Dataset& test, bool transductive) {
  DetectorRun run;
  if (cfg.kind == DetectorKind::kIForest) {
    std::optional<IsolationForest> forest;
    run.fit_seconds =
        time_phase([&] { forest.emplace(IsolationForest::fit(train, cfg)); });
    const auto mode = transductive ? ThresholdMode::kTransductive
                                   : ThresholdMode::kInductive;
    run.predict_seconds =
        time_phase([&] { run.result = forest->score(test, mode); });
    return run;
  }
  // Transductive LOF fits on the scored set itself.
  std::optional<LocalOutlierFactor> lof;
  const Dataset& fit_on = transductive ? test : train;
  run.fit_seconds =
      time_phase([&] { lof.emplace(LocalOutlierFactor::fit(fit_on, cfg)); });
  run.predict_seconds = time_phase([&] {
    run.result = transductive ? lof->training_result() : lof->score(test);
  });
  return run;
}

}  // namespace

ExperimentReport run_experiment(const RunConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  for (const auto& ds : cfg.datasets) {
    std::optional<Dataset> shared;
    if (!ds.synth_seed_per_run) {
      shared = in_cell(cell_name(ds.name, "-", "-", 0),
                       [&] { return load_source(ds, 0); });
    }
    bool info_recorded = false;
    for (const std::uint64_t seed : cfg.seeds) {
      const std::string seed_cell = cell_name(ds.name, "-", "-", seed);
      const Dataset raw =
          shared ? *shared : in_cell(seed_cell, [&] { return load_source(ds, seed); });
      if (!info_recorded) {
        report.datasets.push_back({ds.name, raw.n(), raw.m(),
                                   in_cell(seed_cell, [&] { return raw.outlier_count(); })});
        info_recorded = true;
      }
      const auto [train, test] = in_cell(seed_cell, [&] {
        auto parts = split(raw, cfg.split_fraction, seed);
        Dataset scaled_train = normalize_minmax(parts.train);
        Dataset scaled_test =
            apply_normalization(parts.test, *scaled_train.normalization());
        return std::pair{std::move(scaled_train), std::move(scaled_test)};
      });
      const std::size_t t = cutoff_for(cfg.t_fraction, train.m());
      const double contamination =
          cfg.contamination.value_or(std::min(
              0.5, static_cast<double>(train.outlier_count()) /
                       static_cast<double>(train.n())));

      for (const ReducerKind reducer : cfg.reducers) {
        const std::string rcell =
            cell_name(ds.name, reducer_name(reducer), "-", seed);
        Reduced reduced;
        const double reduce_seconds = in_cell(rcell, [&] {
          return time_phase([&] {
            switch (reducer) {
              case ReducerKind::kNone:
                reduced = {train, test, train.m()};
                break;
              case ReducerKind::kOutcentr: {
                auto rank = fit_reducer(train, {.label_ratio = cfg.label_budget,
                                                .t = t,
                                                .seed = seed});
                reduced = {transform(train, rank), transform(test, rank), t};
                const auto parts = partition_labels(train);
                const auto c_in =
                    compute_centroid(train, parts.inlier_rows, ClassTag::kInlier);
                report.ranks.push_back(
                    {ds.name, seed, rank,
                     attribute_scores(train, parts.outlier_rows, c_in,
                                      cfg.deviation)});
                break;
              }
              case ReducerKind::kPca: {
                const auto model = pca_fit(train, t);
                reduced = {pca_transform(model, train), pca_transform(model, test), t};
                if (cfg.save_models) {
                  std::filesystem::create_directories(cfg.output_dir / "models");
                  save_model(model, cfg.output_dir / "models" /
                                        (ds.name + "_seed" + std::to_string(seed) +
                                         "_pca.txt"));
                }
                break;
              }
              case ReducerKind::kGrp: {
                const auto model = grp_fit(t, train.m(), seed);
                reduced = {grp_apply(model, train), grp_apply(model, test), t};
                if (cfg.save_models) {
                  std::filesystem::create_directories(cfg.output_dir / "models");
                  save_model(model, cfg.output_dir / "models" /
                                        (ds.name + "_seed" + std::to_string(seed) +
                                         "_grp.txt"));
                }
                break;
              }
            }
          });
        });

        for (const DetectorKind detector : cfg.detectors) {
          const std::string cell = cell_name(ds.name, reducer_name(reducer),
                                             detector_name(detector), seed);
          in_cell(cell, [&] {
            DetectorConfig dcfg =
                detector == DetectorKind::kIForest ? cfg.iforest : cfg.lof;
            dcfg.kind = detector;
            dcfg.contamination = contamination;
            dcfg.seed = seed;
            const auto run =
                run_detector(dcfg, reduced.train, reduced.test, cfg.transductive);
            ResultRow row;
            row.dataset = ds.name;
            row.reducer = reducer;
            row.detector = detector;
            row.seed = seed;
            row.k_used = reduced.k;
            row.metrics = evaluate(run.result.scores, run.result.flags,
                                   reduced.test.labels());
            row.reduce_seconds = reduce_seconds;
            row.fit_seconds = run.fit_seconds;
            row.predict_seconds = run.predict_seconds;
            report.rows.push_back(std::move(row));
            return 0;
          });
        }
      }
    }
  }
  report.aggregates = aggregate(report.rows);
  return report;
}

// --- rank diff --------------------------------------------------------------

std::string_view rank_change_name(RankChange change) {
  switch (change) {
    case RankChange::kUnchanged:
      return "unchanged";
    case RankChange::kMoved:
      return "moved";
    case RankChange::kNewlySelected:
      return "newly_selected";
    case RankChange::kDeselected:
      return "deselected";
    case RankChange::kOnlyInA:
      return "only_in_a";
    case RankChange::kOnlyInB:
      return "only_in_b";
  }
  return "unchanged";
}

std::optional<long long> RankDiffEntry::rank_delta() const {
  if (!rank_a || !rank_b) return std::nullopt;
  return static_cast<long long>(*rank_b) - static_cast<long long>(*rank_a);
}

RankDiff rank_diff(const AttributeRank& a, const AttributeRank& b) {
  RankDiff diff{a, b, {}};
  std::map<std::string, RankDiffEntry> joined;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto& e = joined[a.entries()[i].attribute];
    e.attribute = a.entries()[i].attribute;
    e.rank_a = i + 1;
    e.score_a = a.entries()[i].score;
    e.selected_a = i < a.t();
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto& e = joined[b.entries()[i].attribute];
    e.attribute = b.entries()[i].attribute;
    e.rank_b = i + 1;
    e.score_b = b.entries()[i].score;
    e.selected_b = i < b.t();
  }
  for (auto& [name, e] : joined) {
    if (e.selected_b && !e.selected_a) {
      e.change = RankChange::kNewlySelected;
    } else if (e.selected_a && !e.selected_b) {
      e.change = RankChange::kDeselected;
    } else if (!e.rank_b) {
      e.change = RankChange::kOnlyInA;
    } else if (!e.rank_a) {
      e.change = RankChange::kOnlyInB;
    } else {
      e.change = *e.rank_a == *e.rank_b ? RankChange::kUnchanged : RankChange::kMoved;
    }
    diff.entries.push_back(std::move(e));
  }
  std::stable_sort(diff.entries.begin(), diff.entries.end(),
                   [](const RankDiffEntry& x, const RankDiffEntry& y) {
                     const auto dx = x.rank_delta();
                     const auto dy = y.rank_delta();
                     if (dx.has_value() != dy.has_value()) return dx.has_value();
                     if (!dx) return false;
                     return std::llabs(*dx) > std::llabs(*dy);
                   });
  return diff;
}

void write_rank_diff_csv(const RankDiff& diff, std::ostream& out) {
  csv::write_row(out, {"attribute", "rank_a", "rank_b", "score_a", "score_b",
                       "rank_delta", "selected_a", "selected_b", "change"});
  auto opt = [](const auto& v, auto fmt) {
    return v ? fmt(*v) : std::string("NA");
  };
  for (const auto& e : diff.entries) {
    const auto to_s = [](auto v) { return std::to_string(v); };
    const auto num = [](double v) { return csv::format_double(v); };
    const auto delta = e.rank_delta();
    csv::write_row(out, {e.attribute, opt(e.rank_a, to_s), opt(e.rank_b, to_s),
                         opt(e.score_a, num), opt(e.score_b, num),
                         delta ? (*delta > 0 ? "+" : "") + std::to_string(*delta)
                               : std::string("NA"),
                         e.selected_a ? "1" : "0", e.selected_b ? "1" : "0",
                         std::string(rank_change_name(e.change))});
  }
}

// --- reports ----------------------------------------------------------------

namespace {

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
  return buf;
}

std::string seconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

}  // namespace

void emit_report(const ExperimentReport& report,
                 const std::filesystem::path& dir) {
  if (report.rows.empty()) throw std::runtime_error("refusing to write an empty report");
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "results.csv");
    csv::write_row(out, {"dataset", "reducer", "detector", "seed", "k_used", "f1",
                         "precision", "recall", "auc", "support_outliers",
                         "fit_seconds", "predict_seconds"});
    for (const auto& r : report.rows) {
      csv::write_row(
          out, {r.dataset, std::string(reducer_name(r.reducer)),
                std::string(detector_name(r.detector)), std::to_string(r.seed),
                std::to_string(r.k_used), csv::format_double(r.metrics.f1),
                csv::format_double(r.metrics.precision),
                csv::format_double(r.metrics.recall),
                csv::format_double(r.metrics.auc.value_or(0.0)),
                std::to_string(r.metrics.support_outliers),
                seconds(r.fit_seconds), seconds(r.predict_seconds)});
    }
    if (!out) throw std::runtime_error("write failed: results.csv");
  }
  {
    auto out = open_out(dir / "timings.csv");
    csv::write_row(out, {"dataset", "reducer", "detector", "seed", "k_used",
                         "reduce_seconds", "fit_seconds", "predict_seconds"});
    for (const auto& r : report.rows) {
      csv::write_row(out, {r.dataset, std::string(reducer_name(r.reducer)),
                           std::string(detector_name(r.detector)),
                           std::to_string(r.seed), std::to_string(r.k_used),
                           seconds(r.reduce_seconds), seconds(r.fit_seconds),
                           seconds(r.predict_seconds)});
    }
  }
  {
    auto out = open_out(dir / "summary.md");
    out << "# Experiment summary\n\nMedians over seeds. Metrics in percent.\n";
    for (const auto& info : report.datasets) {
      out << "\n## " << info.name << "\n\n"
          << "n=" << info.n << ", m=" << info.m << ", outliers=" << info.outliers
          << "\n\n"
          << "| Detector | Reducer | k | F1 | Recall | Precision | AUC | Fit (s) "
             "| Predict (s) | Runs |\n"
          << "|---|---|---|---|---|---|---|---|---|---|\n";
      // Grouped by reducer, in configuration order.
      std::vector<ReducerKind> reducers;
      for (const auto& a : report.aggregates) {
        if (a.dataset == info.name &&
            std::find(reducers.begin(), reducers.end(), a.reducer) == reducers.end()) {
          reducers.push_back(a.reducer);
        }
      }
      for (const ReducerKind reducer : reducers) {
        for (const auto& a : report.aggregates) {
          if (a.dataset != info.name || a.reducer != reducer) continue;
          out << "| " << detector_name(a.detector) << " | "
              << reducer_name(a.reducer) << " | " << a.k_used << " | "
              << percent(a.f1) << " | " << percent(a.recall) << " | "
              << percent(a.precision) << " | " << percent(a.auc) << " | "
              << seconds(a.fit_seconds) << " | " << seconds(a.predict_seconds)
              << " | " << a.runs << " |\n";
        }
      }
    }
  }
  if (!report.ranks.empty()) {
    std::filesystem::create_directories(dir / "ranks");
    for (const auto& r : report.ranks) {
      const std::string stem = r.dataset + "_seed" + std::to_string(r.seed);
      write_rank_csv(r.rank, dir / "ranks" / (stem + ".csv"));
      write_attribute_scores_csv(r.scores, dir / "ranks" / (stem + ".scores.csv"));
    }
  }
}

}  // namespace outcentr
