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

// Experiment driver: runs the reducer x detector matrix over datasets and
// seeds, times the detector phases and writes reports.
//
// Per (dataset, seed) the pipeline is: load, stratified split, min-max
// scaling fitted on train and applied to test, then for every reducer a fit
// on train with k = t, and for every detector a fit on the reduced train
// and scoring of the reduced test. Every reducer in a cell sees the same
// split and the same k.

#ifndef OUTCENTR_BENCH_H_
#define OUTCENTR_BENCH_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "outcentr/config.h"
#include "outcentr/dataset.h"
#include "outcentr/detectors.h"
#include "outcentr/metrics.h"
#include "outcentr/reducer.h"
#include "outcentr/synthgen.h"

namespace outcentr {

enum class ReducerKind { kNone, kOutcentr, kPca, kGrp };

ReducerKind parse_reducer_kind(std::string_view name);
std::string_view reducer_name(ReducerKind kind);

inline DetectorConfig detector_defaults(DetectorKind kind) {
  DetectorConfig cfg;
  cfg.kind = kind;
  return cfg;
}

struct DatasetSource {
  std::string name;
  // Exactly one of csv_path / synth is set.
  std::optional<std::filesystem::path> csv_path;
  CsvOptions csv_options;
  std::optional<SynthSpec> synth;
  // Regenerate the synthetic data with each run seed.
  bool synth_seed_per_run = false;
};

struct RunConfig {
  std::vector<DatasetSource> datasets;
  double t_fraction = 0.10;
  std::vector<ReducerKind> reducers;
  std::vector<DetectorKind> detectors;
  // Detector parameter overrides; contamination and seed are set per cell.
  DetectorConfig iforest = detector_defaults(DetectorKind::kIForest);
  DetectorConfig lof = detector_defaults(DetectorKind::kLof);
  // Defaults to the outlier ratio of the training split.
  std::optional<double> contamination;
  double split_fraction = 0.8;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir = "results";
  bool transductive = false;
  double label_budget = 1.0;
  DeviationMode deviation = DeviationMode::kSigned;
  // Saves fitted PCA/GRP models under <output_dir>/models.
  bool save_models = false;

  // Throws ConfigError.
  void validate() const;
};

// Section names and keys are documented in the README. Relative paths are
// resolved against `base_dir`.
RunConfig parse_run_config(const ConfigFile& file,
                           const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

// Reads a [synth] section: n, m, contamination, n_informative, separation,
// seed.
SynthSpec parse_synth_spec(const ConfigSection& section);

// An error raised inside one cell of the matrix, tagged with that cell.
class CellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResultRow {
  std::string dataset;
  ReducerKind reducer = ReducerKind::kNone;
  DetectorKind detector = DetectorKind::kIForest;
  std::uint64_t seed = 0;
  std::size_t k_used = 0;
  MetricSet metrics;
  double reduce_seconds = 0.0;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
};

// Medians over seeds for one (dataset, reducer, detector).
struct AggregateRow {
  std::string dataset;
  ReducerKind reducer = ReducerKind::kNone;
  DetectorKind detector = DetectorKind::kIForest;
  std::size_t k_used = 0;
  std::size_t runs = 0;
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double auc = 0.0;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
};

struct DatasetInfo {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t outliers = 0;
};

struct RankRecord {
  std::string dataset;
  std::uint64_t seed = 0;
  AttributeRank rank;
  AttributeScoreReport scores;
};

struct ExperimentReport {
  std::vector<DatasetInfo> datasets;
  std::vector<ResultRow> rows;
  std::vector<AggregateRow> aggregates;
  std::vector<RankRecord> ranks;
};

ExperimentReport run_experiment(const RunConfig& cfg);

double median(std::vector<double> values);
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

// Monotonic wall-clock seconds taken by `action`.
template <typename Action>
double time_phase(Action&& action) {
  const auto start = std::chrono::steady_clock::now();
  std::forward<Action>(action)();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

enum class RankChange {
  kUnchanged,
  kMoved,
  kNewlySelected,
  kDeselected,
  kOnlyInA,
  kOnlyInB,
};

std::string_view rank_change_name(RankChange change);

struct RankDiffEntry {
  std::string attribute;
  // 1-based ranks; nullopt when the attribute is absent from that export.
  std::optional<std::size_t> rank_a;
  std::optional<std::size_t> rank_b;
  std::optional<double> score_a;
  std::optional<double> score_b;
  bool selected_a = false;
  bool selected_b = false;
  RankChange change = RankChange::kUnchanged;

  // rank_b - rank_a when both are present.
  std::optional<long long> rank_delta() const;
};

struct RankDiff {
  AttributeRank a;
  AttributeRank b;
  // Sorted by |rank_delta| descending (then name); attributes absent from
  // one side come last.
  std::vector<RankDiffEntry> entries;
};

RankDiff rank_diff(const AttributeRank& a, const AttributeRank& b);
void write_rank_diff_csv(const RankDiff& diff, std::ostream& out);

// Writes results.csv, timings.csv, summary.md and ranks/*.csv into `dir`.
// Throws on an empty report.
void emit_report(const ExperimentReport& report,
                 const std::filesystem::path& dir);

// Column names of results.csv that carry wall-clock timings.
inline constexpr std::string_view kTimingColumns[] = {"fit_seconds",
                                                      "predict_seconds"};

}  // namespace outcentr

#endif  // OUTCENTR_BENCH_H_
