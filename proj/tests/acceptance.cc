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

// Acceptance suite. Runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.
//
//   acceptance --cli <path to outcentr> --workdir <scratch dir>
//
// Criterion 10 needs external benchmark CSVs. Put them in a directory, each
// with a binary `target` column (1 = outlier), and point
// OUTCENTR_BENCH_DATA at it; without it the criterion reports SKIP.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "outcentr/baselines.h"
#include "outcentr/bench.h"
#include "outcentr/csv.h"
#include "outcentr/dataset.h"
#include "outcentr/detectors.h"
#include "outcentr/metrics.h"
#include "outcentr/reducer.h"
#include "outcentr/synthgen.h"

namespace {

using namespace outcentr;
namespace fs = std::filesystem;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kFail;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Verdict::kPass : Verdict::kFail, std::move(detail)};
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<std::string> names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= m; ++j) out.push_back("a" + std::to_string(j));
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return std::generate_canonical<double, 53>(rng);
}

// --- 1: metrics ------------------------------------------------------------

Outcome metrics_oracle() {
  std::mt19937_64 rng(1);
  double worst_auc = 0.0;
  std::size_t prf_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<int> labels(n), flags(n);
    std::vector<double> scores(n);
    labels[0] = 1;
    labels[1] = 0;
    const bool coarse = trial % 3 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= 2) labels[i] = uniform01(rng) < 0.3;
      scores[i] = coarse ? std::floor(uniform01(rng) * 5) : uniform01(rng);
      flags[i] = uniform01(rng) < 0.4;
    }
    std::shuffle(labels.begin(), labels.end(), rng);

    worst_auc = std::max(worst_auc, std::abs(roc_auc(scores, labels) -
                                             oracle::pairwise_auc(scores, labels)));

    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      tp += flags[i] && labels[i];
      fp += flags[i] && !labels[i];
      fn += !flags[i] && labels[i];
    }
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    const auto got = prf1(confusion(flags, labels));
    if (std::abs(got.precision - p) > 1e-12 || std::abs(got.recall - r) > 1e-12 ||
        std::abs(got.f1 - f) > 1e-12) {
      ++prf_mismatch;
    }
  }
  return pass_if(worst_auc <= 1e-12 && prf_mismatch == 0,
                 "max |auc - oracle| = " + fmt(worst_auc) +
                     ", prf1 mismatches = " + std::to_string(prf_mismatch));
}

// --- 2: LOF ----------------------------------------------------------------

Outcome lof_oracle() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const std::size_t ks[] = {3, 5, 10};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = ks[trial % 3];
    const std::size_t n = k + 1 + rng() % (50 - k);
    const std::size_t m = 1 + rng() % 6;
    std::vector<std::vector<double>> pts(n, std::vector<double>(m));
    for (auto& p : pts)
      for (double& v : p) v = trial % 4 == 0 ? std::round(2 * g(rng)) : g(rng);
    DetectorConfig cfg;
    cfg.kind = DetectorKind::kLof;
    cfg.k_neighbors = k;
    const auto got =
        lof_fit_predict(Dataset(Matrix::from_rows(pts), names(m)), cfg).scores;
    const auto want = oracle::brute_force_lof(pts, k);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(got[i] - want[i]) /
                                  std::max(1.0, std::abs(want[i])));
    }
  }
  return pass_if(worst <= 1e-9, "max |lof - oracle| = " + fmt(worst));
}

// --- 3: reducer formula suite ----------------------------------------------

Dataset random_labeled(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::normal_distribution<double> g;
  Matrix x(n, m);
  std::vector<int> labels(n, 0);
  const std::size_t outliers = 1 + rng() % (n / 3);
  for (std::size_t i = 0; i < outliers; ++i) labels[i] = 1;
  std::shuffle(labels.begin(), labels.end(), rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      x(i, j) = g(rng) * (1 + j % 3) + (labels[i] ? 0.5 * (j % 4) : 0.0);
  return Dataset(std::move(x), names(m), labels);
}

std::vector<std::size_t> iota_rows(std::size_t n) {
  std::vector<std::size_t> r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Orders agree except where neighbors are within `eps` of each other.
bool same_order(const AttributeRank& a, const AttributeRank& b, double eps) {
  if (a.size() != b.size()) return false;
  std::map<std::string, double> score_b;
  for (const auto& e : b.entries()) score_b[e.attribute] = e.score;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& ea = a.entries()[i];
    const auto& eb = b.entries()[i];
    if (std::abs(score_b[ea.attribute] - ea.score) > eps) return false;
    if (ea.attribute != eb.attribute && std::abs(ea.score - eb.score) > eps) {
      return false;
    }
  }
  return true;
}

Outcome reducer_suite() {
  std::mt19937_64 rng(3);
  std::map<std::string, std::size_t> failures;
  const std::size_t datasets = 250;
  for (std::size_t trial = 0; trial < datasets; ++trial) {
    const std::size_t n = 6 + rng() % 200;
    const std::size_t m = 1 + rng() % 40;
    const Dataset raw = random_labeled(rng, n, m);
    const Dataset d = normalize_minmax(raw);
    const auto parts = partition_labels(d);
    const auto c_out = compute_centroid(d, parts.outlier_rows, ClassTag::kOutlier);
    const auto c_in = compute_centroid(d, parts.inlier_rows, ClassTag::kInlier);
    const auto c_all = compute_centroid(d, iota_rows(n), ClassTag::kAll);
    const auto scores = distinguishability_scores(c_out, c_in);
    const double no = static_cast<double>(parts.outlier_rows.size());
    const double ni = static_cast<double>(parts.inlier_rows.size());

    for (std::size_t j = 0; j < m; ++j) {
      const double recombined = (no * c_out.values[j] + ni * c_in.values[j]) / (no + ni);
      if (std::abs(recombined - c_all.values[j]) > 1e-9) ++failures["recombination"];
      if (!(scores[j] >= 0.0 && scores[j] <= 1.0)) ++failures["score range"];
    }

    // Monotone selection: a smaller cutoff selects a prefix of a larger one.
    const auto rank = attribute_rank(scores, d.attribute_names(), m);
    for (std::size_t t1 = 1; t1 <= m; ++t1) {
      const auto small = rank.with_cutoff(t1).selected_names();
      const auto big = rank.with_cutoff(std::min(m, t1 + 1 + rng() % 3)).selected_names();
      if (!std::equal(small.begin(), small.end(), big.begin())) ++failures["monotonicity"];
    }
    for (std::size_t i = 1; i < m; ++i) {
      const auto& prev = rank.entries()[i - 1];
      const auto& cur = rank.entries()[i];
      if (prev.score < cur.score ||
          (prev.score == cur.score && prev.column > cur.column)) {
        ++failures["tie-break"];
      }
    }

    // Tie-break determinism: duplicated columns rank by ascending index.
    {
      std::vector<std::size_t> cols(m);
      std::iota(cols.begin(), cols.end(), 0);
      cols.push_back(rng() % m);
      Matrix dup(n, m + 1);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) dup(i, j) = raw(i, cols[j]);
      std::vector<std::string> dup_names = names(m + 1);
      const Dataset with_dup(std::move(dup), dup_names, d.labels());
      const auto r1 = fit_reducer(normalize_minmax(with_dup), {.t = 1});
      const auto r2 = fit_reducer(normalize_minmax(with_dup), {.t = 1});
      if (!(r1.entries() == r2.entries())) ++failures["tie-break"];
      const auto& dup_name = dup_names[m];
      const auto& orig_name = dup_names[cols[m]];
      std::size_t pos_dup = 0, pos_orig = 0;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        if (r1.entries()[i].attribute == dup_name) pos_dup = i;
        if (r1.entries()[i].attribute == orig_name) pos_orig = i;
      }
      if (pos_orig > pos_dup) ++failures["tie-break"];
    }

    // Column permutation invariance.
    {
      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto permuted = normalize_minmax(raw.select_columns(perm));
      const auto rp = fit_reducer(permuted, {.t = m});
      if (!same_order(rank, rp, 1e-12)) ++failures["permutation"];
    }

    // Positive affine rescaling of raw columns leaves the order unchanged.
    {
      Matrix x = raw.values();
      for (std::size_t j = 0; j < m; ++j) {
        const double a = std::exp(8 * uniform01(rng) - 4);
        const double b = 200 * uniform01(rng) - 100;
        for (std::size_t i = 0; i < n; ++i) x(i, j) = a * x(i, j) + b;
      }
      const auto rescaled = normalize_minmax(Dataset(x, raw.attribute_names(), raw.labels()));
      const auto rr = fit_reducer(rescaled, {.t = m});
      if (!same_order(rank, rr, 1e-9)) ++failures["affine rescale"];
    }
  }
  std::size_t total = 0;
  std::string detail = std::to_string(datasets) + " datasets";
  for (const auto& [name, count] : failures) {
    total += count;
    detail += ", " + name + " failures = " + std::to_string(count);
  }
  if (total == 0) detail += ", all properties hold";
  return pass_if(total == 0, detail);
}

// --- 4 and 5: synthetic analogues ------------------------------------------

SynthSpec headline_spec(std::uint64_t seed) {
  return {.n = 2000, .m = 100, .contamination = 0.05, .n_informative = 10,
          .separation = 4.0, .seed = seed};
}

Outcome informative_recovery() {
  std::vector<double> hits;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto synth = generate(headline_spec(seed));
    const auto parts = split(synth.data, 0.8, seed);
    const auto rank = fit_reducer(normalize_minmax(parts.train), {.t = 10});
    double h = 0;
    for (const auto& e : rank.selected()) {
      h += std::binary_search(synth.informative.begin(), synth.informative.end(),
                              e.column);
    }
    hits.push_back(h);
    per_seed += (per_seed.empty() ? "" : " ") + fmt(h);
  }
  const double med = median(hits);
  return pass_if(med >= 8, "median informative in top 10 = " + fmt(med) +
                               " (per seed: " + per_seed + ")");
}

Outcome f1_uplift() {
  RunConfig cfg;
  DatasetSource ds;
  ds.name = "synth";
  ds.synth = headline_spec(0);
  ds.synth_seed_per_run = true;
  cfg.datasets = {ds};
  cfg.reducers = {ReducerKind::kNone, ReducerKind::kOutcentr, ReducerKind::kGrp};
  cfg.detectors = {DetectorKind::kIForest};
  for (std::uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);
  const auto report = run_experiment(cfg);
  std::map<ReducerKind, double> f1;
  for (const auto& a : report.aggregates) f1[a.reducer] = a.f1;
  const double oc = f1[ReducerKind::kOutcentr];
  const double none = f1[ReducerKind::kNone];
  const double grp = f1[ReducerKind::kGrp];
  return pass_if(oc >= 1.5 * none && oc >= 1.2 * grp && oc > 0,
                 "median F1 outcentr = " + fmt(oc) + ", none = " + fmt(none) +
                     ", grp = " + fmt(grp) + " (ratios " +
                     fmt(none > 0 ? oc / none : INFINITY, 3) + "x, " +
                     fmt(grp > 0 ? oc / grp : INFINITY, 3) + "x)");
}

// --- 6 and 7: baselines ------------------------------------------------------

Outcome pca_correctness() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  const double angle = 0.6;
  const double ux = std::cos(angle), uy = std::sin(angle);
  Matrix x(10000, 2);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double a = 5.0 * g(rng), b = 1.0 * g(rng);
    x(i, 0) = a * ux - b * uy + 3.0;
    x(i, 1) = a * uy + b * ux - 1.0;
  }
  const Dataset d(x, names(2));
  const auto model = pca_fit(d, 1);
  const double cosine =
      std::abs(model.components(0, 0) * ux + model.components(0, 1) * uy);
  const auto cov = sample_covariance(x);
  double res = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    double cv = 0.0;
    for (std::size_t j = 0; j < 2; ++j) cv += cov(i, j) * model.components(0, j);
    res += std::pow(cv - model.explained_variance[0] * model.components(0, i), 2);
  }
  res = std::sqrt(res);
  return pass_if(cosine > 0.99 && res < 1e-8,
                 "|cos| = " + fmt(cosine, 8) + ", residual = " + fmt(res));
}

Outcome grp_jl() {
  std::vector<double> fractions;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(700 + seed);
    std::normal_distribution<double> g;
    Matrix x(100, 500);
    for (std::size_t i = 0; i < 100; ++i)
      for (std::size_t j = 0; j < 500; ++j) x(i, j) = g(rng);
    const Dataset d(x, names(500));
    const auto y = grp_transform(d, 400, seed);
    std::size_t within = 0, total = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      for (std::size_t l = i + 1; l < 100; ++l) {
        const double dx = distance(Metric::kEuclidean, d.row(i), d.row(l));
        const double dy = distance(Metric::kEuclidean, y.row(i), y.row(l));
        const double ratio = (dy * dy) / (dx * dx);
        within += ratio >= 0.7 && ratio <= 1.3;
        ++total;
      }
    }
    fractions.push_back(static_cast<double>(within) / static_cast<double>(total));
  }
  const double med = median(fractions);
  return pass_if(med >= 0.95, "median fraction within 1 +/- 0.3 = " + fmt(med));
}

// --- 8: timing --------------------------------------------------------------

Outcome timing_direction() {
  const auto synth = generate({.n = 2000, .m = 500, .contamination = 0.05,
                               .separation = 4.0, .seed = 8});
  const auto parts = split(synth.data, 0.8, 8);
  const auto train = normalize_minmax(parts.train);
  const auto test = apply_normalization(parts.test, *train.normalization());
  const auto rank = fit_reducer(train, {.t_fraction = 0.10});
  const auto reduced_train = transform(train, rank);
  const auto reduced_test = transform(test, rank);

  DetectorConfig cfg;
  cfg.kind = DetectorKind::kLof;
  cfg.contamination = 0.05;
  auto time_lof = [&](const Dataset& tr, const Dataset& te) {
    return time_phase([&] {
      const auto lof = LocalOutlierFactor::fit(tr, cfg);
      const auto r = lof.score(te);
      if (r.scores.size() != te.n()) std::abort();
    });
  };
  std::vector<double> full, reduced;
  for (int run = 0; run < 5; ++run) {
    full.push_back(time_lof(train, test));
    reduced.push_back(time_lof(reduced_train, reduced_test));
  }
  const double speedup = median(full) / median(reduced);
  return pass_if(speedup >= 2.0, "median full = " + fmt(median(full)) +
                                     " s, reduced (m=" + std::to_string(rank.t()) +
                                     ") = " + fmt(median(reduced)) +
                                     " s, speedup = " + fmt(speedup, 3) + "x");
}

// --- 9 and 10: command line --------------------------------------------------

int run_cli(const fs::path& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = cli.string() + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// results.csv with the timing columns removed.
std::string untimed_results(const fs::path& path) {
  std::ifstream in(path);
  const auto rows = csv::read_all(in);
  if (rows.empty()) return {};
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < rows[0].size(); ++c) {
    if (std::find(std::begin(kTimingColumns), std::end(kTimingColumns),
                  rows[0][c]) == std::end(kTimingColumns)) {
      keep.push_back(c);
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::vector<std::string> kept;
    for (std::size_t c : keep) kept.push_back(row.at(c));
    csv::write_row(out, kept);
  }
  return out.str();
}

Outcome cli_reproducibility(const fs::path& cli, const fs::path& work) {
  const fs::path dir = work / "repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "[dataset.synth]\nsource = synth\nn = 1000\nm = 50\n"
           "contamination = 0.05\nseed = run\n\n"
           "[run]\nseeds = 1..3\noutput = out\n\n[iforest]\nn_trees = 50\n";
  }
  std::string first;
  for (int attempt = 0; attempt < 2; ++attempt) {
    fs::remove_all(dir / "out");
    const int code = run_cli(cli, "run --config " + (dir / "run.cfg").string(),
                             dir / "run.log");
    if (code != 0) return {Verdict::kFail, "run exited with " + std::to_string(code)};
    const auto text = untimed_results(dir / "out" / "results.csv");
    if (text.empty()) return {Verdict::kFail, "results.csv missing or empty"};
    if (attempt == 0) {
      first = text;
    } else {
      const auto lines = std::count(text.begin(), text.end(), '\n');
      return pass_if(text == first, std::to_string(lines - 1) +
                                        " result rows; identical = " +
                                        (text == first ? "yes" : "no"));
    }
  }
  return {};
}

Outcome external_benchmarks(const fs::path& cli, const fs::path& work) {
  const char* env = std::getenv("OUTCENTR_BENCH_DATA");
  if (env == nullptr || !fs::is_directory(env)) {
    return {Verdict::kSkip,
            "OUTCENTR_BENCH_DATA not set; external benchmark CSVs not supplied"};
  }
  std::vector<fs::path> csvs;
  for (const auto& entry : fs::directory_iterator(env)) {
    if (entry.path().extension() == ".csv") csvs.push_back(entry.path());
  }
  std::sort(csvs.begin(), csvs.end());
  if (csvs.empty()) return {Verdict::kFail, "no .csv files in " + std::string(env)};

  const fs::path dir = work / "external";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    for (const auto& p : csvs) {
      cfg << "[dataset." << p.stem().string() << "]\nsource = csv\npath = "
          << fs::absolute(p).string() << "\nlabel = target\n\n";
    }
    cfg << "[run]\nreducers = none, outcentr, pca, grp\ndetectors = iforest, lof\n"
           "seeds = 1..5\noutput = out\n";
  }
  const int code =
      run_cli(cli, "run --config " + (dir / "run.cfg").string(), dir / "run.log");
  if (code != 0) {
    return {Verdict::kFail, "run exited with " + std::to_string(code) +
                                ", see " + (dir / "run.log").string()};
  }
  std::ifstream in(dir / "out" / "results.csv");
  const auto rows = csv::read_all(in);
  std::map<std::string, std::map<std::string, std::vector<double>>> f1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][2] == "iforest") f1[rows[i][0]][rows[i][1]].push_back(std::stod(rows[i][5]));
  }
  std::size_t wins = 0;
  std::string detail;
  for (auto& [name, by_reducer] : f1) {
    const double oc = median(by_reducer["outcentr"]);
    const double none = median(by_reducer["none"]);
    wins += oc > none;
    detail += name + " " + fmt(oc) + " vs " + fmt(none) + "; ";
  }
  const std::size_t needed = std::min<std::size_t>(3, f1.size());
  return pass_if(wins >= needed, std::to_string(wins) + " of " +
                                     std::to_string(f1.size()) +
                                     " datasets improved (" + detail + ")");
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  fs::path cli;
  fs::path work = fs::temp_directory_path() / "outcentr_acceptance";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") {
      cli = argv[i + 1];
    } else if (flag == "--workdir") {
      work = argv[i + 1];
    } else {
      std::cerr << "unknown flag " << flag << '\n';
      return 2;
    }
  }
  if (cli.empty()) {
    std::cerr << "usage: acceptance --cli <outcentr binary> [--workdir <dir>]\n";
    return 2;
  }
  fs::create_directories(work);

  const std::vector<Criterion> criteria = {
      {1, "metrics oracle equivalence", 10, metrics_oracle},
      {2, "LOF oracle equivalence", 30, lof_oracle},
      {3, "reducer formula suite", 0, reducer_suite},
      {4, "informative-attribute recovery", 60, informative_recovery},
      {5, "F1 uplift over full features and GRP", 300, f1_uplift},
      {6, "PCA correctness", 10, pca_correctness},
      {7, "GRP distance preservation", 30, grp_jl},
      {8, "LOF timing on reduced data", 0, timing_direction},
      {9, "end-to-end reproducibility", 0, [&] { return cli_reproducibility(cli, work); }},
      {10, "external benchmark direction", 0, [&] { return external_benchmarks(cli, work); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    double seconds = 0.0;
    try {
      seconds = time_phase([&] { outcome = c.run(); });
    } catch (const std::exception& e) {
      outcome = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    if (c.limit_seconds > 0 && seconds > c.limit_seconds &&
        outcome.verdict == Verdict::kPass) {
      outcome.verdict = Verdict::kFail;
      outcome.detail += "; exceeded " + fmt(c.limit_seconds) + " s";
    }
    const char* tag = outcome.verdict == Verdict::kPass   ? "PASS"
                      : outcome.verdict == Verdict::kSkip ? "SKIP"
                                                          : "FAIL";
    failed += outcome.verdict == Verdict::kFail;
    std::cout << "criterion " << c.id << " " << tag << "  " << c.name << ": "
              << outcome.detail << " [" << fmt(seconds, 3) << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "acceptance: all criteria passed or skipped\n"
                            : "acceptance: " + std::to_string(failed) +
                                  " criteria failed\n");
  return failed == 0 ? 0 : 1;
}
