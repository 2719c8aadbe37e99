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

#include "outcentr/detectors.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "outcentr/csv.h"
#include "outcentr/parallel.h"

namespace outcentr {

DetectorKind parse_detector_kind(std::string_view name) {
  if (name == "iforest") return DetectorKind::kIForest;
  if (name == "lof") return DetectorKind::kLof;
  throw std::invalid_argument("unknown detector: " + std::string(name));
}

std::string_view detector_name(DetectorKind kind) {
  return kind == DetectorKind::kIForest ? "iforest" : "lof";
}

void DetectorConfig::validate() const {
  if (!(contamination > 0.0 && contamination <= 0.5)) {
    throw std::invalid_argument("contamination must lie in (0, 0.5]");
  }
  if (n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  if (max_samples && *max_samples < 2) {
    throw std::invalid_argument("max_samples must be >= 2");
  }
  if (k_neighbors < 1) throw std::invalid_argument("k_neighbors must be >= 1");
}

DetectorConfig DetectorConfig::from_context(const Context& context,
                                            DetectorKind kind) {
  context.validate();
  if (!context.contamination) {
    throw std::invalid_argument("detectors derive cutoffs from contamination");
  }
  DetectorConfig cfg;
  cfg.kind = kind;
  cfg.metric = context.dist;
  cfg.contamination = *context.contamination;
  cfg.validate();
  return cfg;
}

std::size_t DetectionResult::flagged() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

double contamination_threshold(std::span<const double> scores,
                               double contamination) {
  if (scores.empty()) throw std::invalid_argument("no scores to threshold");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto k = static_cast<std::size_t>(
      std::llround(contamination * static_cast<double>(sorted.size())));
  if (k >= sorted.size()) return -std::numeric_limits<double>::infinity();
  return sorted[k];
}

DetectionResult apply_threshold(std::vector<double> scores, double threshold) {
  DetectionResult r;
  r.flags.reserve(scores.size());
  for (double s : scores) r.flags.push_back(s > threshold ? 1 : 0);
  r.scores = std::move(scores);
  r.threshold = threshold;
  return r;
}

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  constexpr double kEulerGamma = 0.5772156649015329;
  const double d = static_cast<double>(n);
  return 2.0 * (std::log(d - 1.0) + kEulerGamma) - 2.0 * (d - 1.0) / d;
}

// --- Isolation Forest -------------------------------------------------------

void IsolationForest::grow(const Dataset& data, std::vector<std::size_t>& rows,
                           std::size_t begin, std::size_t end,
                           std::size_t depth, std::size_t height_limit,
                           Rng& rng, Tree& tree, std::size_t node) {
  tree[node].size = static_cast<std::uint32_t>(end - begin);
  if (depth >= height_limit || end - begin <= 1) return;

  // Draw attributes without replacement until one varies inside the node,
  // which picks uniformly among the non-constant attributes.
  std::vector<std::size_t> candidates(data.m());
  std::iota(candidates.begin(), candidates.end(), 0);
  std::size_t remaining = candidates.size();
  while (remaining > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
    const std::size_t slot = pick(rng);
    const std::size_t feature = candidates[slot];
    candidates[slot] = candidates[--remaining];

    double lo = data(rows[begin], feature);
    double hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double v = data(rows[i], feature);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!(hi > lo)) continue;

    std::uniform_real_distribution<double> cut(lo, hi);
    double split = cut(rng);
    if (split >= hi) split = lo;
    const auto mid = std::partition(
        rows.begin() + static_cast<std::ptrdiff_t>(begin),
        rows.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::size_t r) { return data(r, feature) <= split; });
    const auto mid_index = static_cast<std::size_t>(mid - rows.begin());

    const auto left = static_cast<std::uint32_t>(tree.size());
    tree.emplace_back();
    tree.emplace_back();
    tree[node].feature = static_cast<int>(feature);
    tree[node].split = split;
    tree[node].left = left;
    tree[node].right = left + 1;
    grow(data, rows, begin, mid_index, depth + 1, height_limit, rng, tree,
         left);
    grow(data, rows, mid_index, end, depth + 1, height_limit, rng, tree,
         left + 1);
    return;
  }
}

IsolationForest IsolationForest::fit(const Dataset& train,
                                     const DetectorConfig& cfg) {
  cfg.validate();
  if (train.n() < 2) throw std::invalid_argument("iforest needs n >= 2");
  IsolationForest forest;
  forest.cfg_ = cfg;
  forest.m_ = train.m();
  forest.subsample_size_ = std::min(cfg.max_samples.value_or(256), train.n());
  forest.height_limit_ = static_cast<std::size_t>(
      std::ceil(std::log2(static_cast<double>(forest.subsample_size_))));
  forest.trees_.resize(cfg.n_trees);

  parallel_for(cfg.n_trees, cfg.threads, [&](std::size_t t) {
    Rng rng = make_rng(cfg.seed, t + 1);
    std::vector<std::size_t> all(train.n());
    std::iota(all.begin(), all.end(), 0);
    // Partial Fisher-Yates: the first psi entries are a uniform sample
    // without replacement.
    for (std::size_t i = 0; i < forest.subsample_size_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    all.resize(forest.subsample_size_);
    Tree& tree = forest.trees_[t];
    tree.emplace_back();
    grow(train, all, 0, all.size(), 0, forest.height_limit_, rng, tree, 0);
  });

  auto scores = forest.score_samples(train);
  const double cutoff = contamination_threshold(scores, cfg.contamination);
  forest.training_ = apply_threshold(std::move(scores), cutoff);
  return forest;
}

double IsolationForest::path_length(const Tree& tree,
                                    std::span<const double> x) const {
  std::size_t node = 0;
  double depth = 0.0;
  while (tree[node].feature >= 0) {
    const Node& n = tree[node];
    node = x[static_cast<std::size_t>(n.feature)] <= n.split ? n.left : n.right;
    depth += 1.0;
  }
  return depth + average_path_length(tree[node].size);
}

double IsolationForest::mean_path_length(std::span<const double> x) const {
  if (x.size() != m_) throw std::invalid_argument("iforest dimension mismatch");
  double total = 0.0;
  for (const Tree& tree : trees_) total += path_length(tree, x);
  return total / static_cast<double>(trees_.size());
}

std::vector<double> IsolationForest::score_samples(const Dataset& data) const {
  if (data.m() != m_) {
    throw std::invalid_argument("iforest dimension mismatch: fitted m=" +
                                std::to_string(m_) + ", data m=" +
                                std::to_string(data.m()));
  }
  const double norm = average_path_length(subsample_size_);
  std::vector<double> scores(data.n());
  parallel_for(data.n(), cfg_.threads, [&](std::size_t i) {
    scores[i] = std::exp2(-mean_path_length(data.row(i)) / norm);
  });
  return scores;
}

DetectionResult IsolationForest::score(const Dataset& data,
                                       ThresholdMode mode) const {
  auto scores = score_samples(data);
  const double cutoff =
      mode == ThresholdMode::kInductive
          ? training_.threshold
          : contamination_threshold(scores, cfg_.contamination);
  return apply_threshold(std::move(scores), cutoff);
}

// --- Local Outlier Factor ---------------------------------------------------

namespace {

struct Neighbor {
  double dist;
  std::size_t index;
  bool operator<(const Neighbor& o) const {
    return dist < o.dist || (dist == o.dist && index < o.index);
  }
};

// k nearest training rows to x (ties by index). `skip` excludes one row.
std::vector<Neighbor> nearest(const Matrix& train, std::span<const double> x,
                              std::size_t k, Metric metric, std::size_t skip) {
  std::vector<Neighbor> cand;
  cand.reserve(train.rows());
  for (std::size_t j = 0; j < train.rows(); ++j) {
    if (j == skip) continue;
    const auto r = train.row(j);
    double d = 0.0;
    if (metric == Metric::kEuclidean) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        const double diff = x[c] - r[c];
        d += diff * diff;
      }
    } else {
      for (std::size_t c = 0; c < r.size(); ++c) d += std::abs(x[c] - r[c]);
    }
    cand.push_back({d, j});
  }
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k),
                    cand.end());
  cand.resize(k);
  if (metric == Metric::kEuclidean) {
    for (auto& c : cand) c.dist = std::sqrt(c.dist);
  }
  return cand;
}

double density(std::span<const Neighbor> nbrs,
               const std::vector<double>& k_distance) {
  double reach = 0.0;
  for (const auto& nb : nbrs) reach += std::max(k_distance[nb.index], nb.dist);
  reach /= static_cast<double>(nbrs.size());
  return 1.0 / std::max(reach, kLofDistanceFloor);
}

double lof_ratio(std::span<const Neighbor> nbrs, double own_density,
                 const std::vector<double>& lrd) {
  double acc = 0.0;
  for (const auto& nb : nbrs) acc += lrd[nb.index];
  return acc / static_cast<double>(nbrs.size()) / own_density;
}

}  // namespace

LocalOutlierFactor LocalOutlierFactor::fit(const Dataset& train,
                                           const DetectorConfig& cfg) {
  cfg.validate();
  const std::size_t n = train.n();
  const std::size_t k = cfg.k_neighbors;
  if (n <= k) {
    throw std::invalid_argument("lof needs n > k_neighbors (n=" +
                                std::to_string(n) + ", k=" +
                                std::to_string(k) + ")");
  }
  LocalOutlierFactor lof;
  lof.cfg_ = cfg;
  lof.train_ = train.values();

  std::vector<std::vector<Neighbor>> nbrs(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    nbrs[i] = nearest(lof.train_, lof.train_.row(i), k, cfg.metric, i);
  });

  lof.k_distance_.resize(n);
  lof.neighbors_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lof.k_distance_[i] = nbrs[i].back().dist;
    for (const auto& nb : nbrs[i]) lof.neighbors_[i].push_back(nb.index);
  }
  lof.lrd_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lof.lrd_[i] = density(nbrs[i], lof.k_distance_);
  }
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = lof_ratio(nbrs[i], lof.lrd_[i], lof.lrd_);
  }
  const double cutoff = contamination_threshold(scores, cfg.contamination);
  lof.training_ = apply_threshold(std::move(scores), cutoff);
  return lof;
}

DetectionResult LocalOutlierFactor::score(const Dataset& query) const {
  if (query.m() != train_.cols()) {
    throw std::invalid_argument("lof dimension mismatch");
  }
  constexpr auto kNoSkip = std::numeric_limits<std::size_t>::max();
  std::vector<double> scores(query.n());
  parallel_for(query.n(), cfg_.threads, [&](std::size_t i) {
    const auto nbrs =
        nearest(train_, query.row(i), cfg_.k_neighbors, cfg_.metric, kNoSkip);
    scores[i] = lof_ratio(nbrs, density(nbrs, k_distance_), lrd_);
  });
  return apply_threshold(std::move(scores), training_.threshold);
}

DetectionResult lof_fit_predict(const Dataset& data,
                                const DetectorConfig& cfg) {
  return LocalOutlierFactor::fit(data, cfg).training_result();
}

void write_detection_csv(const DetectionResult& result,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  csv::write_row(out, {"row_index", "score", "flag"});
  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    csv::write_row(out, {std::to_string(i), csv::format_double(result.scores[i]),
                         std::to_string(result.flags[i])});
  }
}

}  // namespace outcentr
