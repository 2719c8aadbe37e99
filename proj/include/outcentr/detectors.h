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

// Outlier detectors: Isolation Forest and Local Outlier Factor.
//
// Both produce continuous scores (higher = more anomalous) and binary flags
// from a contamination-derived cutoff. A record is flagged when its score
// is strictly greater than the cutoff.

#ifndef OUTCENTR_DETECTORS_H_
#define OUTCENTR_DETECTORS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "outcentr/dataset.h"
#include "outcentr/random.h"

namespace outcentr {

enum class DetectorKind { kIForest, kLof };

DetectorKind parse_detector_kind(std::string_view name);
std::string_view detector_name(DetectorKind kind);

// kInductive thresholds scored records with the cutoff learned from the
// training scores; kTransductive uses the quantile of the scored set.
enum class ThresholdMode { kInductive, kTransductive };

struct DetectorConfig {
  DetectorKind kind = DetectorKind::kIForest;
  double contamination = 0.1;
  std::size_t n_trees = 100;
  // nullopt means "auto": min(256, n).
  std::optional<std::size_t> max_samples;
  std::size_t k_neighbors = 20;
  Metric metric = Metric::kEuclidean;
  std::uint64_t seed = 0;
  // 0 = hardware concurrency. Results do not depend on this value.
  std::size_t threads = 1;

  void validate() const;
  // Takes the metric and contamination from a context.
  static DetectorConfig from_context(const Context& context,
                                     DetectorKind kind);
};

struct DetectionResult {
  std::vector<double> scores;
  std::vector<int> flags;
  double threshold = 0.0;

  std::size_t flagged() const;
};

// Cutoff such that round(contamination * n) scores lie strictly above it
// when there are no ties: the (k+1)-th largest score.
double contamination_threshold(std::span<const double> scores,
                               double contamination);
DetectionResult apply_threshold(std::vector<double> scores, double threshold);

// Average path length of an unsuccessful search in a binary search tree
// built from n points; c(0) = c(1) = 0, c(2) = 1.
double average_path_length(std::size_t n);

class IsolationForest {
 public:
  // Requires n >= 2. Also scores the training set to fix the inductive
  // cutoff.
  static IsolationForest fit(const Dataset& train, const DetectorConfig& cfg);

  // 2^(-E[h(x)] / c(psi)), in (0, 1).
  std::vector<double> score_samples(const Dataset& data) const;
  DetectionResult score(const Dataset& data,
                        ThresholdMode mode = ThresholdMode::kInductive) const;
  const DetectionResult& training_result() const { return training_; }

  std::size_t subsample_size() const { return subsample_size_; }
  std::size_t tree_count() const { return trees_.size(); }
  std::size_t node_count(std::size_t tree) const {
    return trees_.at(tree).size();
  }
  std::size_t height_limit() const { return height_limit_; }
  // Expected path length of one record over all trees.
  double mean_path_length(std::span<const double> x) const;

 private:
  struct Node {
    // -1 marks a leaf.
    int feature = -1;
    double split = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t size = 0;
  };
  using Tree = std::vector<Node>;

  static void grow(const Dataset& data, std::vector<std::size_t>& rows,
                   std::size_t begin, std::size_t end, std::size_t depth,
                   std::size_t height_limit, Rng& rng, Tree& tree,
                   std::size_t node);
  double path_length(const Tree& tree, std::span<const double> x) const;

  std::vector<Tree> trees_;
  std::size_t m_ = 0;
  std::size_t subsample_size_ = 0;
  std::size_t height_limit_ = 0;
  DetectorConfig cfg_;
  DetectionResult training_;
};

// Zero mean reachability distances are floored at this value before taking
// the reciprocal density.
inline constexpr double kLofDistanceFloor = 1e-12;

class LocalOutlierFactor {
 public:
  // Exact k-nearest-neighbor search over all pairs. Requires n > k.
  static LocalOutlierFactor fit(const Dataset& train,
                                const DetectorConfig& cfg);

  // LOF of the fitted records themselves, thresholded on their own
  // quantile.
  const DetectionResult& training_result() const { return training_; }
  // LOF of unseen records against the fitted neighborhood, thresholded
  // with the training cutoff.
  DetectionResult score(const Dataset& query) const;

  const std::vector<std::vector<std::size_t>>& neighbors() const {
    return neighbors_;
  }
  const std::vector<double>& k_distances() const { return k_distance_; }
  const std::vector<double>& densities() const { return lrd_; }

 private:
  Matrix train_;
  DetectorConfig cfg_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<double> k_distance_;
  std::vector<double> lrd_;
  DetectionResult training_;
};

// Transductive LOF: fit and flag the same records.
DetectionResult lof_fit_predict(const Dataset& data, const DetectorConfig& cfg);

// CSV with columns row_index,score,flag.
void write_detection_csv(const DetectionResult& result,
                         const std::filesystem::path& path);

}  // namespace outcentr

#endif  // OUTCENTR_DETECTORS_H_
