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

// Outlier-centric feature reduction.
//
// The reducer summarises each class of a labeled, [0,1]-scaled dataset by
// its centroid (per-attribute mean). An attribute's distinguishability is
// the absolute gap between the outlier and inlier centroids on that
// attribute. Attributes are ranked by distinguishability (descending, ties
// by ascending column index) and the dataset is projected onto the top t.
//
// Typical use:
//
//   AttributeRank rank = fit_reducer(train, {.t_fraction = 0.10});
//   Dataset reduced_train = transform(train, rank);
//   Dataset reduced_test = transform(test, rank);

#ifndef OUTCENTR_REDUCER_H_
#define OUTCENTR_REDUCER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outcentr/dataset.h"

namespace outcentr {

enum class ClassTag { kOutlier, kInlier, kAll };

std::string_view class_tag_name(ClassTag tag);

struct Centroid {
  std::vector<double> values;
  std::size_t source_count = 0;
  ClassTag class_tag = ClassTag::kAll;
};

struct RankEntry {
  std::string attribute;
  double score = 0.0;
  // Column position in the dataset the rank was fitted on.
  std::size_t column = 0;

  bool operator==(const RankEntry&) const = default;
};

// Attributes ordered by non-increasing distinguishability with the
// selection cutoff t.
class AttributeRank {
 public:
  AttributeRank(std::vector<RankEntry> entries, std::size_t t);

  const std::vector<RankEntry>& entries() const { return entries_; }
  std::size_t t() const { return t_; }
  std::size_t size() const { return entries_.size(); }

  // The first t entries.
  std::span<const RankEntry> selected() const {
    return {entries_.data(), t_};
  }
  std::vector<std::string> selected_names() const;

  // Same ordering with a different cutoff.
  AttributeRank with_cutoff(std::size_t t) const;

 private:
  std::vector<RankEntry> entries_;
  std::size_t t_;
};

enum class DeviationMode {
  // Mean of (value - centroid), exactly as the attribute score is defined.
  kSigned,
  // Mean of |value - centroid|.
  kAbsolute,
};

DeviationMode parse_deviation_mode(std::string_view name);

struct AttributeScoreReport {
  std::vector<std::string> attributes;
  std::vector<double> scores;
  ClassTag class_tag = ClassTag::kAll;
  DeviationMode mode = DeviationMode::kSigned;
};

struct LabelPartition {
  std::vector<std::size_t> outlier_rows;
  std::vector<std::size_t> inlier_rows;
};

// Splits labeled rows by class. Logs a warning to stderr when the outlier
// class is not the minority.
LabelPartition partition_labels(const Dataset& data);

// Arithmetic mean of each column over `rows`.
Centroid compute_centroid(const Dataset& data,
                          std::span<const std::size_t> rows, ClassTag tag);

// |c_out[j] - c_in[j]| for every attribute.
std::vector<double> distinguishability_scores(const Centroid& c_out,
                                              const Centroid& c_in);

// Sorts by score descending, ascending index on ties. 1 <= t <= m.
AttributeRank attribute_rank(std::span<const double> scores,
                             std::span<const std::string> names,
                             std::size_t t);

// Mean deviation of each attribute over `rows` from the centroid `c`.
// Reporting only; selection uses the distinguishability ranking.
AttributeScoreReport attribute_scores(
    const Dataset& data, std::span<const std::size_t> rows, const Centroid& c,
    DeviationMode mode = DeviationMode::kSigned);

// max(1, floor(t_fraction * m)), capped at m.
std::size_t cutoff_for(double t_fraction, std::size_t m);

struct ReducerOptions {
  // Fraction of labeled rows per class used to build the centroids.
  double label_ratio = 1.0;
  double t_fraction = 0.10;
  // Overrides t_fraction when non-zero.
  std::size_t t = 0;
  std::uint64_t seed = 0;
};

AttributeRank fit_reducer(const Dataset& train,
                          const ReducerOptions& options = {});

// Keeps exactly the selected columns in their original relative order.
Dataset transform(const Dataset& data, const AttributeRank& rank);

// CSV with columns rank,attribute,distinguishability_score,selected.
void write_rank_csv(const AttributeRank& rank, std::ostream& out);
void write_rank_csv(const AttributeRank& rank,
                    const std::filesystem::path& path);
// Throws DataError on malformed input.
AttributeRank read_rank_csv(std::istream& in);
AttributeRank read_rank_csv(const std::filesystem::path& path);

void write_attribute_scores_csv(const AttributeScoreReport& report,
                                const std::filesystem::path& path);

}  // namespace outcentr

#endif  // OUTCENTR_REDUCER_H_
