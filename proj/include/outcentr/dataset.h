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

// Tabular data model shared by every stage of the pipeline: loading labeled
// CSV files, ordinal encoding of categorical columns, min-max scaling and
// stratified train/test splitting.

#ifndef OUTCENTR_DATASET_H_
#define OUTCENTR_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "outcentr/matrix.h"

namespace outcentr {

// Malformed or unusable input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MinMax {
  double min = 0.0;
  double max = 0.0;
  bool operator==(const MinMax&) const = default;
};

enum class Metric { kEuclidean, kManhattan };

Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric metric);
double distance(Metric metric, std::span<const double> a,
                std::span<const double> b);

// Scope of an outlier detection task: how deviation is measured and where
// the outlier cutoff lies. The cutoff is either an absolute threshold or a
// contamination fraction from which each detector derives its own.
struct Context {
  Metric dist = Metric::kEuclidean;
  std::optional<double> threshold;
  std::optional<double> contamination;

  // Throws std::invalid_argument unless exactly one cutoff is set and a
  // contamination lies strictly inside (0, 1).
  void validate() const;
};

// An n x m matrix with attribute names, optional binary labels
// (1 = outlier) and the per-column (min, max) recorded by scaling.
class Dataset {
 public:
  Dataset() = default;
  Dataset(Matrix values, std::vector<std::string> attribute_names,
          std::optional<std::vector<int>> labels = std::nullopt,
          std::optional<std::vector<MinMax>> normalization = std::nullopt);

  std::size_t n() const { return values_.rows(); }
  std::size_t m() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(i, j);
  }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }

  const std::vector<std::string>& attribute_names() const { return names_; }
  std::optional<std::size_t> column_index(std::string_view name) const;

  bool has_labels() const { return labels_.has_value(); }
  // Throws DataError when the dataset is unlabeled.
  const std::vector<int>& labels() const;
  std::size_t outlier_count() const;

  bool is_normalized() const { return normalization_.has_value(); }
  const std::optional<std::vector<MinMax>>& normalization() const {
    return normalization_;
  }

  // Level tables of ordinal-encoded columns, keyed by attribute name.
  const std::map<std::string, std::vector<std::string>>& categorical_levels()
      const {
    return levels_;
  }
  Dataset with_categorical_levels(
      std::map<std::string, std::vector<std::string>> levels) const;

  Dataset select_rows(std::span<const std::size_t> rows) const;
  Dataset select_columns(std::span<const std::size_t> cols) const;
  Dataset without_labels() const;

 private:
  Matrix values_;
  std::vector<std::string> names_;
  std::optional<std::vector<int>> labels_;
  std::optional<std::vector<MinMax>> normalization_;
  std::map<std::string, std::vector<std::string>> levels_;
};

struct CsvOptions {
  std::optional<std::string> label_column;
  std::string positive_token = "1";
  std::string negative_token = "0";
};

Dataset load_csv(const std::filesystem::path& path,
                 const CsvOptions& options = {});
Dataset read_csv(std::istream& in, const CsvOptions& options = {});

// Writes values with a header; labels, when present, go last under
// `label_column`.
void write_csv(const Dataset& data, const std::filesystem::path& path,
               std::string_view label_column = "target");

struct CategoricalEncoding {
  std::vector<double> codes;
  // levels[code] is the original string.
  std::vector<std::string> levels;
};

// Maps each distinct string to 0, 1, 2, ... in order of first appearance.
CategoricalEncoding encode_categoricals(std::span<const std::string> raw);

// Scales every column to [0, 1] by its own min and max and records them.
// Constant columns become all zeros. Throws if already normalized.
Dataset normalize_minmax(const Dataset& data);

// Applies previously recorded scaling constants, clipping to [0, 1].
Dataset apply_normalization(const Dataset& data,
                            std::span<const MinMax> state);

struct SplitPair {
  Dataset train;
  Dataset test;
  std::uint64_t seed = 0;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// Stratified shuffle split: each class is partitioned separately so both
// parts keep the class ratio. Row order inside each part follows the
// source. Requires labels and at least two rows per class.
SplitPair split(const Dataset& data, double train_fraction,
                std::uint64_t seed);

}  // namespace outcentr

#endif  // OUTCENTR_DATASET_H_
