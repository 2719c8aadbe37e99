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

#include "outcentr/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <unordered_map>

#include "outcentr/csv.h"
#include "outcentr/random.h"

namespace outcentr {

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "manhattan") return Metric::kManhattan;
  throw std::invalid_argument("unknown distance metric: " + std::string(name));
}

std::string_view metric_name(Metric metric) {
  return metric == Metric::kEuclidean ? "euclidean" : "manhattan";
}

double distance(Metric metric, std::span<const double> a,
                std::span<const double> b) {
  double acc = 0.0;
  if (metric == Metric::kEuclidean) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = a[j] - b[j];
      acc += d * d;
    }
    return std::sqrt(acc);
  }
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::abs(a[j] - b[j]);
  return acc;
}

void Context::validate() const {
  if (threshold.has_value() == contamination.has_value()) {
    throw std::invalid_argument(
        "context needs exactly one of threshold or contamination");
  }
  if (contamination && !(*contamination > 0.0 && *contamination < 1.0)) {
    throw std::invalid_argument("contamination must lie in (0, 1)");
  }
}

Dataset::Dataset(Matrix values, std::vector<std::string> attribute_names,
                 std::optional<std::vector<int>> labels,
                 std::optional<std::vector<MinMax>> normalization)
    : values_(std::move(values)),
      names_(std::move(attribute_names)),
      labels_(std::move(labels)),
      normalization_(std::move(normalization)) {
  if (names_.size() != values_.cols()) {
    throw std::invalid_argument("attribute name count does not match columns");
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() !=
      names_.size()) {
    throw std::invalid_argument("attribute names must be distinct");
  }
  if (labels_) {
    if (labels_->size() != values_.rows()) {
      throw std::invalid_argument("label count does not match rows");
    }
    for (int l : *labels_) {
      if (l != 0 && l != 1) throw std::invalid_argument("labels must be 0/1");
    }
  }
  if (normalization_ && normalization_->size() != values_.cols()) {
    throw std::invalid_argument("normalization state size mismatch");
  }
}

std::optional<std::size_t> Dataset::column_index(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

const std::vector<int>& Dataset::labels() const {
  if (!labels_) throw DataError("dataset has no labels");
  return *labels_;
}

std::size_t Dataset::outlier_count() const {
  const auto& l = labels();
  return static_cast<std::size_t>(std::count(l.begin(), l.end(), 1));
}

Dataset Dataset::with_categorical_levels(
    std::map<std::string, std::vector<std::string>> levels) const {
  Dataset out = *this;
  out.levels_ = std::move(levels);
  return out;
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Matrix values(rows.size(), m());
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= n()) throw std::out_of_range("row index out of range");
    const auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), values.row(i).begin());
    if (labels) labels->push_back((*labels_)[rows[i]]);
  }
  Dataset out(std::move(values), names_, std::move(labels), normalization_);
  out.levels_ = levels_;
  return out;
}

Dataset Dataset::select_columns(std::span<const std::size_t> cols) const {
  Matrix values(n(), cols.size());
  std::vector<std::string> names;
  std::optional<std::vector<MinMax>> norm;
  if (normalization_) norm.emplace();
  std::map<std::string, std::vector<std::string>> levels;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::size_t j = cols[c];
    if (j >= m()) throw std::out_of_range("column index out of range");
    for (std::size_t i = 0; i < n(); ++i) values(i, c) = values_(i, j);
    names.push_back(names_[j]);
    if (norm) norm->push_back((*normalization_)[j]);
    if (auto it = levels_.find(names_[j]); it != levels_.end()) {
      levels.insert(*it);
    }
  }
  Dataset out(std::move(values), std::move(names), labels_, std::move(norm));
  out.levels_ = std::move(levels);
  return out;
}

Dataset Dataset::without_labels() const {
  Dataset out(values_, names_, std::nullopt, normalization_);
  out.levels_ = levels_;
  return out;
}

CategoricalEncoding encode_categoricals(std::span<const std::string> raw) {
  CategoricalEncoding enc;
  enc.codes.reserve(raw.size());
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& value : raw) {
    auto [it, inserted] = index.try_emplace(value, enc.levels.size());
    if (inserted) enc.levels.push_back(value);
    enc.codes.push_back(static_cast<double>(it->second));
  }
  return enc;
}

Dataset read_csv(std::istream& in, const CsvOptions& options) {
  auto header = csv::read_row(in);
  if (!header) throw DataError("empty dataset: missing header");
  for (auto& h : *header) h = std::string(csv::trim(h));

  std::optional<std::size_t> label_col;
  if (options.label_column) {
    const auto it =
        std::find(header->begin(), header->end(), *options.label_column);
    if (it == header->end()) {
      throw DataError("label column not found: " + *options.label_column);
    }
    label_col = static_cast<std::size_t>(it - header->begin());
  }

  const std::size_t width = header->size();
  std::vector<std::vector<std::string>> columns(width);
  std::size_t line = 1;
  while (auto row = csv::read_row(in)) {
    ++line;
    if (row->size() != width) {
      throw DataError("ragged row at record " + std::to_string(line) +
                      ": expected " + std::to_string(width) + " fields, got " +
                      std::to_string(row->size()));
    }
    for (std::size_t j = 0; j < width; ++j) {
      const auto cell = csv::trim((*row)[j]);
      if (cell.empty()) {
        throw DataError("missing value at record " + std::to_string(line) +
                        ", column " + (*header)[j]);
      }
      columns[j].emplace_back(cell);
    }
  }
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  if (n == 0) throw DataError("empty dataset");

  std::optional<std::vector<int>> labels;
  if (label_col) {
    labels.emplace();
    labels->reserve(n);
    for (const auto& token : columns[*label_col]) {
      if (token == options.positive_token) {
        labels->push_back(1);
      } else if (token == options.negative_token) {
        labels->push_back(0);
      } else {
        throw DataError("non-binary label value '" + token + "' in column " +
                        *options.label_column);
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<double>> parsed;
  std::map<std::string, std::vector<std::string>> levels;
  for (std::size_t j = 0; j < width; ++j) {
    if (label_col && j == *label_col) continue;
    std::vector<double> numeric;
    numeric.reserve(n);
    for (const auto& cell : columns[j]) {
      const auto v = csv::parse_double(cell);
      if (!v) break;
      numeric.push_back(*v);
    }
    if (numeric.size() != n) {
      auto enc = encode_categoricals(columns[j]);
      numeric = std::move(enc.codes);
      levels.emplace((*header)[j], std::move(enc.levels));
    }
    names.push_back((*header)[j]);
    parsed.push_back(std::move(numeric));
  }

  Matrix values(n, names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) values(i, j) = parsed[j][i];
  }
  try {
    return Dataset(std::move(values), std::move(names), std::move(labels))
        .with_categorical_levels(std::move(levels));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  return read_csv(in, options);
}

void write_csv(const Dataset& data, const std::filesystem::path& path,
               std::string_view label_column) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  csv::Row header = data.attribute_names();
  if (data.has_labels()) header.emplace_back(label_column);
  csv::write_row(out, header);
  csv::Row row;
  for (std::size_t i = 0; i < data.n(); ++i) {
    row.clear();
    for (double v : data.row(i)) row.push_back(csv::format_double(v));
    if (data.has_labels()) row.push_back(std::to_string(data.labels()[i]));
    csv::write_row(out, row);
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

double scale(double v, const MinMax& mm) {
  const double range = mm.max - mm.min;
  if (!(range > 0.0)) return 0.0;
  return std::clamp((v - mm.min) / range, 0.0, 1.0);
}

Dataset rescale(const Dataset& data, std::vector<MinMax> state) {
  Matrix values(data.n(), data.m());
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.m(); ++j) {
      values(i, j) = scale(data(i, j), state[j]);
    }
  }
  std::optional<std::vector<int>> labels;
  if (data.has_labels()) labels = data.labels();
  return Dataset(std::move(values), data.attribute_names(), std::move(labels),
                 std::move(state))
      .with_categorical_levels(data.categorical_levels());
}

}  // namespace

Dataset normalize_minmax(const Dataset& data) {
  if (data.is_normalized()) {
    throw std::invalid_argument("dataset is already normalized");
  }
  std::vector<MinMax> state(data.m());
  for (std::size_t j = 0; j < data.m(); ++j) {
    if (data.n() == 0) break;
    state[j] = {data(0, j), data(0, j)};
    for (std::size_t i = 1; i < data.n(); ++i) {
      state[j].min = std::min(state[j].min, data(i, j));
      state[j].max = std::max(state[j].max, data(i, j));
    }
  }
  return rescale(data, std::move(state));
}

Dataset apply_normalization(const Dataset& data,
                            std::span<const MinMax> state) {
  if (state.size() != data.m()) {
    throw std::invalid_argument(
        "normalization state has " + std::to_string(state.size()) +
        " entries, dataset has " + std::to_string(data.m()) + " attributes");
  }
  return rescale(data, std::vector<MinMax>(state.begin(), state.end()));
}

SplitPair split(const Dataset& data, double train_fraction,
                std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  if (!data.has_labels()) throw DataError("split requires labels");

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < data.n(); ++i) {
    by_class[data.labels()[i]].push_back(i);
  }

  SplitPair out;
  out.seed = seed;
  Rng rng = make_rng(seed, 0x5EED5);
  for (int cls : {1, 0}) {
    auto& rows = by_class[cls];
    if (rows.size() < 2) {
      throw DataError(std::string("split needs at least 2 ") +
                      (cls ? "outlier" : "inlier") + " rows, found " +
                      std::to_string(rows.size()));
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    auto take = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(rows.size())));
    take = std::clamp<std::size_t>(take, 1, rows.size() - 1);
    out.train_rows.insert(out.train_rows.end(), rows.begin(),
                          rows.begin() + static_cast<std::ptrdiff_t>(take));
    out.test_rows.insert(out.test_rows.end(),
                         rows.begin() + static_cast<std::ptrdiff_t>(take),
                         rows.end());
  }
  std::sort(out.train_rows.begin(), out.train_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.train = data.select_rows(out.train_rows);
  out.test = data.select_rows(out.test_rows);
  return out;
}

}  // namespace outcentr
