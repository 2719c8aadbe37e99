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

#include "outcentr/reducer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "outcentr/csv.h"
#include "outcentr/random.h"

namespace outcentr {

std::string_view class_tag_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::kOutlier:
      return "outlier";
    case ClassTag::kInlier:
      return "inlier";
    case ClassTag::kAll:
      return "all";
  }
  return "all";
}

AttributeRank::AttributeRank(std::vector<RankEntry> entries, std::size_t t)
    : entries_(std::move(entries)), t_(t) {
  if (t_ < 1 || t_ > entries_.size()) {
    throw std::invalid_argument("cutoff t=" + std::to_string(t_) +
                                " outside [1, " +
                                std::to_string(entries_.size()) + "]");
  }
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].score > entries_[i - 1].score) {
      throw std::invalid_argument("rank scores must be non-increasing");
    }
  }
}

std::vector<std::string> AttributeRank::selected_names() const {
  std::vector<std::string> names;
  for (const auto& e : selected()) names.push_back(e.attribute);
  return names;
}

AttributeRank AttributeRank::with_cutoff(std::size_t t) const {
  return AttributeRank(entries_, t);
}

DeviationMode parse_deviation_mode(std::string_view name) {
  if (name == "signed") return DeviationMode::kSigned;
  if (name == "absolute") return DeviationMode::kAbsolute;
  throw std::invalid_argument("unknown deviation mode: " + std::string(name));
}

LabelPartition partition_labels(const Dataset& data) {
  LabelPartition out;
  const auto& labels = data.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? out.outlier_rows : out.inlier_rows).push_back(i);
  }
  if (out.outlier_rows.size() >= out.inlier_rows.size()) {
    std::cerr << "warning: outlier class (" << out.outlier_rows.size()
              << " rows) is not smaller than inlier class ("
              << out.inlier_rows.size() << " rows)\n";
  }
  return out;
}

Centroid compute_centroid(const Dataset& data,
                          std::span<const std::size_t> rows, ClassTag tag) {
  if (rows.empty()) throw std::invalid_argument("centroid of empty row set");
  Centroid c{std::vector<double>(data.m(), 0.0), rows.size(), tag};
  for (std::size_t i : rows) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) c.values[j] += r[j];
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& v : c.values) v *= inv;
  return c;
}

std::vector<double> distinguishability_scores(const Centroid& c_out,
                                              const Centroid& c_in) {
  if (c_out.values.size() != c_in.values.size()) {
    throw std::invalid_argument("centroid length mismatch");
  }
  std::vector<double> s(c_out.values.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    s[j] = std::abs(c_out.values[j] - c_in.values[j]);
  }
  return s;
}

AttributeRank attribute_rank(std::span<const double> scores,
                             std::span<const std::string> names,
                             std::size_t t) {
  if (scores.size() != names.size()) {
    throw std::invalid_argument("score and name counts differ");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  std::vector<RankEntry> entries;
  entries.reserve(order.size());
  for (std::size_t j : order) entries.push_back({names[j], scores[j], j});
  return AttributeRank(std::move(entries), t);
}

AttributeScoreReport attribute_scores(const Dataset& data,
                                      std::span<const std::size_t> rows,
                                      const Centroid& c, DeviationMode mode) {
  if (rows.empty()) throw std::invalid_argument("attribute scores of no rows");
  if (c.values.size() != data.m()) {
    throw std::invalid_argument("centroid length does not match dataset");
  }
  AttributeScoreReport report{data.attribute_names(),
                              std::vector<double>(data.m(), 0.0), c.class_tag,
                              mode};
  for (std::size_t i : rows) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double d = r[j] - c.values[j];
      report.scores[j] += mode == DeviationMode::kSigned ? d : std::abs(d);
    }
  }
  for (double& s : report.scores) s /= static_cast<double>(rows.size());
  return report;
}

std::size_t cutoff_for(double t_fraction, std::size_t m) {
  if (!(t_fraction > 0.0)) {
    throw std::invalid_argument("t_fraction must be positive");
  }
  const auto t = static_cast<std::size_t>(
      std::floor(t_fraction * static_cast<double>(m)));
  return std::clamp<std::size_t>(t, 1, m);
}

namespace {

std::vector<std::size_t> sample_rows(std::vector<std::size_t> rows,
                                     double ratio, Rng& rng) {
  if (ratio >= 1.0) return rows;
  auto keep = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(rows.size())));
  keep = std::clamp<std::size_t>(keep, 1, rows.size());
  std::shuffle(rows.begin(), rows.end(), rng);
  rows.resize(keep);
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

AttributeRank fit_reducer(const Dataset& train,
                          const ReducerOptions& options) {
  if (!(options.label_ratio > 0.0 && options.label_ratio <= 1.0)) {
    throw std::invalid_argument("label ratio must lie in (0, 1]");
  }
  if (!train.is_normalized()) {
    throw std::invalid_argument("reducer requires normalized data");
  }
  auto parts = partition_labels(train);
  if (parts.outlier_rows.empty() || parts.inlier_rows.empty()) {
    throw DataError("reducer needs labeled rows of both classes");
  }
  Rng rng = make_rng(options.seed, 0xCE27);
  const auto outliers =
      sample_rows(std::move(parts.outlier_rows), options.label_ratio, rng);
  const auto inliers =
      sample_rows(std::move(parts.inlier_rows), options.label_ratio, rng);

  const Centroid c_out = compute_centroid(train, outliers, ClassTag::kOutlier);
  const Centroid c_in = compute_centroid(train, inliers, ClassTag::kInlier);
  const auto scores = distinguishability_scores(c_out, c_in);
  const std::size_t t =
      options.t != 0 ? options.t : cutoff_for(options.t_fraction, train.m());
  return attribute_rank(scores, train.attribute_names(), t);
}

Dataset transform(const Dataset& data, const AttributeRank& rank) {
  std::vector<std::size_t> cols;
  for (const auto& e : rank.selected()) {
    const auto j = data.column_index(e.attribute);
    if (!j) throw DataError("unknown attribute in rank: " + e.attribute);
    cols.push_back(*j);
  }
  std::sort(cols.begin(), cols.end());
  return data.select_columns(cols);
}

void write_rank_csv(const AttributeRank& rank, std::ostream& out) {
  csv::write_row(out, {"rank", "attribute", "distinguishability_score",
                       "selected"});
  for (std::size_t i = 0; i < rank.size(); ++i) {
    const auto& e = rank.entries()[i];
    csv::write_row(out, {std::to_string(i + 1), e.attribute,
                         csv::format_double(e.score),
                         i < rank.t() ? "1" : "0"});
  }
}

void write_rank_csv(const AttributeRank& rank,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  write_rank_csv(rank, out);
}

AttributeRank read_rank_csv(std::istream& in) {
  std::vector<csv::Row> rows;
  try {
    rows = csv::read_all(in);
  } catch (const std::exception& e) {
    throw DataError(std::string("malformed rank export: ") + e.what());
  }
  const csv::Row expected{"rank", "attribute", "distinguishability_score",
                          "selected"};
  if (rows.empty() || rows.front() != expected) {
    throw DataError("malformed rank export: bad header");
  }
  std::vector<RankEntry> entries;
  std::size_t t = 0;
  bool selection_ended = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = " on line " + std::to_string(i + 1);
    if (r.size() != 4) throw DataError("malformed rank export" + where);
    const auto rank = csv::parse_double(r[0]);
    const auto score = csv::parse_double(r[2]);
    if (!rank || *rank != static_cast<double>(i) || !score ||
        (r[3] != "0" && r[3] != "1")) {
      throw DataError("malformed rank export" + where);
    }
    if (r[3] == "1") {
      if (selection_ended) {
        throw DataError("malformed rank export: selected rows not a prefix");
      }
      ++t;
    } else {
      selection_ended = true;
    }
    entries.push_back({r[1], *score, i - 1});
  }
  try {
    return AttributeRank(std::move(entries), t);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed rank export: ") + e.what());
  }
}

AttributeRank read_rank_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  return read_rank_csv(in);
}

void write_attribute_scores_csv(const AttributeScoreReport& report,
                                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  csv::write_row(out, {"attribute", "score", "class", "mode"});
  const std::string mode =
      report.mode == DeviationMode::kSigned ? "signed" : "absolute";
  for (std::size_t j = 0; j < report.attributes.size(); ++j) {
    csv::write_row(out, {report.attributes[j],
                         csv::format_double(report.scores[j]),
                         std::string(class_tag_name(report.class_tag)), mode});
  }
}

}  // namespace outcentr
