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

// Imbalance-aware evaluation. The positive class is the outlier (label 1).

#ifndef OUTCENTR_METRICS_H_
#define OUTCENTR_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>

namespace outcentr {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const Confusion&) const = default;
};

struct MetricSet {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;
  std::size_t support_outliers = 0;
};

Confusion confusion(std::span<const int> flags, std::span<const int> labels);

// Zero denominators give 0.
MetricSet prf1(const Confusion& c);

// Probability that a random positive outscores a random negative, ties
// counting one half. Sort-and-rank implementation; throws unless both
// classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

// prf1 of the flags plus roc_auc of the scores.
MetricSet evaluate(std::span<const double> scores, std::span<const int> flags,
                   std::span<const int> labels);

}  // namespace outcentr

#endif  // OUTCENTR_METRICS_H_
