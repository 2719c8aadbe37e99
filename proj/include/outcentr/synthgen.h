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

// Labeled synthetic datasets for controlled experiments.
//
// Inliers are N(0, I) in an n_informative-dimensional subspace; outliers
// are N(separation * u, I) there, with u a seeded random unit vector. The
// remaining attributes are N(0, 1) noise for both classes. Columns and rows
// are shuffled, so the informative attributes sit at random positions.

#ifndef OUTCENTR_SYNTHGEN_H_
#define OUTCENTR_SYNTHGEN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "outcentr/dataset.h"

namespace outcentr {

struct SynthSpec {
  std::size_t n = 1000;
  std::size_t m = 50;
  double contamination = 0.05;
  // 0 selects the default max(2, m / 10), capped at m.
  std::size_t n_informative = 0;
  // Distance between class centers in within-class standard deviations.
  double separation = 4.0;
  std::uint64_t seed = 0;

  std::size_t resolved_informative() const;
  // round(contamination * n), at least 1.
  std::size_t outlier_count() const;
  void validate() const;
};

struct SynthData {
  Dataset data;
  // Sorted column indices of the informative attributes.
  std::vector<std::size_t> informative;
};

SynthData generate(const SynthSpec& spec);

// Writes <dir>/<stem>.csv (label column "target") and
// <dir>/<stem>.informative.txt with one column index per line.
void write_synth(const SynthData& synth, const std::filesystem::path& dir,
                 const std::string& stem);

}  // namespace outcentr

#endif  // OUTCENTR_SYNTHGEN_H_
