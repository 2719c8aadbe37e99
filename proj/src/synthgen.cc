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

#include "outcentr/synthgen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "outcentr/random.h"

namespace outcentr {

std::size_t SynthSpec::resolved_informative() const {
  if (n_informative != 0) return n_informative;
  return std::min(m, std::max<std::size_t>(2, m / 10));
}

std::size_t SynthSpec::outlier_count() const {
  const auto k = static_cast<std::size_t>(
      std::llround(contamination * static_cast<double>(n)));
  return std::max<std::size_t>(1, k);
}

void SynthSpec::validate() const {
  if (m < 1) throw std::invalid_argument("synth m must be >= 1");
  const std::size_t informative = resolved_informative();
  if (informative < 1 || informative > m) {
    throw std::invalid_argument("n_informative must lie in [1, m]");
  }
  if (!(contamination > 0.0 && contamination < 1.0)) {
    throw std::invalid_argument("synth contamination must lie in (0, 1)");
  }
  if (contamination * static_cast<double>(n) < 1.0) {
    throw std::invalid_argument("contamination * n must be >= 1");
  }
  if (outlier_count() >= n) {
    throw std::invalid_argument("synth needs at least one inlier");
  }
  if (!(separation >= 0.0) || !std::isfinite(separation)) {
    throw std::invalid_argument("separation must be finite and >= 0");
  }
}

SynthData generate(const SynthSpec& spec) {
  spec.validate();
  const std::size_t informative = spec.resolved_informative();
  const std::size_t outliers = spec.outlier_count();
  Rng rng = make_rng(spec.seed, 0x5A7);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> direction(informative);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& d : direction) {
      d = normal(rng);
      norm += d * d;
    }
    norm = std::sqrt(norm);
  } while (norm == 0.0);
  for (double& d : direction) d /= norm;

  // Column c of the output holds generated attribute column_of[c]; the
  // first `informative` generated attributes are the informative ones.
  std::vector<std::size_t> column_of(spec.m);
  std::iota(column_of.begin(), column_of.end(), 0);
  std::shuffle(column_of.begin(), column_of.end(), rng);

  std::vector<int> labels(spec.n, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(outliers), 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  std::vector<double> generated(spec.m);
  Matrix values(spec.n, spec.m);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t a = 0; a < spec.m; ++a) {
      generated[a] = normal(rng);
      if (labels[i] == 1 && a < informative) {
        generated[a] += spec.separation * direction[a];
      }
    }
    for (std::size_t c = 0; c < spec.m; ++c) {
      values(i, c) = generated[column_of[c]];
    }
  }

  std::vector<std::string> names;
  SynthData out;
  for (std::size_t c = 0; c < spec.m; ++c) {
    names.push_back("a" + std::to_string(c + 1));
    if (column_of[c] < informative) out.informative.push_back(c);
  }
  out.data = Dataset(std::move(values), std::move(names), std::move(labels));
  return out;
}

void write_synth(const SynthData& synth, const std::filesystem::path& dir,
                 const std::string& stem) {
  std::filesystem::create_directories(dir);
  write_csv(synth.data, dir / (stem + ".csv"), "target");
  std::ofstream out(dir / (stem + ".informative.txt"));
  if (!out) throw std::runtime_error("cannot write informative index file");
  for (std::size_t j : synth.informative) out << j << '\n';
}

}  // namespace outcentr
