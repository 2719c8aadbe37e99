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

// Comparison reducers: principal component analysis and Gaussian random
// projection. Both map an m-attribute dataset to k synthetic attributes.

#ifndef OUTCENTR_BASELINES_H_
#define OUTCENTR_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "outcentr/dataset.h"
#include "outcentr/matrix.h"

namespace outcentr {

struct EigenDecomposition {
  // Sorted by descending eigenvalue.
  std::vector<double> values;
  // Row i is the unit eigenvector for values[i].
  Matrix vectors;
  int sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix. Stops when the Frobenius
// norm of the off-diagonal part drops below `tolerance` or after
// `max_sweeps` sweeps.
EigenDecomposition jacobi_eigen(const Matrix& symmetric,
                                double tolerance = 1e-10,
                                int max_sweeps = 100);

// Sample covariance (divisor n - 1) of the rows of `x`.
Matrix sample_covariance(const Matrix& x, std::vector<double>* mean = nullptr);

struct PcaModel {
  std::vector<double> mean;
  // k x m, orthonormal rows; each row's largest-magnitude entry is
  // positive.
  Matrix components;
  std::vector<double> explained_variance;

  std::size_t k() const { return components.rows(); }
  std::size_t m() const { return components.cols(); }
};

// Requires 1 <= k <= min(n - 1, m) and n >= 2.
PcaModel pca_fit(const Dataset& train, std::size_t k);
// (row - mean) * components^T; attributes pc1..pck.
Dataset pca_transform(const PcaModel& model, const Dataset& data);
// Maps projected rows back to attribute space; the inverse of
// pca_transform when k = m.
Matrix pca_reconstruct(const PcaModel& model, const Matrix& projected);

struct GrpModel {
  // k x m with entries ~ N(0, 1/k).
  Matrix projection;
  std::uint64_t seed = 0;
};

GrpModel grp_fit(std::size_t k, std::size_t m, std::uint64_t seed);
// Rows multiplied by the projection; attributes rp1..rpk.
Dataset grp_apply(const GrpModel& model, const Dataset& data);
Dataset grp_transform(const Dataset& data, std::size_t k, std::uint64_t seed);

// Flat text: a tag line followed by one whitespace-separated vector per
// line.
void save_model(const PcaModel& model, const std::filesystem::path& path);
void save_model(const GrpModel& model, const std::filesystem::path& path);
PcaModel load_pca_model(const std::filesystem::path& path);
GrpModel load_grp_model(const std::filesystem::path& path);

}  // namespace outcentr

#endif  // OUTCENTR_BASELINES_H_
