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

#include "outcentr/baselines.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

namespace outcentr {
namespace {

Dataset gaussian(std::size_t n, std::size_t m, std::uint64_t seed,
                 double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  Matrix x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = g(rng);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) names.push_back("a" + std::to_string(j + 1));
  return Dataset(std::move(x), std::move(names));
}

// A random dataset with a non-trivial covariance: gaussian rows times a
// random mixing matrix.
Dataset correlated(std::size_t n, std::size_t m, std::uint64_t seed) {
  const auto base = gaussian(n, m, seed);
  const auto mix = gaussian(m, m, seed + 1000);
  Matrix x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l) x(i, j) += base(i, l) * mix(l, j);
  return Dataset(std::move(x), base.attribute_names());
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

TEST(Jacobi, DiagonalizesSymmetricMatrix) {
  const auto a = Matrix::from_rows({{4, 1, 2}, {1, 3, 0}, {2, 0, 5}});
  const auto eig = jacobi_eigen(a);
  ASSERT_EQ(eig.values.size(), 3u);
  EXPECT_GE(eig.values[0], eig.values[1]);
  EXPECT_GE(eig.values[1], eig.values[2]);
  EXPECT_NEAR(eig.values[0] + eig.values[1] + eig.values[2], 12.0, 1e-10);
  for (std::size_t r = 0; r < 3; ++r) {
    const auto v = eig.vectors.row(r);
    for (std::size_t i = 0; i < 3; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < 3; ++j) av += a(i, j) * v[j];
      EXPECT_NEAR(av, eig.values[r] * v[i], 1e-8);
    }
  }
}

TEST(Jacobi, RejectsNonSquare) {
  EXPECT_THROW(jacobi_eigen(Matrix(2, 3)), std::invalid_argument);
}

TEST(Pca, RecoversLineDirection) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    rows.push_back({t + 0.01 * u(rng), t + 0.01 * u(rng)});
  }
  const Dataset d(Matrix::from_rows(rows), {"x", "y"});
  const auto model = pca_fit(d, 1);
  const double c = model.components(0, 0) + model.components(0, 1);
  EXPECT_GT(std::abs(c) / std::sqrt(2.0), 0.99);
}

TEST(Pca, IsotropicVariances) {
  const auto model = pca_fit(gaussian(10000, 3, 8, 2.0), 3);
  for (double v : model.explained_variance) {
    EXPECT_NEAR(v, 4.0, 0.2 * 4.0);
  }
}

TEST(Pca, FullRankVarianceEqualsTrace) {
  const auto d = correlated(300, 6, 2);
  const auto cov = sample_covariance(d.values());
  double trace = 0.0;
  for (std::size_t j = 0; j < 6; ++j) trace += cov(j, j);
  const auto model = pca_fit(d, 6);
  double sum = 0.0;
  for (double v : model.explained_variance) sum += v;
  EXPECT_NEAR(sum, trace, 1e-6);
}

class PcaProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PcaProperties, OrthonormalEigenDecorrelating) {
  const std::uint64_t seed = GetParam();
  std::mt19937_64 rng(seed);
  const std::size_t m = 2 + rng() % 8;
  const std::size_t n = m + 5 + rng() % 100;
  const std::size_t k = 1 + rng() % m;
  const auto d = correlated(n, m, seed);
  const auto model = pca_fit(d, k);
  const auto cov = sample_covariance(d.values());

  for (std::size_t a = 0; a < k; ++a) {
    const auto va = model.components.row(a);
    for (std::size_t b = 0; b < k; ++b) {
      EXPECT_NEAR(dot(va, model.components.row(b)), a == b ? 1.0 : 0.0, 1e-6);
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double cv = 0.0;
      for (std::size_t j = 0; j < m; ++j) cv += cov(i, j) * va[j];
      residual += std::pow(cv - model.explained_variance[a] * va[i], 2);
    }
    EXPECT_LT(std::sqrt(residual), 1e-8);
    // Largest-magnitude entry is positive.
    std::size_t big = 0;
    for (std::size_t j = 1; j < m; ++j)
      if (std::abs(va[j]) > std::abs(va[big])) big = j;
    EXPECT_GT(va[big], 0.0);
  }
  for (std::size_t a = 1; a < k; ++a) {
    EXPECT_GE(model.explained_variance[a - 1], model.explained_variance[a]);
  }

  const auto projected = pca_transform(model, d);
  const auto pcov = sample_covariance(projected.values());
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b) EXPECT_LT(std::abs(pcov(a, b)), 1e-6);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(RandomSeeds, PcaProperties,
                         ::testing::Range<std::uint64_t>(0, 30));

TEST(Pca, MeanMapsToOriginAndFullRankRoundTrips) {
  const auto d = correlated(120, 5, 6);
  const auto model = pca_fit(d, 5);
  const Dataset mean_row(Matrix::from_rows({model.mean}), d.attribute_names());
  const auto origin = pca_transform(model, mean_row);
  for (double v : origin.row(0)) EXPECT_NEAR(v, 0.0, 1e-12);

  const auto projected = pca_transform(model, d);
  EXPECT_EQ(projected.attribute_names().front(), "pc1");
  const auto back = pca_reconstruct(model, projected.values());
  for (std::size_t i = 0; i < d.n(); ++i) {
    double norm_x = 0.0, norm_p = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(back(i, j), d(i, j), 1e-6);
      norm_x += std::pow(d(i, j) - model.mean[j], 2);
      norm_p += std::pow(projected(i, j), 2);
    }
    EXPECT_NEAR(norm_x, norm_p, 1e-6 * (1.0 + norm_x));
  }
}

TEST(Pca, ComponentCountBounds) {
  const auto d = gaussian(5, 8, 1);
  EXPECT_NO_THROW(pca_fit(d, 4));
  EXPECT_THROW(pca_fit(d, 5), std::invalid_argument);
  EXPECT_THROW(pca_fit(d, 0), std::invalid_argument);
  EXPECT_THROW(pca_fit(gaussian(1, 3, 1), 1), std::invalid_argument);
  const auto model = pca_fit(d, 2);
  EXPECT_THROW(pca_transform(model, gaussian(5, 7, 1)), std::invalid_argument);
}

TEST(Grp, EntryVarianceAndDeterminism) {
  const auto a = grp_fit(50, 400, 9);
  const auto b = grp_fit(50, 400, 9);
  EXPECT_EQ(a.projection, b.projection);
  EXPECT_NE(a.projection, grp_fit(50, 400, 10).projection);
  double sq = 0.0;
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 400; ++j) sq += a.projection(i, j) * a.projection(i, j);
  EXPECT_NEAR(sq / (50.0 * 400.0), 1.0 / 50.0, 0.1 / 50.0);
}

TEST(Grp, LinearAndMapsZeroToZero) {
  const auto model = grp_fit(4, 6, 3);
  const auto x = gaussian(2, 6, 11);
  Matrix combo(3, 6);
  for (std::size_t j = 0; j < 6; ++j) {
    combo(0, j) = 0.0;
    combo(1, j) = x(0, j);
    combo(2, j) = 2.5 * x(0, j) - 1.5 * x(1, j);
  }
  const auto y = grp_apply(model, Dataset(combo, x.attribute_names()));
  const auto yx = grp_apply(model, x);
  EXPECT_EQ(y.attribute_names(), (std::vector<std::string>{"rp1", "rp2", "rp3", "rp4"}));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(y(0, j), 0.0);
    EXPECT_NEAR(y(1, j), yx(0, j), 1e-12);
    EXPECT_NEAR(y(2, j), 2.5 * yx(0, j) - 1.5 * yx(1, j), 1e-12);
  }
}

TEST(Grp, PreservesPairwiseDistances) {
  const auto x = gaussian(100, 500, 13);
  const auto y = grp_transform(x, 400, 21);
  std::size_t within = 0, total = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    for (std::size_t l = i + 1; l < 100; ++l) {
      const double dx = distance(Metric::kEuclidean, x.row(i), x.row(l));
      const double dy = distance(Metric::kEuclidean, y.row(i), y.row(l));
      const double ratio = dy * dy / (dx * dx);
      within += (ratio > 0.7 && ratio < 1.3) ? 1 : 0;
      ++total;
    }
  }
  EXPECT_GE(static_cast<double>(within) / total, 0.95);
}

TEST(Models, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "outcentr_baselines_test";
  std::filesystem::create_directories(dir);
  const auto pca = pca_fit(correlated(40, 4, 3), 3);
  save_model(pca, dir / "pca.txt");
  const auto pca_back = load_pca_model(dir / "pca.txt");
  EXPECT_EQ(pca_back.mean, pca.mean);
  EXPECT_EQ(pca_back.components, pca.components);
  EXPECT_EQ(pca_back.explained_variance, pca.explained_variance);

  const auto grp = grp_fit(3, 7, 44);
  save_model(grp, dir / "grp.txt");
  const auto grp_back = load_grp_model(dir / "grp.txt");
  EXPECT_EQ(grp_back.projection, grp.projection);
  EXPECT_EQ(grp_back.seed, 44u);
  EXPECT_THROW(load_pca_model(dir / "grp.txt"), DataError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace outcentr
