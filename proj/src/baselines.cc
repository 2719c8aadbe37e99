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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "outcentr/csv.h"
#include "outcentr/random.h"

namespace outcentr {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) acc += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(acc);
}

std::vector<std::string> numbered_names(const char* prefix, std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

std::optional<std::vector<int>> labels_of(const Dataset& d) {
  if (!d.has_labels()) return std::nullopt;
  return d.labels();
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix& symmetric, double tolerance,
                                int max_sweeps) {
  const std::size_t m = symmetric.rows();
  if (symmetric.cols() != m) throw std::invalid_argument("matrix not square");
  Matrix a = symmetric;
  Matrix v(m, m);
  for (std::size_t i = 0; i < m; ++i) v(i, i) = 1.0;

  int sweeps = 0;
  while (sweeps < max_sweeps && off_diagonal_norm(a) >= tolerance) {
    ++sweeps;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- A J
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        // A <- J^T A
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        // V <- V J
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x) > a(y, y);
  });
  EigenDecomposition out{{}, Matrix(m, m), sweeps};
  for (std::size_t r = 0; r < m; ++r) {
    out.values.push_back(a(order[r], order[r]));
    for (std::size_t k = 0; k < m; ++k) out.vectors(r, k) = v(k, order[r]);
  }
  return out;
}

Matrix sample_covariance(const Matrix& x, std::vector<double>* mean_out) {
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  if (n < 2) throw std::invalid_argument("covariance needs n >= 2");
  std::vector<double> mean(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) mean[j] += x(i, j);
  }
  for (double& v : mean) v /= static_cast<double>(n);

  Matrix cov(m, m);
  std::vector<double> centered(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) centered[j] = x(i, j) - mean[j];
    for (std::size_t p = 0; p < m; ++p) {
      const double cp = centered[p];
      if (cp == 0.0) continue;
      for (std::size_t q = p; q < m; ++q) cov(p, q) += cp * centered[q];
    }
  }
  const double inv = 1.0 / static_cast<double>(n - 1);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p; q < m; ++q) {
      cov(p, q) *= inv;
      cov(q, p) = cov(p, q);
    }
  }
  if (mean_out) *mean_out = std::move(mean);
  return cov;
}

PcaModel pca_fit(const Dataset& train, std::size_t k) {
  if (train.n() < 2) throw std::invalid_argument("pca needs n >= 2");
  if (k < 1 || k > std::min(train.n() - 1, train.m())) {
    throw std::invalid_argument("pca k=" + std::to_string(k) +
                                " outside [1, min(n-1, m)]");
  }
  PcaModel model;
  const Matrix cov = sample_covariance(train.values(), &model.mean);
  const auto eig = jacobi_eigen(cov);

  const std::size_t m = train.m();
  model.components = Matrix(k, m);
  for (std::size_t r = 0; r < k; ++r) {
    auto row = eig.vectors.row(r);
    std::size_t arg = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (std::abs(row[j]) > std::abs(row[arg])) arg = j;
    }
    const double sign = row[arg] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < m; ++j) model.components(r, j) = sign * row[j];
    // Round-off can leave tiny negative eigenvalues on singular covariances.
    model.explained_variance.push_back(std::max(0.0, eig.values[r]));
  }
  return model;
}

Dataset pca_transform(const PcaModel& model, const Dataset& data) {
  if (data.m() != model.m()) {
    throw std::invalid_argument("pca dimension mismatch: model m=" +
                                std::to_string(model.m()) + ", data m=" +
                                std::to_string(data.m()));
  }
  Matrix out(data.n(), model.k());
  std::vector<double> centered(model.m());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) centered[j] = r[j] - model.mean[j];
    for (std::size_t c = 0; c < model.k(); ++c) {
      const auto comp = model.components.row(c);
      out(i, c) = std::inner_product(centered.begin(), centered.end(),
                                     comp.begin(), 0.0);
    }
  }
  return Dataset(std::move(out), numbered_names("pc", model.k()),
                 labels_of(data));
}

Matrix pca_reconstruct(const PcaModel& model, const Matrix& projected) {
  if (projected.cols() != model.k()) {
    throw std::invalid_argument("projected width does not match k");
  }
  Matrix out(projected.rows(), model.m());
  for (std::size_t i = 0; i < projected.rows(); ++i) {
    for (std::size_t j = 0; j < model.m(); ++j) {
      double acc = model.mean[j];
      for (std::size_t c = 0; c < model.k(); ++c) {
        acc += projected(i, c) * model.components(c, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

GrpModel grp_fit(std::size_t k, std::size_t m, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("grp k must be >= 1");
  if (m < 1) throw std::invalid_argument("grp m must be >= 1");
  Rng rng = make_rng(seed, 0x6A9);
  std::normal_distribution<double> normal(
      0.0, 1.0 / std::sqrt(static_cast<double>(k)));
  GrpModel model{Matrix(k, m), seed};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) model.projection(i, j) = normal(rng);
  }
  return model;
}

Dataset grp_apply(const GrpModel& model, const Dataset& data) {
  const std::size_t k = model.projection.rows();
  if (data.m() != model.projection.cols()) {
    throw std::invalid_argument("grp dimension mismatch");
  }
  Matrix out(data.n(), k);
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto r = data.row(i);
    for (std::size_t c = 0; c < k; ++c) {
      const auto p = model.projection.row(c);
      out(i, c) = std::inner_product(r.begin(), r.end(), p.begin(), 0.0);
    }
  }
  return Dataset(std::move(out), numbered_names("rp", k), labels_of(data));
}

Dataset grp_transform(const Dataset& data, std::size_t k, std::uint64_t seed) {
  return grp_apply(grp_fit(k, data.m(), seed), data);
}

namespace {

void write_vector(std::ostream& out, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << csv::format_double(v[i]);
  }
  out << '\n';
}

std::vector<double> read_vector(std::istream& in, std::size_t expected) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("model file truncated");
  std::istringstream ss(line);
  std::vector<double> v;
  std::string tok;
  while (ss >> tok) {
    const auto d = csv::parse_double(tok);
    if (!d) throw DataError("bad number in model file: " + tok);
    v.push_back(*d);
  }
  if (v.size() != expected) throw DataError("model vector has wrong length");
  return v;
}

std::ifstream open_model(const std::filesystem::path& path,
                         const std::string& tag, std::size_t& k,
                         std::size_t& m, std::uint64_t* seed = nullptr) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model: " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream ss(header);
  std::string got;
  ss >> got >> k >> m;
  if (seed) ss >> *seed;
  if (!ss || got != tag) throw DataError("not a " + tag + " model file");
  return in;
}

}  // namespace

void save_model(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model: " + path.string());
  out << "pca " << model.k() << ' ' << model.m() << '\n';
  write_vector(out, model.mean);
  for (std::size_t c = 0; c < model.k(); ++c) {
    write_vector(out, model.components.row(c));
  }
  write_vector(out, model.explained_variance);
}

void save_model(const GrpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model: " + path.string());
  out << "grp " << model.projection.rows() << ' ' << model.projection.cols()
      << ' ' << model.seed << '\n';
  for (std::size_t c = 0; c < model.projection.rows(); ++c) {
    write_vector(out, model.projection.row(c));
  }
}

PcaModel load_pca_model(const std::filesystem::path& path) {
  std::size_t k = 0, m = 0;
  auto in = open_model(path, "pca", k, m);
  PcaModel model;
  model.mean = read_vector(in, m);
  model.components = Matrix(k, m);
  for (std::size_t c = 0; c < k; ++c) {
    const auto v = read_vector(in, m);
    std::copy(v.begin(), v.end(), model.components.row(c).begin());
  }
  model.explained_variance = read_vector(in, k);
  return model;
}

GrpModel load_grp_model(const std::filesystem::path& path) {
  std::size_t k = 0, m = 0;
  std::uint64_t seed = 0;
  auto in = open_model(path, "grp", k, m, &seed);
  GrpModel model{Matrix(k, m), seed};
  for (std::size_t c = 0; c < k; ++c) {
    const auto v = read_vector(in, m);
    std::copy(v.begin(), v.end(), model.projection.row(c).begin());
  }
  return model;
}

}  // namespace outcentr
