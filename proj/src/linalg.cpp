// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phi {

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(got) + " vs " + std::to_string(want) + ")");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Mat m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_length(rows[r].size(), m.cols(), "Mat::from_rows");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * m.cols());
  }
  return m;
}

Vec Mat::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("Mat::column: index out of range");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
  return out;
}

void Mat::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // Rejection sampling keeps the draw unbiased and platform independent.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

double Rng::normal() {
  // Box-Muller; std::normal_distribution differs across standard libraries.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Rng Rng::fork(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vec softmax(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("softmax: empty vector");
  const double mx = *std::max_element(v.begin(), v.end());
  Vec out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - mx);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

Vec matvec(const Mat& m, std::span<const double> v) {
  Vec out(m.rows(), 0.0);
  matvec_add(m, v, out);
  return out;
}

Vec matvec_transposed(const Mat& m, std::span<const double> v) {
  Vec out(m.cols(), 0.0);
  matvec_transposed_add(m, v, out);
  return out;
}

void matvec_add(const Mat& m, std::span<const double> v, std::span<double> out) {
  require_length(v.size(), m.cols(), "matvec");
  require_length(out.size(), m.rows(), "matvec");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * v[c];
    out[r] += acc;
  }
}

void matvec_transposed_add(const Mat& m, std::span<const double> v, std::span<double> out) {
  require_length(v.size(), m.rows(), "matvec_transposed");
  require_length(out.size(), m.cols(), "matvec_transposed");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double s = v[r];
    if (s == 0.0) continue;
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c] * s;
  }
}

void add_outer(Mat& m, std::span<const double> a, std::span<const double> b, double scale) {
  require_length(a.size(), m.rows(), "add_outer");
  require_length(b.size(), m.cols(), "add_outer");
  auto data = m.data();
  for (std::size_t r = 0; r < a.size(); ++r) {
    const double s = a[r] * scale;
    if (s == 0.0) continue;
    double* row = data.data() + r * m.cols();
    for (std::size_t c = 0; c < b.size(); ++c) row[c] += s * b[c];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_length(b.size(), a.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_length(y.size(), x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vec add(std::span<const double> a, std::span<const double> b) {
  require_length(b.size(), a.size(), "add");
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vec hadamard(std::span<const double> a, std::span<const double> b) {
  require_length(b.size(), a.size(), "hadamard");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double sum_squares(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Mat init_params(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
  if (!(scale >= 0.0)) throw std::invalid_argument("init_params: scale must be non-negative");
  Mat m(rows, cols);
  for (double& x : m.data()) x = rng.uniform(-scale, scale);
  return m;
}

}  // namespace phi
