// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace phi {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Mat identity(std::size_t n);
  /// Builds from nested rows; all rows must have the same length.
  static Mat from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  Vec column(std::size_t c) const;
  void set_zero();

  bool same_shape(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Seeded pseudo-random stream. Never shared between workers; use fork().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  double normal();
  /// Independent child stream, e.g. one per worker.
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

double sigmoid(double x);

/// Numerically stable softmax. Throws std::invalid_argument on empty input.
Vec softmax(std::span<const double> v);

/// m * v. Throws std::invalid_argument on dimension mismatch.
Vec matvec(const Mat& m, std::span<const double> v);
/// m^T * v.
Vec matvec_transposed(const Mat& m, std::span<const double> v);
/// out += m * v
void matvec_add(const Mat& m, std::span<const double> v, std::span<double> out);
/// out += m^T * v
void matvec_transposed_add(const Mat& m, std::span<const double> v, std::span<double> out);
/// m += scale * a b^T
void add_outer(Mat& m, std::span<const double> a, std::span<const double> b, double scale = 1.0);

double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
Vec add(std::span<const double> a, std::span<const double> b);
Vec hadamard(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> v);
bool all_finite(std::span<const double> v);

/// Matrix with entries uniform in [-scale, scale]. scale must be >= 0.
Mat init_params(Rng& rng, std::size_t rows, std::size_t cols, double scale);

}  // namespace phi
