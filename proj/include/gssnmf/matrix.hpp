/*
 * Copyright 2026 The gssnmf Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef GSSNMF_MATRIX_HPP_
#define GSSNMF_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gssnmf {

inline constexpr double kDefaultEps = 1e-12;

// Dense row-major matrix of doubles. Always at least 1x1.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  // Literal construction for tests and small fixtures; rows must be ragged-free.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::span<double> row(std::size_t i) noexcept {
    return std::span<double>(data_).subspan(i * cols_, cols_);
  }

  // "3x4"
  std::string shape() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

bool same_shape(const Matrix& a, const Matrix& b) noexcept;
bool all_finite(const Matrix& a) noexcept;
bool all_nonnegative(const Matrix& a) noexcept;

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, double factor);

// Elementwise numer / (denom + eps).
Matrix safe_divide(const Matrix& numer, const Matrix& denom, double eps = kDefaultEps);

// Sum of squared entries.
double frobenius_sq(const Matrix& a) noexcept;

// The listed columns of `a`, in the listed order.
Matrix column_block(const Matrix& a, std::span<const std::size_t> columns);

struct SvdSpectrum {
  std::vector<double> singular_values;  // descending, all >= 0
  std::size_t count_requested = 0;
};

// The `top` largest singular values of `a`, descending.
//
// One-sided Jacobi rotations are applied to the columns of whichever of a or
// a^T has fewer columns, which diagonalizes the smaller Gram matrix without
// forming it. Throws InputError when top is 0 or exceeds min(rows, cols).
SvdSpectrum singular_values(const Matrix& a, std::size_t top);

}  // namespace gssnmf

#endif  // GSSNMF_MATRIX_HPP_
