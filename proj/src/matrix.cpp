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
#include "gssnmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "gssnmf/error.hpp"

namespace gssnmf {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (!same_shape(a, b)) {
    throw DimensionError(fmt::format("{}: shape mismatch {} vs {}", op, a.shape(), b.shape()));
  }
}

template <typename Fn>
Matrix zip(const Matrix& a, const Matrix& b, const char* op, Fn fn) {
  require_same_shape(a, b, op);
  Matrix out(a.rows(), a.cols());
  auto x = a.data();
  auto y = b.data();
  auto z = out.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = fn(x[i], y[i]);
  return out;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError(fmt::format("matrix dimensions must be positive, got {}x{}", rows, cols));
  }
  data_.assign(rows * cols, fill);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError(fmt::format("matrix dimensions must be positive, got {}x{}", rows, cols));
  }
  if (data_.size() != rows * cols) {
    throw DimensionError(
        fmt::format("{}x{} matrix needs {} values, got {}", rows, cols, rows * cols, data_.size()));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::string Matrix::shape() const { return fmt::format("{}x{}", rows_, cols_); }

bool same_shape(const Matrix& a, const Matrix& b) noexcept {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

bool all_finite(const Matrix& a) noexcept {
  return std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); });
}

bool all_nonnegative(const Matrix& a) noexcept {
  return std::all_of(a.data().begin(), a.data().end(), [](double v) { return v >= 0.0; });
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError(fmt::format("matmul: cannot multiply {} by {}", a.shape(), b.shape()));
  }
  Matrix c(a.rows(), b.cols());
  // i-k-j order keeps the inner loop contiguous in both b and c.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  return zip(a, b, "hadamard", std::multiplies<double>());
}

Matrix add(const Matrix& a, const Matrix& b) { return zip(a, b, "add", std::plus<double>()); }

Matrix subtract(const Matrix& a, const Matrix& b) {
  return zip(a, b, "subtract", std::minus<double>());
}

Matrix scaled(const Matrix& a, double factor) {
  Matrix out = a;
  for (double& v : out.data()) v *= factor;
  return out;
}

Matrix safe_divide(const Matrix& numer, const Matrix& denom, double eps) {
  if (!(eps > 0.0)) throw InputError("safe_divide: eps must be positive");
  return zip(numer, denom, "safe_divide", [eps](double n, double d) { return n / (d + eps); });
}

double frobenius_sq(const Matrix& a) noexcept {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return s;
}

Matrix column_block(const Matrix& a, std::span<const std::size_t> columns) {
  if (columns.empty()) throw DimensionError("column_block: no columns selected");
  Matrix out(a.rows(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= a.cols()) {
      throw DimensionError(
          fmt::format("column_block: column {} out of range for {}", columns[j], a.shape()));
    }
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, columns[j]);
  }
  return out;
}

SvdSpectrum singular_values(const Matrix& a, std::size_t top) {
  const std::size_t limit = std::min(a.rows(), a.cols());
  if (top == 0 || top > limit) {
    throw InputError(
        fmt::format("singular_values: top={} outside [1, {}] for {}", top, limit, a.shape()));
  }
  // Column-major copy of the orientation with fewer columns.
  const bool use_transpose = a.cols() > a.rows();
  const std::size_t len = use_transpose ? a.cols() : a.rows();
  const std::size_t ncols = limit;
  std::vector<std::vector<double>> cols(ncols, std::vector<double>(len));
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < len; ++i) cols[j][i] = use_transpose ? a(j, i) : a(i, j);
  }

  constexpr double kTol = 1e-15;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < ncols; ++p) {
      for (std::size_t q = p + 1; q < ncols; ++q) {
        auto& up = cols[p];
        auto& uq = cols[q];
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
          alpha += up[i] * up[i];
          beta += uq[i] * uq[i];
          gamma += up[i] * uq[i];
        }
        if (gamma == 0.0 || std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < len; ++i) {
          const double x = up[i];
          const double y = uq[i];
          up[i] = c * x - s * y;
          uq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    double s = 0.0;
    for (double v : cols[j]) s += v * v;
    sigma[j] = std::sqrt(s);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  sigma.resize(top);
  return SvdSpectrum{std::move(sigma), top};
}

}  // namespace gssnmf
