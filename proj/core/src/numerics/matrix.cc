// Copyright 2026 The vfkt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vfkt/numerics/matrix.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "vfkt/error.h"

namespace vfkt::numerics {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

ConstMap View(const Matrix& m) {
  return ConstMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

MutMap View(Matrix& m) {
  return MutMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                static_cast<Eigen::Index>(m.cols()));
}

void CheckSameShape(const Matrix& a, const Matrix& b, const char* op) {
  VFKT_ENFORCE(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kDimensionMismatch,
               "{}: shape {}x{} vs {}x{}", op, a.rows(), a.cols(), b.rows(), b.cols());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  VFKT_ENFORCE(data_.size() == rows * cols, ErrorCode::kDimensionMismatch,
               "matrix {}x{} given {} values", rows, cols, data_.size());
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(n_rows * n_cols);
  for (const auto& r : rows) {
    VFKT_ENFORCE(r.size() == n_cols, ErrorCode::kDimensionMismatch,
                 "ragged row: expected {} values, got {}", n_cols, r.size());
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(n_rows, n_cols, std::move(data));
}

Matrix Matrix::ColumnVector(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::RowVector(std::span<const double> values) {
  return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

Vector Matrix::Column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::SetColumn(std::size_t j, std::span<const double> values) {
  VFKT_ENFORCE(values.size() == rows_, ErrorCode::kDimensionMismatch,
               "column of length {} for {} rows", values.size(), rows_);
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  CheckSameShape(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  CheckSameShape(*this, other, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double scale, Matrix m) { return m *= scale; }

Matrix MatMul(const Matrix& a, const Matrix& b) {
  VFKT_ENFORCE(a.cols() == b.rows(), ErrorCode::kDimensionMismatch,
               "matmul: {}x{} * {}x{}", a.rows(), a.cols(), b.rows(), b.cols());
  Matrix out(a.rows(), b.cols());
  if (out.empty() || a.cols() == 0) return out;
  View(out).noalias() = View(a) * View(b);
  return out;
}

Matrix MatMulTN(const Matrix& a, const Matrix& b) {
  VFKT_ENFORCE(a.rows() == b.rows(), ErrorCode::kDimensionMismatch,
               "matmul_tn: ({}x{})^T * {}x{}", a.rows(), a.cols(), b.rows(), b.cols());
  Matrix out(a.cols(), b.cols());
  if (out.empty() || a.rows() == 0) return out;
  View(out).noalias() = View(a).transpose() * View(b);
  return out;
}

Matrix MatMulNT(const Matrix& a, const Matrix& b) {
  VFKT_ENFORCE(a.cols() == b.cols(), ErrorCode::kDimensionMismatch,
               "matmul_nt: {}x{} * ({}x{})^T", a.rows(), a.cols(), b.rows(), b.cols());
  Matrix out(a.rows(), b.rows());
  if (out.empty() || a.cols() == 0) return out;
  View(out).noalias() = View(a) * View(b).transpose();
  return out;
}

Vector MatVec(const Matrix& a, std::span<const double> x) {
  VFKT_ENFORCE(a.cols() == x.size(), ErrorCode::kDimensionMismatch,
               "matvec: {}x{} * vector of {}", a.rows(), a.cols(), x.size());
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = Dot(a.row(i), x);
  return out;
}

Vector MatTVec(const Matrix& a, std::span<const double> x) {
  VFKT_ENFORCE(a.rows() == x.size(), ErrorCode::kDimensionMismatch,
               "matvec_t: ({}x{})^T * vector of {}", a.rows(), a.cols(), x.size());
  Vector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += r[j] * x[i];
  }
  return out;
}

Matrix HConcat(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    VFKT_ENFORCE(b.rows() == rows, ErrorCode::kDimensionMismatch,
                 "hconcat: block with {} rows, expected {}", b.rows(), rows);
    cols += b.cols();
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto dst = out.row(i).begin();
    for (const auto& b : blocks) dst = std::copy(b.row(i).begin(), b.row(i).end(), dst);
  }
  return out;
}

Matrix VConcat(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::vector<double> data;
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    VFKT_ENFORCE(b.cols() == cols, ErrorCode::kDimensionMismatch,
                 "vconcat: block with {} cols, expected {}", b.cols(), cols);
    data.insert(data.end(), b.data().begin(), b.data().end());
    rows += b.rows();
  }
  return Matrix(rows, cols, std::move(data));
}

Matrix HConcat(const Matrix& left, const Matrix& right) {
  const Matrix blocks[] = {left, right};
  return HConcat(blocks);
}

Matrix VConcat(const Matrix& top, const Matrix& bottom) {
  const Matrix blocks[] = {top, bottom};
  return VConcat(blocks);
}

Matrix SliceCols(const Matrix& m, std::size_t begin, std::size_t end) {
  VFKT_ENFORCE(begin <= end && end <= m.cols(), ErrorCode::kDimensionMismatch,
               "column slice [{}, {}) of {} columns", begin, end, m.cols());
  Matrix out(m.rows(), end - begin);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::copy(m.row(i).begin() + static_cast<std::ptrdiff_t>(begin),
              m.row(i).begin() + static_cast<std::ptrdiff_t>(end), out.row(i).begin());
  }
  return out;
}

Matrix SliceRows(const Matrix& m, std::size_t begin, std::size_t end) {
  VFKT_ENFORCE(begin <= end && end <= m.rows(), ErrorCode::kDimensionMismatch,
               "row slice [{}, {}) of {} rows", begin, end, m.rows());
  const auto first = m.data().begin() + static_cast<std::ptrdiff_t>(begin * m.cols());
  const auto last = m.data().begin() + static_cast<std::ptrdiff_t>(end * m.cols());
  return Matrix(end - begin, m.cols(), std::vector<double>(first, last));
}

Matrix SelectRows(const Matrix& m, std::span<const std::size_t> indices) {
  Matrix out(indices.size(), m.cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    VFKT_ENFORCE(indices[k] < m.rows(), ErrorCode::kDimensionMismatch,
                 "row index {} out of range ({} rows)", indices[k], m.rows());
    std::copy(m.row(indices[k]).begin(), m.row(indices[k]).end(), out.row(k).begin());
  }
  return out;
}

Matrix SelectCols(const Matrix& m, std::span<const std::size_t> indices) {
  for (std::size_t j : indices) {
    VFKT_ENFORCE(j < m.cols(), ErrorCode::kDimensionMismatch,
                 "column index {} out of range ({} cols)", j, m.cols());
  }
  Matrix out(m.rows(), indices.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < indices.size(); ++k) out(i, k) = m(i, indices[k]);
  }
  return out;
}

Matrix Diagonal(std::span<const double> values) {
  Matrix out(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  return out;
}

Matrix Hadamard(const Matrix& a, const Matrix& b) {
  CheckSameShape(a, b, "hadamard");
  Matrix out = a;
  auto dst = out.data();
  auto src = b.data();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] *= src[k];
  return out;
}

double FrobeniusNorm(const Matrix& m) { return Norm2(m.data()); }

double MaxAbs(const Matrix& m) {
  double best = 0.0;
  for (double v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  VFKT_ENFORCE(a.size() == b.size(), ErrorCode::kDimensionMismatch,
               "dot of lengths {} and {}", a.size(), b.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

double Norm2(std::span<const double> v) {
  // Scaled accumulation so that huge or tiny entries do not over/underflow.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double x : v) {
    const double y = x / scale;
    sum += y * y;
  }
  return scale * std::sqrt(sum);
}

double OrthonormalityResidual(const Matrix& a) {
  Matrix gram = MatMulTN(a, a);
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
  return FrobeniusNorm(gram);
}

}  // namespace vfkt::numerics
