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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vfkt::numerics {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Zero-sized matrices are allowed as
// intermediate values; domain types enforce their own non-emptiness.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix Identity(std::size_t n);
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix ColumnVector(std::span<const double> values);
  static Matrix RowVector(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Vector Column(std::size_t j) const;
  void SetColumn(std::size_t j, std::span<const double> values);
  Matrix Transposed() const;
  bool AllFinite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double scale);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double scale, Matrix m);

// a * b.
Matrix MatMul(const Matrix& a, const Matrix& b);
// a^T * b.
Matrix MatMulTN(const Matrix& a, const Matrix& b);
// a * b^T.
Matrix MatMulNT(const Matrix& a, const Matrix& b);
Vector MatVec(const Matrix& a, std::span<const double> x);
// a^T * x.
Vector MatTVec(const Matrix& a, std::span<const double> x);

Matrix HConcat(std::span<const Matrix> blocks);
Matrix VConcat(std::span<const Matrix> blocks);
Matrix HConcat(const Matrix& left, const Matrix& right);
Matrix VConcat(const Matrix& top, const Matrix& bottom);
Matrix SliceCols(const Matrix& m, std::size_t begin, std::size_t end);
Matrix SliceRows(const Matrix& m, std::size_t begin, std::size_t end);
Matrix SelectRows(const Matrix& m, std::span<const std::size_t> indices);
Matrix SelectCols(const Matrix& m, std::span<const std::size_t> indices);
Matrix Diagonal(std::span<const double> values);
Matrix Hadamard(const Matrix& a, const Matrix& b);

double FrobeniusNorm(const Matrix& m);
double MaxAbs(const Matrix& m);
double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> v);
// ||a^T a - I||_F for a matrix whose columns should be orthonormal.
double OrthonormalityResidual(const Matrix& a);

}  // namespace vfkt::numerics
