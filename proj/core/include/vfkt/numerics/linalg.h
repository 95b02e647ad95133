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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vfkt/numerics/matrix.h"

namespace vfkt::numerics {

struct SvdResult {
  Matrix u;             // m x r, orthonormal columns
  std::vector<double> sigma;  // length r, descending, non-negative
  Matrix v;             // n x r, orthonormal columns
  int sweeps = 0;
};

struct SvdOptions {
  int max_sweeps = 60;
  // Converged once the off-diagonal norm of W^T W drops below
  // tolerance * ||M||_F^2.
  double tolerance = 1e-12;
};

// Thin SVD, r = min(m, n), by one-sided (Hestenes) Jacobi rotations.
// Each u-column is sign-canonicalized so that its largest-magnitude entry is
// positive; the matching v-column is flipped with it. Columns of u belonging
// to numerically zero singular values are completed to an orthonormal set.
// Throws Error(kNotConverged) when the sweep cap is reached.
SvdResult Svd(const Matrix& m, const SvdOptions& options = {});

// Flips each column of u (and v, when non-null) so that the largest-magnitude
// entry of the u column is positive. Ties resolve to the lowest row index.
void CanonicalizeColumnSigns(Matrix& u, Matrix* v = nullptr);

struct QrResult {
  Matrix q;  // m x n, orthonormal columns
  Matrix r;  // n x n, upper triangular
};

// Thin Householder QR of an m x n matrix with m >= n.
QrResult HouseholderQr(const Matrix& a);

// Haar-distributed n x n orthogonal matrix: QR of a standard-normal matrix
// with the sign of each R diagonal entry folded into Q.
//
// With block_size in (0, n) the result is block-diagonal with independent
// Haar blocks of that size (the last block takes the remainder). Still
// orthogonal, and O(n * block_size^2) to generate.
Matrix RandomOrthogonal(std::size_t n, std::uint64_t seed, std::size_t block_size = 0);

using LinearOperator = std::function<Vector(std::span<const double>)>;

struct PowerIterationResult {
  Vector eigvec;     // unit 2-norm
  double eigval = 0.0;
  // Rayleigh quotient after each iteration.
  std::vector<double> history;
  // The operator annihilated the iterate (zero matrix, or init in its null
  // space); eigval is 0 and eigvec is the normalized init.
  bool zero_operator = false;
  // The dominant eigenvalue appears repeated, so the eigvec is not unique.
  bool non_unique = false;
};

// Power iteration with the Rayleigh-quotient eigenvalue estimate
//   a_l = A a_{l-1} / ||A a_{l-1}||,  delta_l = a_l^T A a_l / a_l^T a_l.
// `a` must be symmetric positive semi-definite for the result to be the
// dominant eigenpair. `init` must be non-zero.
PowerIterationResult PowerIteration(const Matrix& a, int iterations, std::span<const double> init);
PowerIterationResult PowerIteration(const LinearOperator& a, std::size_t dim, int iterations,
                                    std::span<const double> init);

// Row-wise softmax with max subtraction.
Matrix SoftmaxRows(const Matrix& m);

}  // namespace vfkt::numerics
