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

#include "vfkt/numerics/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double DotRaw(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void Rotate(double* p, double* q, std::size_t n, double c, double s) {
  for (std::size_t k = 0; k < n; ++k) {
    const double x = p[k];
    const double y = q[k];
    p[k] = c * x - s * y;
    q[k] = s * x + c * y;
  }
}

// Fills columns of `u` listed in `missing` so that all columns are
// orthonormal. Candidates are the standard basis vectors, orthogonalized
// twice against every column already in place.
void CompleteOrthonormal(Matrix& u, const std::vector<bool>& missing) {
  const std::size_t m = u.rows();
  const std::size_t r = u.cols();
  std::vector<bool> filled(r);
  for (std::size_t j = 0; j < r; ++j) filled[j] = !missing[j];
  std::size_t next_basis = 0;
  for (std::size_t j = 0; j < r; ++j) {
    if (filled[j]) continue;
    for (; next_basis < m; ++next_basis) {
      Vector cand(m, 0.0);
      cand[next_basis] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < r; ++k) {
          if (!filled[k]) continue;
          double proj = 0.0;
          for (std::size_t i = 0; i < m; ++i) proj += u(i, k) * cand[i];
          for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * u(i, k);
        }
      }
      const double norm = Norm2(cand);
      if (norm > 1e-6) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = cand[i] / norm;
        filled[j] = true;
        ++next_basis;
        break;
      }
    }
    VFKT_ENFORCE(filled[j], ErrorCode::kDegenerate, "could not complete orthonormal basis");
  }
}

SvdResult SvdTall(const Matrix& m, const SvdOptions& options) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  // Columns of W and V stored contiguously (as rows of the transposes).
  Matrix wt = m.Transposed();
  Matrix vt = Matrix::Identity(n);
  const double norm_sq = Dot(m.data(), m.data());
  const double threshold = options.tolerance * norm_sq;

  SvdResult result;
  bool converged = false;
  double off = 0.0;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double off_sq = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* wp = wt.row(p).data();
        double* wq = wt.row(q).data();
        const double alpha = DotRaw(wp, wp, rows);
        const double beta = DotRaw(wq, wq, rows);
        const double gamma = DotRaw(wp, wq, rows);
        off_sq += gamma * gamma;
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        Rotate(wp, wq, rows, c, s);
        Rotate(vt.row(p).data(), vt.row(q).data(), n, c, s);
      }
    }
    result.sweeps = sweep + 1;
    off = std::sqrt(off_sq);
    if (off <= threshold) {
      converged = true;
      break;
    }
  }
  VFKT_ENFORCE(converged, ErrorCode::kNotConverged,
               "svd: no convergence after {} sweeps (off-diagonal norm {:.3e}, target {:.3e})",
               options.max_sweeps, off, threshold);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = Norm2(wt.row(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  const double sigma_max = n == 0 ? 0.0 : norms[order.front()];
  const double zero_cut = sigma_max * static_cast<double>(std::max(rows, n)) * kEps;
  result.u = Matrix(rows, n);
  result.v = Matrix(n, n);
  result.sigma.resize(n);
  std::vector<bool> missing(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    const double sigma = norms[j];
    result.sigma[k] = sigma;
    for (std::size_t i = 0; i < n; ++i) result.v(i, k) = vt(j, i);
    if (sigma <= zero_cut || sigma == 0.0) {
      missing[k] = true;
      continue;
    }
    for (std::size_t i = 0; i < rows; ++i) result.u(i, k) = wt(j, i) / sigma;
  }
  if (std::find(missing.begin(), missing.end(), true) != missing.end()) {
    CompleteOrthonormal(result.u, missing);
  }
  CanonicalizeColumnSigns(result.u, &result.v);
  return result;
}

}  // namespace

SvdResult Svd(const Matrix& m, const SvdOptions& options) {
  VFKT_ENFORCE(m.AllFinite(), ErrorCode::kInvalidArgument, "svd: non-finite entries");
  if (m.rows() >= m.cols()) return SvdTall(m, options);
  SvdResult t = SvdTall(m.Transposed(), options);
  SvdResult out;
  out.u = std::move(t.v);
  out.v = std::move(t.u);
  out.sigma = std::move(t.sigma);
  out.sweeps = t.sweeps;
  CanonicalizeColumnSigns(out.u, &out.v);
  return out;
}

void CanonicalizeColumnSigns(Matrix& u, Matrix* v) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, j)) > best_abs) {
        best_abs = std::abs(u(i, j));
        best = i;
      }
    }
    if (u.rows() == 0 || u(best, j) >= 0.0) continue;
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
    if (v != nullptr) {
      for (std::size_t i = 0; i < v->rows(); ++i) (*v)(i, j) = -(*v)(i, j);
    }
  }
}

QrResult HouseholderQr(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  VFKT_ENFORCE(m >= n, ErrorCode::kDimensionMismatch, "qr: needs rows >= cols, got {}x{}", m, n);
  // Work on columns contiguously.
  Matrix rt = a.Transposed();
  std::vector<Vector> reflectors(n);
  for (std::size_t k = 0; k < n; ++k) {
    double* col = rt.row(k).data();
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    Vector v(m - k, 0.0);
    if (norm == 0.0) {
      reflectors[k] = std::move(v);
      continue;
    }
    const double alpha = col[k] >= 0.0 ? -norm : norm;
    for (std::size_t i = k; i < m; ++i) v[i - k] = col[i];
    v[0] -= alpha;
    const double vnorm = Norm2(v);
    for (double& x : v) x /= vnorm;
    for (std::size_t j = k; j < n; ++j) {
      double* cj = rt.row(j).data();
      double proj = 0.0;
      for (std::size_t i = k; i < m; ++i) proj += v[i - k] * cj[i];
      for (std::size_t i = k; i < m; ++i) cj[i] -= 2.0 * proj * v[i - k];
    }
    reflectors[k] = std::move(v);
  }
  QrResult out;
  out.r = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.r(i, j) = rt(j, i);
  }
  // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of the identity.
  Matrix qt(n, m);
  for (std::size_t j = 0; j < n; ++j) qt(j, j) = 1.0;
  for (std::size_t kk = n; kk-- > 0;) {
    const Vector& v = reflectors[kk];
    if (v.empty() || Norm2(v) == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double* cj = qt.row(j).data();
      double proj = 0.0;
      for (std::size_t i = kk; i < m; ++i) proj += v[i - kk] * cj[i];
      for (std::size_t i = kk; i < m; ++i) cj[i] -= 2.0 * proj * v[i - kk];
    }
  }
  out.q = qt.Transposed();
  return out;
}

namespace {

Matrix HaarOrthogonal(std::size_t n, Rng& rng) {
  QrResult qr = HouseholderQr(rng.NormalMatrix(n, n));
  for (std::size_t j = 0; j < n; ++j) {
    if (qr.r(j, j) < 0.0) {
      for (std::size_t i = 0; i < n; ++i) qr.q(i, j) = -qr.q(i, j);
    }
  }
  return std::move(qr.q);
}

}  // namespace

Matrix RandomOrthogonal(std::size_t n, std::uint64_t seed, std::size_t block_size) {
  VFKT_ENFORCE(n >= 1, ErrorCode::kInvalidArgument, "random_orthogonal: n must be >= 1");
  Rng rng(seed);
  if (block_size == 0 || block_size >= n) return HaarOrthogonal(n, rng);
  Matrix out(n, n);
  for (std::size_t start = 0; start < n; start += block_size) {
    const std::size_t len = std::min(block_size, n - start);
    const Matrix block = HaarOrthogonal(len, rng);
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t j = 0; j < len; ++j) out(start + i, start + j) = block(i, j);
    }
  }
  return out;
}

namespace {

Vector Normalized(std::span<const double> v) {
  const double norm = Norm2(v);
  Vector out(v.begin(), v.end());
  for (double& x : out) x /= norm;
  return out;
}

// Estimates the second eigenvalue by power iteration on A - delta a a^T.
double DeflatedEigval(const LinearOperator& a, std::size_t dim, std::span<const double> top,
                      double top_val, int iterations) {
  // Start from the basis vector least aligned with the top eigvec.
  std::size_t pick = 0;
  for (std::size_t i = 1; i < dim; ++i) {
    if (std::abs(top[i]) < std::abs(top[pick])) pick = i;
  }
  Vector x(dim, 0.0);
  x[pick] = 1.0;
  auto project_out = [&](Vector& y) {
    const double p = Dot(y, top);
    for (std::size_t i = 0; i < dim; ++i) y[i] -= p * top[i];
  };
  auto apply = [&](const Vector& y) {
    Vector out = a(y);
    const double p = Dot(top, y) * top_val;
    for (std::size_t i = 0; i < dim; ++i) out[i] -= p * top[i];
    return out;
  };
  project_out(x);
  if (Norm2(x) == 0.0) return 0.0;
  x = Normalized(x);
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector y = apply(x);
    project_out(y);
    estimate = Dot(x, y);
    const double norm = Norm2(y);
    if (norm == 0.0) return estimate;
    for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / norm;
  }
  return Dot(x, apply(x));
}

}  // namespace

PowerIterationResult PowerIteration(const LinearOperator& a, std::size_t dim, int iterations,
                                    std::span<const double> init) {
  VFKT_ENFORCE(init.size() == dim, ErrorCode::kDimensionMismatch,
               "power_iteration: init of length {} for dimension {}", init.size(), dim);
  VFKT_ENFORCE(Norm2(init) > 0.0, ErrorCode::kInvalidArgument,
               "power_iteration: init vector must be non-zero");
  VFKT_ENFORCE(iterations >= 1, ErrorCode::kInvalidArgument,
               "power_iteration: iterations must be >= 1");
  PowerIterationResult out;
  out.eigvec = Normalized(init);
  Vector y = a(out.eigvec);
  for (int l = 0; l < iterations; ++l) {
    const double norm = Norm2(y);
    if (norm == 0.0) {
      out.zero_operator = true;
      out.eigval = 0.0;
      out.history.push_back(0.0);
      return out;
    }
    for (std::size_t i = 0; i < dim; ++i) out.eigvec[i] = y[i] / norm;
    y = a(out.eigvec);
    out.eigval = Dot(out.eigvec, y);
    out.history.push_back(out.eigval);
  }
  if (dim > 1 && out.eigval > 0.0) {
    const double second =
        DeflatedEigval(a, dim, out.eigvec, out.eigval, std::min(iterations, 50));
    out.non_unique = out.eigval - second <= 1e-9 * out.eigval;
  }
  return out;
}

PowerIterationResult PowerIteration(const Matrix& a, int iterations, std::span<const double> init) {
  VFKT_ENFORCE(a.rows() == a.cols(), ErrorCode::kDimensionMismatch,
               "power_iteration: matrix must be square, got {}x{}", a.rows(), a.cols());
  VFKT_ENFORCE(a.AllFinite(), ErrorCode::kInvalidArgument, "power_iteration: non-finite entries");
  return PowerIteration([&a](std::span<const double> x) { return MatVec(a, x); }, a.rows(),
                        iterations, init);
}

Matrix SoftmaxRows(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto in = m.row(i);
    auto dst = out.row(i);
    if (in.empty()) continue;
    const double shift = *std::max_element(in.begin(), in.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < in.size(); ++j) {
      dst[j] = std::exp(in[j] - shift);
      sum += dst[j];
    }
    for (double& v : dst) v /= sum;
  }
  return out;
}

}  // namespace vfkt::numerics
