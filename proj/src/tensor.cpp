// Copyright 2026 The Entroscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entroscope/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

namespace entroscope {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
}

// Sorted, deduplicated keep set; validated against the factor count.
std::vector<std::size_t> normalize_keep(std::span<const std::size_t> keep, std::size_t factors) {
  if (keep.empty()) throw ValidationError("partial_trace: must keep at least one factor");
  std::vector<std::size_t> out(keep.begin(), keep.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.back() >= factors) {
    throw ValidationError("partial_trace: factor index " + std::to_string(out.back()) +
                          " out of range for " + std::to_string(factors) + " factors");
  }
  return out;
}

// For every (kept index a, traced index t) the flat index into the full space.
// Row-major in a: table[a * traced_dim + t].
struct SplitIndex {
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  std::vector<std::size_t> table;
};

SplitIndex split_index(const TensorShape& shape, const std::vector<std::size_t>& keep) {
  const std::size_t n = shape.factor_count();
  std::vector<bool> kept(n, false);
  for (auto k : keep) kept[k] = true;

  SplitIndex s;
  for (std::size_t k = 0; k < n; ++k) (kept[k] ? s.kept_dim : s.traced_dim) *= shape.factor_dim(k);
  s.table.assign(s.kept_dim * s.traced_dim, 0);

  const std::size_t total = shape.total_dim();
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t a = 0, t = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (kept[k]) {
        a = a * shape.factor_dim(k) + digit[k];
      } else {
        t = t * shape.factor_dim(k) + digit[k];
      }
    }
    s.table[a * s.traced_dim + t] = full;
    // Increment the mixed-radix counter; last factor varies fastest.
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < shape.factor_dim(k)) break;
      digit[k] = 0;
    }
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw ValidationError("ComplexMatrix: rows and cols must be >= 1");
  if (entries_.size() != rows_ * cols_) {
    throw ValidationError("ComplexMatrix: " + std::to_string(entries_.size()) +
                          " entries for a " + std::to_string(rows_) + "x" +
                          std::to_string(cols_) + " matrix");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermitian_deviation() const {
  if (!is_square()) return INFINITY;
  double dev = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r; c < cols_; ++c) {
      dev = std::max(dev, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return dev;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("matrix product: inner dimensions " + std::to_string(a.cols()) +
                          " and " + std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] + b.entries_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] - b.entries_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  std::vector<Complex> e(m.entries_);
  for (auto& x : e) x *= s;
  return ComplexMatrix(m.rows_, m.cols_, std::move(e));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- TensorShape

TensorShape::TensorShape(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw ValidationError("TensorShape: at least one factor required");
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] < 2) {
      throw ValidationError("TensorShape: factor " + std::to_string(k) + " has dimension " +
                            std::to_string(dims_[k]) + " (must be >= 2)");
    }
  }
}

TensorShape TensorShape::qubits(std::size_t n) { return TensorShape(std::vector<std::size_t>(n, 2)); }

std::size_t TensorShape::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

TensorShape TensorShape::subshape(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> d;
  for (auto k : normalize_keep(keep, dims_.size())) d.push_back(dims_[k]);
  return TensorShape(std::move(d));
}

TensorShape TensorShape::append(const TensorShape& other) const {
  std::vector<std::size_t> d(dims_);
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return TensorShape(std::move(d));
}

// ---------------------------------------------------------------- states

PureState::PureState(std::vector<Complex> amplitudes, TensorShape shape)
    : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
  if (amplitudes_.size() != shape_.total_dim()) {
    throw ValidationError("PureState: " + std::to_string(amplitudes_.size()) +
                          " amplitudes but dims product is " +
                          std::to_string(shape_.total_dim()));
  }
  double norm2 = 0.0;
  for (const auto& a : amplitudes_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kConstructionTol) {
    throw ValidationError("PureState: squared norm = " + fmt_double(norm2) + " \xE2\x89\xA0 1");
  }
}

DensityOperator PureState::density() const {
  return DensityOperator(ComplexMatrix::outer(amplitudes_), shape_);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, TensorShape shape)
    : matrix_(std::move(matrix)), shape_(std::move(shape)) {}

DensityOperator DensityOperator::from_matrix(ComplexMatrix matrix, TensorShape shape) {
  if (!matrix.is_square()) throw ValidationError("DensityOperator: matrix must be square");
  if (matrix.rows() != shape.total_dim()) {
    throw ValidationError("DensityOperator: matrix dimension " + std::to_string(matrix.rows()) +
                          " but dims product is " + std::to_string(shape.total_dim()));
  }
  const double dev = matrix.hermitian_deviation();
  if (dev > kConstructionTol) {
    throw ValidationError("DensityOperator: hermitian check failed (max deviation " +
                          fmt_double(dev) + ")");
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr.real() - 1.0) > kConstructionTol || std::abs(tr.imag()) > kConstructionTol) {
    throw ValidationError("DensityOperator: trace = " + fmt_double(tr.real()) + " \xE2\x89\xA0 1");
  }
  const auto eig = hermitian_eigenvalues(matrix);
  if (eig.front() < -kPsdTol) {
    throw ValidationError("DensityOperator: not positive semidefinite (eigenvalue " +
                          fmt_double(eig.front()) + ")");
  }
  return DensityOperator(std::move(matrix), std::move(shape));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep) {
  const auto k = normalize_keep(keep, rho.shape().factor_count());
  const auto s = split_index(rho.shape(), k);
  ComplexMatrix out(s.kept_dim, s.kept_dim);
  for (std::size_t a = 0; a < s.kept_dim; ++a) {
    for (std::size_t b = 0; b < s.kept_dim; ++b) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < s.traced_dim; ++t) {
        acc += rho.matrix()(s.table[a * s.traced_dim + t], s.table[b * s.traced_dim + t]);
      }
      out(a, b) = acc;
    }
  }
  return DensityOperator(std::move(out), rho.shape().subshape(k));
}

DensityOperator partial_trace(const PureState& psi, std::span<const std::size_t> keep) {
  const auto k = normalize_keep(keep, psi.shape().factor_count());
  const auto s = split_index(psi.shape(), k);
  const auto amps = psi.amplitudes();
  ComplexMatrix out(s.kept_dim, s.kept_dim);
  for (std::size_t a = 0; a < s.kept_dim; ++a) {
    for (std::size_t b = a; b < s.kept_dim; ++b) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < s.traced_dim; ++t) {
        acc += amps[s.table[a * s.traced_dim + t]] * std::conj(amps[s.table[b * s.traced_dim + t]]);
      }
      out(a, b) = acc;
      out(b, a) = std::conj(acc);
    }
    out(a, a) = out(a, a).real();
  }
  return DensityOperator(std::move(out), psi.shape().subshape(k));
}

// ---------------------------------------------------------------- spectra

SymmetricEigen jacobi_eigen_symmetric(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw ValidationError("jacobi_eigen_symmetric: size mismatch");
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

  SymmetricEigen out;
  out.n = n;
  out.vectors.assign(n * n, 0.0);
  auto v = [&](std::size_t r, std::size_t c) -> double& { return out.vectors[c * n + r]; };
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double frob = 0.0;
  for (double x : a) frob += x * x;
  const double threshold = 1e-13 * std::max(1.0, std::sqrt(frob));

  constexpr int kMaxSweeps = 100;
  for (;;) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * at(p, q) * at(p, q);
    }
    if (std::sqrt(off) < threshold) break;
    if (out.sweeps == kMaxSweeps) {
      throw NumericalError("jacobi_eigen_symmetric: no convergence after " +
                           std::to_string(kMaxSweeps) + " sweeps");
    }
    ++out.sweeps;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return at(i, i) < at(j, j); });
  std::vector<double> sorted_vectors(n * n);
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = at(order[j], order[j]);
    std::copy_n(out.vectors.begin() + static_cast<std::ptrdiff_t>(order[j] * n), n,
                sorted_vectors.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  out.vectors = std::move(sorted_vectors);
  return out;
}

std::vector<double> real_embedding(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t n2 = 2 * n;
  std::vector<double> s(n2 * n2);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double re = m(r, c).real(), im = m(r, c).imag();
      s[r * n2 + c] = re;
      s[r * n2 + (c + n)] = -im;
      s[(r + n) * n2 + c] = im;
      s[(r + n) * n2 + (c + n)] = re;
    }
  }
  return s;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw ValidationError("hermitian check failed: matrix is not square");
  const double dev = m.hermitian_deviation();
  if (dev > kConstructionTol) {
    throw ValidationError("hermitian check failed (max deviation " + fmt_double(dev) + ")");
  }
  const std::size_t n = m.rows();
  // Symmetrize first so the embedding is exactly symmetric.
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const auto eig = jacobi_eigen_symmetric(real_embedding(h), 2 * n);
  // Every eigenvalue of the embedding appears twice.
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = 0.5 * (eig.values[2 * i] + eig.values[2 * i + 1]);
  return values;
}

std::vector<double> clamp_spectrum(std::vector<double> eigenvalues) {
  for (auto& l : eigenvalues) {
    if (l < -kPsdTol) {
      throw NumericalError("PSD violation: eigenvalue " + fmt_double(l) + " below -1e-10");
    }
    if (l < 0.0) l = 0.0;
  }
  return eigenvalues;
}

double purity(const DensityOperator& rho) {
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  double p = 0.0;
  for (const auto& x : rho.matrix().entries()) p += std::norm(x);
  return p;
}

bool is_pure(const DensityOperator& rho) { return purity(rho) >= 1.0 - kDerivedTol; }

}  // namespace entroscope
