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

// Reference computations used as test oracles. Each one is written from
// first principles and shares no code with the library under test.

#ifndef ENTROSCOPE_TESTS_ORACLES_HPP
#define ENTROSCOPE_TESTS_ORACLES_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// Row-major square matrix.
struct Mat {
  std::size_t n = 0;
  std::vector<C> a;
  explicit Mat(std::size_t dim) : n(dim), a(dim * dim) {}
  C& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  C operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline Mat multiply(const Mat& x, const Mat& y) {
  Mat z(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

// Mixed-radix digits of `index`, most significant (factor 0) first.
inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

// Partial trace by explicit contraction over every pair of full indices.
inline Mat partial_trace(const Mat& rho, const std::vector<std::size_t>& dims,
                         const std::vector<bool>& keep) {
  std::size_t kept_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kept_dim *= dims[k];
  Mat out(kept_dim);
  for (std::size_t i = 0; i < rho.n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < rho.n; ++j) {
      const auto dj = digits(j, dims);
      bool diagonal_on_traced = true;
      std::size_t r = 0, c = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          r = r * dims[k] + di[k];
          c = c * dims[k] + dj[k];
        } else if (di[k] != dj[k]) {
          diagonal_on_traced = false;
          break;
        }
      }
      if (diagonal_on_traced) out(r, c) += rho(i, j);
    }
  }
  return out;
}

// Characteristic polynomial coefficients c[0..n] of det(x I - A), with
// c[n] = 1, by the Faddeev-LeVerrier recursion.
inline std::vector<C> characteristic_polynomial(const Mat& a) {
  const std::size_t n = a.n;
  std::vector<C> c(n + 1);
  c[n] = 1.0;
  Mat m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mat next = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = next;
    const Mat am = multiply(a, m);
    C tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

// Closed-form spectrum of a 2x2 Hermitian matrix, ascending.
inline std::vector<double> eig2(double a, C b, double d) {
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mid - rad, mid + rad};
}

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

inline double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

// I-measure atom of region T (inside every party of T, outside the rest C):
// sum over nonempty W within T of (-1)^(|W|+1) H(W | C).
inline double atom(const std::vector<double>& joints, std::uint32_t t, std::uint32_t full) {
  const std::uint32_t comp = full & ~t;
  double sum = 0.0;
  for (std::uint32_t w = t;; w = (w - 1) & t) {
    if (w != 0) {
      const double cond = joints[w | comp] - joints[comp];
      sum += (std::popcount(w) % 2 == 1 ? 1.0 : -1.0) * cond;
    }
    if (w == 0) break;
  }
  return sum;
}

// Singlet expectation of (sigma . a)(sigma . b) for coplanar unit vectors at
// angles x and y, by explicit 4x4 matrix contraction.
inline double singlet_expectation(double x, double y) {
  const double s = 1.0 / std::sqrt(2.0);
  const double psi[4] = {0.0, s, -s, 0.0};
  const double ox[2][2] = {{std::cos(x), std::sin(x)}, {std::sin(x), -std::cos(x)}};
  const double oy[2][2] = {{std::cos(y), std::sin(y)}, {std::sin(y), -std::cos(y)}};
  double e = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e += psi[i] * ox[i >> 1][j >> 1] * oy[i & 1][j & 1] * psi[j];
  return e;
}

}  // namespace oracle

#endif  // ENTROSCOPE_TESTS_ORACLES_HPP
