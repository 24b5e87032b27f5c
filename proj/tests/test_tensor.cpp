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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "entroscope/states.hpp"
#include "entroscope/tensor.hpp"
#include "oracles.hpp"

using namespace entroscope;

namespace {

oracle::Mat to_oracle(const ComplexMatrix& m) {
  oracle::Mat o(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) o(r, c) = m(r, c);
  return o;
}

double max_diff(const ComplexMatrix& m, const oracle::Mat& o) {
  double d = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) d = std::max(d, std::abs(m(r, c) - o(r, c)));
  return d;
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) { return ComplexMatrix(2, 2, {a, b, c, d}); }

}  // namespace

TEST_CASE("kron of 2x2 with identity places blocks on the diagonal") {
  const auto a = mat2(1, 2, 3, 4);
  const auto k = kron(a, ComplexMatrix::identity(2));
  REQUIRE(k.rows() == 4);
  const ComplexMatrix expected(4, 4, {1, 0, 2, 0, 0, 1, 0, 2, 3, 0, 4, 0, 0, 3, 0, 4});
  CHECK(k == expected);
}

TEST_CASE("kron of sigma_z and sigma_x") {
  const auto k = kron(pauli_z(), pauli_x());
  const ComplexMatrix expected(4, 4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0});
  CHECK(max_abs_diff(k, expected) == 0.0);
}

TEST_CASE("kron is associative and respects products") {
  Rng rng(11);
  const auto a = random_unitary(2, rng), b = random_unitary(3, rng), c = random_unitary(2, rng);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
  const auto a2 = random_unitary(2, rng), b2 = random_unitary(3, rng);
  CHECK(max_abs_diff(kron(a, b) * kron(a2, b2), kron(a * a2, b * b2)) < 1e-12);
}

TEST_CASE("matrix construction rejects mismatched sizes") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), ValidationError);
}

TEST_CASE("pure state validation") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}, TensorShape::qubits(1)), ValidationError);
  CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}, TensorShape::qubits(2)), ValidationError);
  CHECK_NOTHROW(PureState({1.0, 0.0}, TensorShape::qubits(1)));
}

TEST_CASE("density validation") {
  SUBCASE("trace") {
    try {
      DensityOperator::from_matrix(ComplexMatrix::identity(2), TensorShape::qubits(1));
      FAIL("expected a trace error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("trace") != std::string::npos);
    }
  }
  SUBCASE("hermiticity") {
    CHECK_THROWS_AS(DensityOperator::from_matrix(mat2(0.5, 0.1, 0.0, 0.5), TensorShape::qubits(1)),
                    ValidationError);
  }
  SUBCASE("positivity") {
    CHECK_THROWS_AS(DensityOperator::from_matrix(mat2(1.5, 0, 0, -0.5), TensorShape::qubits(1)),
                    ValidationError);
  }
  SUBCASE("shape") {
    CHECK_THROWS_AS(DensityOperator::from_matrix(ComplexMatrix::identity(4), TensorShape::qubits(1)),
                    ValidationError);
  }
}

TEST_CASE("partial trace of the singlet is maximally mixed") {
  const auto psi = epr_singlet();
  for (std::size_t k : {0u, 1u}) {
    const std::vector<std::size_t> keep{k};
    const auto r = partial_trace(psi, keep);
    CHECK(max_abs_diff(r.matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-12);
  }
}

TEST_CASE("partial trace agrees with brute-force contraction") {
  const std::vector<std::vector<std::size_t>> shapes = {{2, 2}, {2, 3}, {3, 2, 2}, {2, 2, 2, 2}};
  std::uint64_t seed = 100;
  for (const auto& dims : shapes) {
    const auto rho = random_density(dims, seed++);
    const std::size_t n = dims.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> keep;
      std::vector<bool> keep_flags(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (1u << k)) {
          keep.push_back(k);
          keep_flags[k] = true;
        }
      }
      const auto mine = partial_trace(rho, keep);
      const auto ref = oracle::partial_trace(to_oracle(rho.matrix()), dims, keep_flags);
      CHECK(max_diff(mine.matrix(), ref) < 1e-12);
      CHECK(std::abs(mine.matrix().trace() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("partial traces compose") {
  const std::vector<std::size_t> dims{2, 3, 2};
  const auto rho = random_density(dims, 7);
  const auto once = partial_trace(rho, std::vector<std::size_t>{0});
  const auto twice =
      partial_trace(partial_trace(rho, std::vector<std::size_t>{0, 2}), std::vector<std::size_t>{0});
  CHECK(max_abs_diff(once.matrix(), twice.matrix()) < 1e-12);
}

TEST_CASE("partial trace argument errors") {
  const auto rho = random_density(std::vector<std::size_t>{2, 2}, 3);
  CHECK_THROWS_AS(partial_trace(rho, std::vector<std::size_t>{}), ValidationError);
  CHECK_THROWS_AS(partial_trace(rho, std::vector<std::size_t>{2}), ValidationError);
}

TEST_CASE("eigenvalues of a diagonal matrix") {
  const std::vector<double> d{0.1, 0.7, 0.2};
  auto ev = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("eigenvalues of (I + sigma_x)/2") {
  auto ev = hermitian_eigenvalues(0.5 * (ComplexMatrix::identity(2) + pauli_x()));
  std::sort(ev.begin(), ev.end());
  CHECK(std::abs(ev[0]) < 1e-12);
  CHECK(std::abs(ev[1] - 1.0) < 1e-12);
}

TEST_CASE("eigenvalues of 2x2 Hermitian matrices match the closed form") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const double a = rng.normal(), d = rng.normal();
    const Complex b = rng.complex_normal();
    auto ev = hermitian_eigenvalues(mat2(a, b, std::conj(b), d));
    std::sort(ev.begin(), ev.end());
    const auto ref = oracle::eig2(a, b, d);
    CHECK(std::abs(ev[0] - ref[0]) < 1e-10);
    CHECK(std::abs(ev[1] - ref[1]) < 1e-10);
  }
}

TEST_CASE("singlet density spectrum agrees with its characteristic polynomial") {
  const auto rho = epr_singlet().density();
  const auto coeffs = oracle::characteristic_polynomial(to_oracle(rho.matrix()));
  // det(xI - rho) = x^4 - x^3 for a rank-one projector.
  const std::vector<double> expected{0, 0, 0, -1, 1};
  for (std::size_t i = 0; i < coeffs.size(); ++i) CHECK(std::abs(coeffs[i] - expected[i]) < 1e-12);
  auto ev = hermitian_eigenvalues(rho.matrix());
  std::sort(ev.begin(), ev.end());
  CHECK(std::abs(ev[3] - 1.0) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ev[static_cast<std::size_t>(i)]) < 1e-12);
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial for random densities") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rho = random_density(std::vector<std::size_t>{2, 2}, seed);
    const auto coeffs = oracle::characteristic_polynomial(to_oracle(rho.matrix()));
    for (double lambda : hermitian_eigenvalues(rho.matrix())) {
      oracle::C p = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 0;) p = p * lambda + coeffs[i];
      CHECK(std::abs(p) < 1e-10);
    }
  }
}

TEST_CASE("Jacobi decomposition reconstructs the input") {
  Rng rng(42);
  for (std::size_t n : {1u, 2u, 5u, 8u, 16u}) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = rng.normal();
    const auto eig = jacobi_eigen_symmetric(a, n);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += eig.vectors[k * n + i] * eig.values[k] * eig.vectors[k * n + j];
        residual = std::max(residual, std::abs(s - a[i * n + j]));
      }
    }
    CHECK(residual <= 1e-10);
  }
}

TEST_CASE("spectrum is invariant under unitary conjugation") {
  Rng rng(9);
  const auto rho = random_density(std::vector<std::size_t>{2, 3}, rng);
  const auto u = random_unitary(6, rng);
  auto a = hermitian_eigenvalues(rho.matrix());
  auto b = hermitian_eigenvalues(u * rho.matrix() * u.adjoint());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
}

TEST_CASE("hermitian check rejects non-Hermitian input") {
  try {
    hermitian_eigenvalues(mat2(1, 1, 0, 1));
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("hermitian") != std::string::npos);
  }
}

TEST_CASE("spectrum clamping") {
  const auto c = clamp_spectrum({-5e-11, 0.5, 0.5});
  CHECK(c[0] == 0.0);
  CHECK_THROWS_AS(clamp_spectrum({-1e-6, 1.0}), NumericalError);
}

TEST_CASE("purity separates pure from mixed") {
  CHECK(is_pure(epr_singlet().density()));
  CHECK(purity(epr_singlet().density()) == doctest::Approx(1.0).epsilon(1e-12));
  const auto half = partial_trace(epr_singlet(), std::vector<std::size_t>{0});
  CHECK_FALSE(is_pure(half));
  CHECK(purity(half) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tensor shape bookkeeping") {
  const TensorShape s({2, 3, 4});
  CHECK(s.total_dim() == 24);
  CHECK(s.subshape(std::vector<std::size_t>{0, 2}) == TensorShape({2, 4}));
  CHECK(s.append(TensorShape::qubits(1)) == TensorShape({2, 3, 4, 2}));
  CHECK_THROWS_AS(TensorShape({2, 1}), ValidationError);
}
