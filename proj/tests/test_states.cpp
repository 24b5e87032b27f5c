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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "entroscope/entropy.hpp"
#include "entroscope/states.hpp"

using namespace entroscope;

TEST_CASE("singlet is invariant under identical local rotations") {
  const auto psi = epr_singlet();
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto u = random_unitary(2, rng);
    const auto uu = kron(u, u);
    const auto rotated = uu * psi.density().matrix() * uu.adjoint();
    CHECK(max_abs_diff(rotated, psi.density().matrix()) < 1e-12);
  }
}

TEST_CASE("singlet amplitudes") {
  const auto psi = epr_singlet();
  const auto a = psi.amplitudes();
  CHECK(std::abs(a[1] - Complex(1 / std::numbers::sqrt2)) < 1e-15);
  CHECK(std::abs(a[2] + Complex(1 / std::numbers::sqrt2)) < 1e-15);
  CHECK(a[0] == Complex(0));
  CHECK(a[3] == Complex(0));
}

TEST_CASE("GHZ states") {
  CHECK_THROWS_AS(ghz(2), ValidationError);
  CHECK_THROWS_AS(ghz(17), ValidationError);
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto g = ghz(n);
    CHECK(is_pure(g.density()));
    for (std::size_t k = 0; k < n; ++k) {
      const auto one = partial_trace(g, std::vector<std::size_t>{k});
      CHECK(max_abs_diff(one.matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-12);
    }
    // Discarding one member leaves a classical mixture of |0..0> and |1..1>.
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < n; ++k) rest.push_back(k);
    const auto reduced = partial_trace(g, rest).matrix();
    for (std::size_t r = 0; r < reduced.rows(); ++r)
      for (std::size_t c = 0; c < reduced.cols(); ++c)
        if (r != c) CHECK(std::abs(reduced(r, c)) < 1e-12);
    CHECK(std::abs(reduced(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(reduced(reduced.rows() - 1, reduced.rows() - 1) - 0.5) < 1e-12);
  }
}

TEST_CASE("cat chain has the GHZ form") {
  CHECK(max_abs_diff(cat_chain(true).density().matrix(), ghz(4).density().matrix()) < 1e-15);
  CHECK(max_abs_diff(cat_chain(false).density().matrix(), ghz(3).density().matrix()) < 1e-15);
}

TEST_CASE("basis angles normalise into [0, pi)") {
  CHECK(BasisAngle(std::numbers::pi).radians() == doctest::Approx(0.0));
  CHECK(BasisAngle(-std::numbers::pi / 2).radians() == doctest::Approx(std::numbers::pi / 2));
  CHECK(BasisAngle::x().radians() == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(BasisAngle(std::nan("")), ValidationError);
}

TEST_CASE("basis rotation diagonalises the spin observable") {
  const auto z = pauli_z();
  CHECK(max_abs_diff(basis_rotation(BasisAngle::z()), ComplexMatrix::identity(2)) < 1e-15);
  for (double theta : {0.0, 0.3, std::numbers::pi / 4, std::numbers::pi / 2, 2.5}) {
    const auto r = basis_rotation(BasisAngle(theta));
    CHECK(max_abs_diff(r * r.adjoint(), ComplexMatrix::identity(2)) < 1e-12);
    CHECK(max_abs_diff(r * spin_observable(theta) * r.adjoint(), z) < 1e-12);
  }
  const double a = 1 / std::numbers::sqrt2;
  CHECK(max_abs_diff(basis_rotation(BasisAngle::x()), ComplexMatrix(2, 2, {a, a, -a, a})) < 1e-15);
}

TEST_CASE("basis states") {
  const std::vector<std::size_t> digits{1, 0, 2};
  const auto s = basis_state(digits, TensorShape({2, 2, 3}));
  CHECK(s.amplitudes()[1 * 6 + 0 * 3 + 2] == Complex(1));
  CHECK_THROWS_AS(basis_state(std::vector<std::size_t>{2, 0, 0}, TensorShape({2, 2, 3})), ValidationError);
}

TEST_CASE("random densities are seeded and physical") {
  const std::vector<std::size_t> dims{2, 3};
  const auto a = random_density(dims, 5);
  const auto b = random_density(dims, 5);
  const auto c = random_density(dims, 6);
  CHECK(a.matrix() == b.matrix());
  CHECK(max_abs_diff(a.matrix(), c.matrix()) > 1e-3);
  CHECK(std::abs(a.matrix().trace() - 1.0) < 1e-12);
  CHECK(a.matrix().hermitian_deviation() < 1e-12);
  for (double l : hermitian_eigenvalues(a.matrix())) CHECK(l > -1e-10);
}

TEST_CASE("random unitaries are unitary") {
  Rng rng(8);
  for (std::size_t d : {2u, 4u, 8u}) {
    const auto u = random_unitary(d, rng);
    CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(d)) < 1e-12);
  }
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(123), b(123);
  for (int i = 0; i < 5; ++i) CHECK(a.uniform() == b.uniform());
  Rng s0 = Rng(123).split(0), s0b = Rng(123).split(0), s1 = Rng(123).split(1);
  const double x0 = s0.uniform();
  CHECK(x0 == s0b.uniform());
  CHECK(x0 != s1.uniform());
  CHECK(mix_seed(1) != mix_seed(2));
}

TEST_CASE("classical states") {
  const std::vector<double> p{0.5, 0.5};
  CHECK_THROWS_AS(classical_state(p, TensorShape::qubits(2)), ValidationError);
  CHECK(purity(classical_state(p, TensorShape::qubits(1))) == doctest::Approx(0.5));
}
