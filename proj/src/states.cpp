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

#include "entroscope/states.hpp"

#include <cmath>
#include <numbers>

namespace entroscope {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(mix_seed(seed_ ^ mix_seed(stream + 1))); }

double Rng::uniform() { return std::generate_canonical<double, 53>(engine_); }

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

BasisAngle::BasisAngle(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("BasisAngle: angle must be finite");
  double t = std::fmod(theta, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  if (t >= std::numbers::pi) t = 0.0;
  theta_ = t;
}

BasisAngle BasisAngle::x() { return BasisAngle(std::numbers::pi / 2); }

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix spin_observable(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return ComplexMatrix(2, 2, {c, s, s, -c});
}

ComplexMatrix basis_rotation(BasisAngle angle) {
  const double c = std::cos(angle.radians() / 2), s = std::sin(angle.radians() / 2);
  return ComplexMatrix(2, 2, {c, s, -s, c});
}

PureState epr_singlet() {
  return PureState({0.0, kInvSqrt2, -kInvSqrt2, 0.0}, TensorShape::qubits(2));
}

PureState ghz(std::size_t n) {
  if (n < 3) throw ValidationError("ghz: need at least 3 qubits, got " + std::to_string(n));
  if (n > 16) throw ValidationError("ghz: at most 16 qubits supported");
  std::vector<Complex> amps(std::size_t{1} << n);
  amps.front() = kInvSqrt2;
  amps.back() = kInvSqrt2;
  return PureState(std::move(amps), TensorShape::qubits(n));
}

PureState cat_chain(bool with_observer) {
  const std::size_t n = with_observer ? 4 : 3;
  std::vector<Complex> amps(std::size_t{1} << n);
  amps.front() = kInvSqrt2;  // |A*, 0, L[, l]>
  amps.back() = kInvSqrt2;   // |A, 1, D[, d]>
  return PureState(std::move(amps), TensorShape::qubits(n));
}

PureState basis_state(std::span<const std::size_t> digits, const TensorShape& shape) {
  if (digits.size() != shape.factor_count()) {
    throw ValidationError("basis_state: " + std::to_string(digits.size()) + " digits for " +
                          std::to_string(shape.factor_count()) + " factors");
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= shape.factor_dim(k)) throw ValidationError("basis_state: digit out of range");
    index = index * shape.factor_dim(k) + digits[k];
  }
  std::vector<Complex> amps(shape.total_dim());
  amps[index] = 1.0;
  return PureState(std::move(amps), shape);
}

DensityOperator random_density(std::span<const std::size_t> dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dims, rng);
}

DensityOperator random_density(std::span<const std::size_t> dims, Rng& rng) {
  TensorShape shape({dims.begin(), dims.end()});
  const std::size_t d = shape.total_dim();
  ComplexMatrix g(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) g(r, c) = rng.complex_normal();
  }
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho = Complex(1.0 / tr) * rho;
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator::from_matrix(std::move(rho), std::move(shape));
}

PureState random_pure(std::span<const std::size_t> dims, Rng& rng) {
  const std::size_t d = product(dims);
  std::vector<Complex> amps(d);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = rng.complex_normal();
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return PureState(std::move(amps), TensorShape({dims.begin(), dims.end()}));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix u(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) u(r, c) = rng.complex_normal();
  }
  // Modified Gram-Schmidt over columns.
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(u(r, k)) * u(r, j);
      for (std::size_t r = 0; r < dim; ++r) u(r, j) -= dot * u(r, k);
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm2 += std::norm(u(r, j));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < dim; ++r) u(r, j) *= inv;
  }
  return u;
}

DensityOperator classical_state(std::span<const double> probabilities, const TensorShape& shape) {
  if (probabilities.size() != shape.total_dim()) {
    throw ValidationError("classical_state: " + std::to_string(probabilities.size()) +
                          " probabilities for dimension " + std::to_string(shape.total_dim()));
  }
  return DensityOperator::from_matrix(ComplexMatrix::diagonal(probabilities), shape);
}

}  // namespace entroscope
