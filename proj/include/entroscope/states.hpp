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

#ifndef ENTROSCOPE_STATES_HPP
#define ENTROSCOPE_STATES_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "entroscope/tensor.hpp"

namespace entroscope {

/// Seedable, splittable generator. Child streams are derived from
/// (seed, stream index) alone, so work split across streams is reproducible
/// regardless of execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  double uniform();  // [0, 1)
  double normal();
  Complex complex_normal();  // independent standard normal real and imaginary parts

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x);

/// Measurement axis cos(theta) sigma_z + sin(theta) sigma_x, theta kept in [0, pi).
class BasisAngle {
 public:
  explicit BasisAngle(double theta);
  static BasisAngle z() { return BasisAngle(0.0); }
  static BasisAngle x();

  double radians() const { return theta_; }

 private:
  double theta_;
};

// Spin encoding: up = 0, down = 1.

ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
/// cos(theta) sigma_z + sin(theta) sigma_x, for any real theta.
ComplexMatrix spin_observable(double theta);

/// 2x2 rotation with rows (cos t/2, sin t/2) and (-sin t/2, cos t/2); maps the
/// eigenbasis of spin_observable(theta) onto the computational basis.
ComplexMatrix basis_rotation(BasisAngle angle);

/// (|01> - |10>) / sqrt 2
PureState epr_singlet();

/// (|0...0> + |1...1>) / sqrt 2, n >= 3.
PureState ghz(std::size_t n);

/// Factor order (atom, gamma, cat[, observer]); excited atom, absent gamma,
/// live cat and its observer state are all 0.
PureState cat_chain(bool with_observer);

/// Computational basis state with the given per-factor digits.
PureState basis_state(std::span<const std::size_t> digits, const TensorShape& shape);

/// rho = G G^dagger / Tr(G G^dagger), G square with iid complex Gaussian entries.
DensityOperator random_density(std::span<const std::size_t> dims, std::uint64_t seed);
DensityOperator random_density(std::span<const std::size_t> dims, Rng& rng);

/// Normalized complex Gaussian vector.
PureState random_pure(std::span<const std::size_t> dims, Rng& rng);

/// Haar-ish unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Diagonal density operator from a joint distribution over the factors.
DensityOperator classical_state(std::span<const double> probabilities, const TensorShape& shape);

}  // namespace entroscope

#endif  // ENTROSCOPE_STATES_HPP
