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

#ifndef ENTROSCOPE_TENSOR_HPP
#define ENTROSCOPE_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace entroscope {

using Complex = std::complex<double>;

// Tolerance ladder shared by every module.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kDerivedTol = 1e-9;
inline constexpr double kMonteCarloTol = 1e-2;
inline constexpr double kPsdTol = 1e-10;

/// Bad input: malformed arguments, broken state invariants, unknown names.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced something physically impossible (PSD violation,
/// entropy inequality failure, non-convergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// max |M - M^dagger| entrywise
  double hermitian_deviation() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ordered per-factor dimensions of a tensor-product space. Factor 0 is the
/// leftmost slot and the slowest-varying index.
class TensorShape {
 public:
  explicit TensorShape(std::vector<std::size_t> factor_dims);
  static TensorShape qubits(std::size_t n);

  std::size_t factor_count() const { return dims_.size(); }
  std::size_t factor_dim(std::size_t k) const { return dims_.at(k); }
  std::span<const std::size_t> dims() const { return dims_; }
  std::size_t total_dim() const;

  /// Shape of the kept factors, in original order.
  TensorShape subshape(std::span<const std::size_t> keep) const;
  /// This shape followed by `other`.
  TensorShape append(const TensorShape& other) const;

  friend bool operator==(const TensorShape&, const TensorShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

class DensityOperator;

/// Normalized amplitude vector over a tensor shape.
class PureState {
 public:
  PureState(std::vector<Complex> amplitudes, TensorShape shape);

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const TensorShape& shape() const { return shape_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  DensityOperator density() const;

 private:
  std::vector<Complex> amplitudes_;
  TensorShape shape_;
};

/// Hermitian, unit-trace, positive-semidefinite operator over a tensor shape.
class DensityOperator {
 public:
  /// Validates hermiticity (1e-12), trace (1e-12) and spectrum (>= -1e-10).
  static DensityOperator from_matrix(ComplexMatrix matrix, TensorShape shape);

  const ComplexMatrix& matrix() const { return matrix_; }
  const TensorShape& shape() const { return shape_; }
  std::size_t dimension() const { return matrix_.rows(); }

 private:
  DensityOperator(ComplexMatrix matrix, TensorShape shape);

  friend class PureState;
  friend DensityOperator partial_trace(const DensityOperator&, std::span<const std::size_t>);
  friend DensityOperator partial_trace(const PureState&, std::span<const std::size_t>);

  ComplexMatrix matrix_;
  TensorShape shape_;
};

/// Reduced operator on `keep` (sorted and deduplicated; original order is
/// preserved). Throws ValidationError on an empty or out-of-range set.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep);
/// Same as above, computed directly from amplitudes without forming |psi><psi|.
DensityOperator partial_trace(const PureState& psi, std::span<const std::size_t> keep);

/// Result of cyclic Jacobi on a real symmetric matrix. `vectors` is
/// column-major: column j is the eigenvector for values[j].
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a row-major n x n real symmetric matrix. Stops
/// when the off-diagonal Frobenius norm drops below 1e-13 (scaled by the
/// matrix norm when that exceeds one). Values are returned ascending.
SymmetricEigen jacobi_eigen_symmetric(std::vector<double> a, std::size_t n);

/// Real symmetric 2n x 2n embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.
std::vector<double> real_embedding(const ComplexMatrix& m);

/// Ascending real eigenvalues of a Hermitian matrix. Throws ValidationError
/// "hermitian check failed" when max |M - M^dagger| > 1e-12.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Applies the clamping rule: values in [-1e-10, 0) become 0, anything more
/// negative is a PSD violation (NumericalError).
std::vector<double> clamp_spectrum(std::vector<double> eigenvalues);

/// Tr(rho^2)
double purity(const DensityOperator& rho);
/// Tr(rho^2) >= 1 - 1e-9
bool is_pure(const DensityOperator& rho);

}  // namespace entroscope

#endif  // ENTROSCOPE_TENSOR_HPP
