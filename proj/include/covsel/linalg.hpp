// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "covsel/types.hpp"

namespace covsel {

/// Column-stacking vectorization: vec(A)[col * rows + row] = A(row, col).
CVector vec(const CMatrix& a);

/// Inverse of vec for a matrix with `rows` rows.
CMatrix unvec(const CVector& v, Index rows);

CMatrix kron(const CMatrix& a, const CMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);

/// Anti-identity J with J(l,k) = 1 iff l + k = N + 1 (1-based).
RMatrix exchange(Index n);

/// J * conj(M) * J, evaluated by index reversal.
CMatrix flip_conj(const CMatrix& m);

/// J * M * J, evaluated by index reversal.
CMatrix flip(const CMatrix& m);

/// Largest absolute entry; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// (M + M^H) / 2 with an exactly real diagonal.
CMatrix hermitian_part(const CMatrix& m);

/// Cholesky factorization M = L L^H of a Hermitian positive definite matrix.
///
/// A pivot L(i,i)^2 <= 1e-12 * max_i M(i,i) is rejected with
/// NotPositiveDefinite; so is a non-positive or non-finite diagonal.
template <typename Scalar>
class PdFactor {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit PdFactor(const Matrix& m);

  Index size() const { return llt_.matrixLLT().rows(); }

  /// log det(M) = 2 * sum log L(i,i).
  double logdet() const;

  /// M^{-1}, Hermitian by construction.
  Matrix inverse() const;

  Matrix solve(const Matrix& rhs) const { return llt_.solve(rhs); }

  Matrix lower() const { return llt_.matrixL(); }

 private:
  Eigen::LLT<Matrix> llt_;
};

using CPdFactor = PdFactor<cplx>;
using RPdFactor = PdFactor<double>;

/// log det of a Hermitian positive definite matrix.
double logdet_pd(const CMatrix& m);

/// Inverse of a Hermitian positive definite matrix.
CMatrix invert_pd(const CMatrix& m);

}  // namespace covsel
