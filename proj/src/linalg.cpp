// SPDX-License-Identifier: Apache-2.0
#include "covsel/linalg.hpp"

#include <cmath>
#include <string>

#include "covsel/errors.hpp"

namespace covsel {

namespace {

constexpr double kPivotTolerance = 1e-12;

template <typename Derived>
Derived kron_impl(const Derived& a, const Derived& b) {
  Derived out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

CVector vec(const CMatrix& a) {
  CVector out(a.size());
  for (Index c = 0; c < a.cols(); ++c) {
    for (Index r = 0; r < a.rows(); ++r) out(c * a.rows() + r) = a(r, c);
  }
  return out;
}

CMatrix unvec(const CVector& v, Index rows) {
  if (rows <= 0 || v.size() % rows != 0) {
    throw InvalidArgument("unvec: length " + std::to_string(v.size()) +
                          " is not a multiple of " + std::to_string(rows));
  }
  const Index cols = v.size() / rows;
  CMatrix out(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) out(r, c) = v(c * rows + r);
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return kron_impl(a, b); }
RMatrix kron(const RMatrix& a, const RMatrix& b) { return kron_impl(a, b); }

RMatrix exchange(Index n) {
  if (n < 1) throw InvalidArgument("exchange: size must be >= 1");
  RMatrix j = RMatrix::Zero(n, n);
  for (Index l = 0; l < n; ++l) j(l, n - 1 - l) = 1.0;
  return j;
}

CMatrix flip_conj(const CMatrix& m) {
  const Index r = m.rows();
  const Index c = m.cols();
  CMatrix out(r, c);
  for (Index j = 0; j < c; ++j) {
    for (Index i = 0; i < r; ++i) out(i, j) = std::conj(m(r - 1 - i, c - 1 - j));
  }
  return out;
}

CMatrix flip(const CMatrix& m) {
  const Index r = m.rows();
  const Index c = m.cols();
  CMatrix out(r, c);
  for (Index j = 0; j < c; ++j) {
    for (Index i = 0; i < r; ++i) out(i, j) = m(r - 1 - i, c - 1 - j);
  }
  return out;
}


CMatrix hermitian_part(const CMatrix& m) {
  CMatrix out = 0.5 * (m + m.adjoint());
  for (Index i = 0; i < out.rows(); ++i) out(i, i) = out(i, i).real();
  return out;
}

template <typename Scalar>
PdFactor<Scalar>::PdFactor(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidArgument("PdFactor: matrix must be square and non-empty");
  }
  double max_diag = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    const double d = std::real(m(i, i));
    if (!std::isfinite(d) || d <= 0.0) {
      throw NotPositiveDefinite("non-positive diagonal entry at index " + std::to_string(i));
    }
    max_diag = std::max(max_diag, d);
  }
  llt_.compute(m);
  if (llt_.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky factorization failed");
  }
  const auto& l = llt_.matrixLLT();
  for (Index i = 0; i < m.rows(); ++i) {
    const double pivot = std::norm(l(i, i));
    if (!std::isfinite(pivot) || pivot <= kPivotTolerance * max_diag) {
      throw NotPositiveDefinite("pivot " + std::to_string(i) + " below tolerance");
    }
  }
}

template <typename Scalar>
double PdFactor<Scalar>::logdet() const {
  const auto& l = llt_.matrixLLT();
  double acc = 0.0;
  for (Index i = 0; i < l.rows(); ++i) acc += std::log(std::real(l(i, i)));
  return 2.0 * acc;
}

template <typename Scalar>
typename PdFactor<Scalar>::Matrix PdFactor<Scalar>::inverse() const {
  Matrix x = llt_.solve(Matrix::Identity(size(), size()));
  Matrix h = Scalar(0.5) * (x + x.adjoint());
  for (Index i = 0; i < h.rows(); ++i) h(i, i) = std::real(h(i, i));
  return h;
}

template class PdFactor<cplx>;
template class PdFactor<double>;

double logdet_pd(const CMatrix& m) { return CPdFactor(m).logdet(); }

CMatrix invert_pd(const CMatrix& m) { return CPdFactor(m).inverse(); }

}  // namespace covsel
