// SPDX-License-Identifier: Apache-2.0
// Shared fixtures for the unit tests.
#pragma once

#include <cmath>
#include <functional>

#include "covsel/estimators.hpp"
#include "covsel/linalg.hpp"
#include "covsel/rng.hpp"
#include "covsel/structures.hpp"
#include "covsel/types.hpp"

namespace covsel::testing {

inline CMatrix random_complex(Rng& rng, Index r, Index c) { return rng.complex_normal(r, c); }

/// Hermitian PD with eigenvalues bounded away from zero.
inline CMatrix random_pd(Rng& rng, Index n, double shift = 1.0) {
  const CMatrix b = rng.complex_normal(n, n);
  return hermitian_part(b * b.adjoint() / static_cast<double>(n) +
                        shift * CMatrix::Identity(n, n));
}

/// PD member of family h.
inline CMatrix random_structured(Rng& rng, Hypothesis h, Index n) {
  return project(h, random_pd(rng, n));
}

inline CVector random_unit(Rng& rng, Index n) {
  CVector v = rng.complex_normal(n, 1);
  return v / v.norm();
}

/// Frobenius relative error of `got` against `want`.
inline double rel_err(const RMatrix& got, const RMatrix& want) {
  const double scale = std::max(want.norm(), 1e-300);
  return (got - want).norm() / scale;
}

/// Central-difference step for coordinate value p.
inline double fd_step(double p) { return 1e-5 * std::max(1.0, std::abs(p)); }

/// Central-difference gradient of a scalar function of a real vector.
inline RVector fd_gradient(const std::function<double(const RVector&)>& f, const RVector& p) {
  RVector g(p.size());
  for (Index l = 0; l < p.size(); ++l) {
    const double h = fd_step(p(l));
    RVector up = p, dn = p;
    up(l) += h;
    dn(l) -= h;
    g(l) = (f(up) - f(dn)) / (2.0 * h);
  }
  return g;
}

/// Central-difference Jacobian of a vector function; row i is d g_i / d p.
inline RMatrix fd_jacobian(const std::function<RVector(const RVector&)>& g, const RVector& p) {
  const Index n = p.size();
  RMatrix jac(g(p).size(), n);
  for (Index l = 0; l < n; ++l) {
    const double h = fd_step(p(l));
    RVector up = p, dn = p;
    up(l) += h;
    dn(l) -= h;
    jac.col(l) = (g(up) - g(dn)) / (2.0 * h);
  }
  return jac;
}

/// Dataset with arbitrary (not necessarily ramp-shaped) unit steering.
inline Dataset random_dataset(Rng& rng, Index n, Index k) {
  Dataset d;
  d.secondary = rng.complex_normal(n, k);
  d.cut = CVector(rng.complex_normal(n, 1));
  d.steering = random_unit(rng, n);
  return d;
}

/// Persymmetric unit vector: J v* = v.
inline CVector random_persymmetric_unit(Rng& rng, Index n) {
  CVector v = rng.complex_normal(n, 1);
  CVector w = (v + exchange(n).cast<cplx>() * v.conjugate()) / 2.0;
  return w / w.norm();
}

}  // namespace covsel::testing
