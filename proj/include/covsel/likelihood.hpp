// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "covsel/estimators.hpp"
#include "covsel/structures.hpp"
#include "covsel/types.hpp"

namespace covsel {

/// Covariance at which likelihood terms are evaluated: M, X = M^{-1} and
/// log det M, factorized once.
struct CovariancePoint {
  CMatrix M;
  CMatrix X;
  double logdet = 0.0;

  /// Factorizes M; throws NotPositiveDefinite.
  static CovariancePoint from_matrix(const CMatrix& m);
  static CovariancePoint from_estimate(const EstimateSet& e);
};

// Log-likelihoods of the complex circular Gaussian model.

/// s(p; z) = -N log pi - log det M - (z - alpha v)^H X (z - alpha v).
double loglik_cut(const CovariancePoint& at, cplx alpha, const CVector& z, const CVector& v);
double loglik_cut(const StructureModel& model, const RVector& theta, cplx alpha,
                  const CVector& z, const CVector& v);

/// s(theta; z_k) of a single target-free snapshot.
double loglik_snapshot(const CovariancePoint& at, const CVector& zk);

/// s(theta; Z) = -K [N log pi + log det M] - Tr(X S), S = Z Z^H.
double loglik_secondary(const CovariancePoint& at, const CMatrix& secondary);
double loglik_secondary(const StructureModel& model, const RVector& theta,
                        const CMatrix& secondary);

/// s(p; z, Z) = loglik_cut + loglik_secondary.
double loglik_full(const CovariancePoint& at, cplx alpha, const CVector& z,
                   const CMatrix& secondary, const CVector& v);
double loglik_full(const StructureModel& model, const RVector& theta, cplx alpha,
                   const CVector& z, const CMatrix& secondary, const CVector& v);

// Derivatives with respect to the real parameters p = [theta; Re alpha; Im alpha].

/// Gradient over theta of -log det M - Tr(X S_x) for a rank-one or general
/// Hermitian sample matrix S_x, via the explicit Kronecker form
///   Hermitian families: -(vec(X)^H C)^T + C^H (X* kron X) vec(S_x)
///   real families:      -(vec(X)^T C)^T + C^T (X kron X) vec(S_x).
RVector grad_theta(const StructureModel& model, const CovariancePoint& at,
                   const CMatrix& sample);
RVector grad_theta(const StructureModel& model, const RVector& theta, const CMatrix& sample);

/// Gradient of loglik_cut over (Re alpha, Im alpha).
Eigen::Vector2d grad_alpha(const CovariancePoint& at, cplx alpha, const CVector& z,
                           const CVector& v);

struct HessianBlocks {
  RMatrix theta_theta;         ///< m x m
  RMatrix alpha_theta;         ///< 2 x m, empty for Approach B
  Eigen::Matrix2d alpha_alpha;  ///< -2 v^H X v I_2, zero for Approach B
  Approach approach = Approach::B;

  /// Full Hessian [[Htt, Hat^T], [Hat, Haa]] (Approach A) or Htt (B).
  RMatrix assembled() const;
};

/// Hessian of loglik_full (Approach A, uses S + S_alpha and K + 1) or of
/// loglik_secondary (Approach B, uses S and K). `alpha` is ignored for B.
HessianBlocks hessian_blocks(const StructureModel& model, const CovariancePoint& at,
                             cplx alpha, const Dataset& data, Approach approach);

struct FimPair {
  RMatrix observed;  ///< negative Hessian at the estimates
  RMatrix sample;    ///< sum of score outer products at the estimates
};

/// Number of real parameters n_i: m_i + 2 for Approach A, m_i for B.
Index total_params(Hypothesis h, Index n, Approach approach);

RMatrix observed_fim(const StructureModel& model, const EstimateSet& est, const Dataset& data,
                     Approach approach);

/// Approach A: CUT score outer product plus secondary outer products with a
/// zero alpha block. Approach B: secondary outer products only.
RMatrix sample_fim(const StructureModel& model, const EstimateSet& est, const Dataset& data,
                   Approach approach);

FimPair fim_pair(const StructureModel& model, const EstimateSet& est, const Dataset& data,
                 Approach approach);

}  // namespace covsel
