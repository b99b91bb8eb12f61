// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>

#include "covsel/linalg.hpp"
#include "covsel/structures.hpp"
#include "covsel/types.hpp"

namespace covsel {

/// Snapshot data of one range cell.
struct Dataset {
  /// CUT (primary) snapshot z; required by Approach A.
  std::optional<CVector> cut;
  /// Secondary snapshots z_1..z_K as columns (N x K).
  CMatrix secondary;
  /// Unit-norm steering vector v; required by Approach A.
  std::optional<CVector> steering;
  /// Amplitude used when the data were simulated, for bookkeeping only.
  std::optional<cplx> true_alpha;

  Index N() const { return secondary.rows(); }
  Index K() const { return secondary.cols(); }

  /// Throws InvalidArgument naming the offending field. Approach A
  /// additionally requires `cut` and `steering`.
  void validate(Approach approach) const;
};

/// Plug-in estimates under one hypothesis.
struct EstimateSet {
  Hypothesis hypothesis;
  CMatrix M_hat;
  CMatrix X_hat;
  double logdet = 0.0;
  /// Present for Approach A only.
  std::optional<cplx> alpha_hat;
};

/// Sample covariance estimate under h: the unstructured S/K projected onto
/// the family (real part, centrohermitian average, or both).
CMatrix estimate_covariance(Hypothesis h, const CMatrix& secondary);

/// Amplitude estimate v^H X z / v^H X v specialised to each structure.
/// `x_hat` is the inverse of the structured covariance estimate.
cplx estimate_alpha(Hypothesis h, const CMatrix& x_hat, const CVector& z, const CVector& v);

EstimateSet estimate(Hypothesis h, const Dataset& data, Approach approach);

std::array<EstimateSet, 4> estimate_all(const Dataset& data, Approach approach);

}  // namespace covsel
