// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covsel/estimators.hpp"
#include "covsel/likelihood.hpp"
#include "covsel/structures.hpp"
#include "covsel/types.hpp"

namespace covsel {

enum class CriterionKind { AIC, GIC, TIC, AICc, BIC, AsymptoticBIC };

/// A model order selection rule. GIC carries its penalty factor rho;
/// rho = 1 reproduces AIC.
struct Criterion {
  CriterionKind kind = CriterionKind::AIC;
  double rho = 0.0;

  static Criterion aic() { return {CriterionKind::AIC, 0.0}; }
  static Criterion gic(double rho);
  static Criterion tic() { return {CriterionKind::TIC, 0.0}; }
  static Criterion aicc() { return {CriterionKind::AICc, 0.0}; }
  static Criterion bic() { return {CriterionKind::BIC, 0.0}; }
  static Criterion asymptotic_bic() { return {CriterionKind::AsymptoticBIC, 0.0}; }

  /// aic, gic-<rho>, tic, aicc, bic, asymptotic-bic.
  std::string label() const;
  static Criterion parse(std::string_view s);

  bool needs_fim() const { return kind == CriterionKind::TIC || kind == CriterionKind::BIC; }

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// The seven rules reported for the study cases: AIC, GIC(2), GIC(4), TIC,
/// AICc, BIC, asymptotic BIC.
std::vector<Criterion> default_criteria();

/// Penalty term added to -2 s(p_hat). `fim` is required for TIC and BIC.
/// AICc counts (K+1)N complex samples for Approach A and KN for B.
double penalty(const Criterion& c, Hypothesis h, Approach approach, Index n, Index k,
               const FimPair* fim);

/// Everything about one hypothesis that the criteria share.
struct HypothesisFit {
  Hypothesis hypothesis = Hypothesis::H1;
  std::optional<EstimateSet> estimate;
  double fit = 0.0;  ///< -2 s(p_hat, H; Z_c)
  std::optional<FimPair> fim;
  std::string failure;      ///< non-empty when estimation or the fit failed
  std::string fim_failure;  ///< non-empty when the FIMs could not be formed
  bool ok() const { return failure.empty(); }
};

/// Per-dataset quantities computed once and scored by any number of rules.
struct Evaluation {
  Approach approach = Approach::B;
  Index N = 0;
  Index K = 0;
  bool with_fim = false;
  std::array<HypothesisFit, 4> fits;
};

Evaluation evaluate(const Dataset& data, Approach approach, bool with_fim);

struct HypothesisScore {
  Hypothesis hypothesis = Hypothesis::H1;
  double fit = 0.0;
  double penalty = 0.0;
  double total = 0.0;
  std::string failure;
  bool ok() const { return failure.empty(); }
};

struct Scorecard {
  Criterion criterion;
  Approach approach = Approach::B;
  std::array<HypothesisScore, 4> scores;
  /// Empty when every hypothesis failed.
  std::optional<Hypothesis> chosen;

  bool partial_failure() const;
};

/// Argmin over surviving hypotheses. Ties go to the smaller parameter count,
/// then to the lower hypothesis index.
std::optional<Hypothesis> select(std::span<const HypothesisScore, 4> scores, Index n);

Scorecard score(const Evaluation& eval, const Criterion& c);

Scorecard classify(const Dataset& data, Approach approach, const Criterion& c);

/// out[d][c] == classify(datasets[d], approach, criteria[c]); estimates and
/// FIMs are computed once per dataset.
std::vector<std::vector<Scorecard>> classify_batch(std::span<const Dataset> datasets,
                                                   Approach approach,
                                                   std::span<const Criterion> criteria);

}  // namespace covsel
