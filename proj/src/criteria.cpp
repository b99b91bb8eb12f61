// SPDX-License-Identifier: Apache-2.0
#include "covsel/criteria.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"

namespace covsel {

namespace {

constexpr double kRidgeScale = 1e-8;

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double tic_trace(const FimPair& fim) {
  const RMatrix& observed = fim.observed;
  const Index n = observed.rows();
  auto trace_with = [&](const RMatrix& m) {
    const RPdFactor factor(m);
    return factor.solve(fim.sample).trace();
  };
  try {
    return trace_with(observed);
  } catch (const NotPositiveDefinite&) {
  }
  const double ridge = kRidgeScale * observed.trace() / static_cast<double>(n);
  try {
    if (ridge > 0.0) return trace_with(observed + ridge * RMatrix::Identity(n, n));
  } catch (const NotPositiveDefinite&) {
  }
  throw FimSingular("observed FIM cannot be inverted, even with ridge");
}

}  // namespace

Criterion Criterion::gic(double rho) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) {
    throw InvalidArgument("GIC requires rho >= 1, got " + format_number(rho));
  }
  return {CriterionKind::GIC, rho};
}

std::string Criterion::label() const {
  switch (kind) {
    case CriterionKind::AIC: return "aic";
    case CriterionKind::GIC: return "gic-" + format_number(rho);
    case CriterionKind::TIC: return "tic";
    case CriterionKind::AICc: return "aicc";
    case CriterionKind::BIC: return "bic";
    case CriterionKind::AsymptoticBIC: return "asymptotic-bic";
  }
  return "?";
}

Criterion Criterion::parse(std::string_view s) {
  if (s == "aic") return aic();
  if (s == "tic") return tic();
  if (s == "aicc") return aicc();
  if (s == "bic") return bic();
  if (s == "asymptotic-bic") return asymptotic_bic();
  if (s.starts_with("gic-") || s.starts_with("gic:")) {
    const std::string_view num = s.substr(4);
    double rho = 0.0;
    auto res = std::from_chars(num.data(), num.data() + num.size(), rho);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
      throw InvalidArgument("bad GIC factor in '" + std::string(s) + "'");
    }
    return gic(rho);
  }
  throw InvalidArgument("unknown criterion '" + std::string(s) +
                        "' (expected aic, gic-<rho>, tic, aicc, bic, asymptotic-bic)");
}

std::vector<Criterion> default_criteria() {
  return {Criterion::aic(), Criterion::gic(2.0), Criterion::gic(4.0), Criterion::tic(),
          Criterion::aicc(), Criterion::bic(), Criterion::asymptotic_bic()};
}

double penalty(const Criterion& c, Hypothesis h, Approach approach, Index n, Index k,
               const FimPair* fim) {
  const auto np = static_cast<double>(total_params(h, n, approach));
  switch (c.kind) {
    case CriterionKind::AIC: return 2.0 * np;
    case CriterionKind::GIC: return (1.0 + c.rho) * np;
    case CriterionKind::AICc: {
      const double count =
          static_cast<double>((approach == Approach::A ? k + 1 : k) * n);
      const double den = count - np - 1.0;
      if (!(den > 0.0)) {
        throw AiccDegenerate("AICc undefined: " + format_number(np) + " parameters for " +
                             format_number(count) + " samples");
      }
      return 2.0 * np * count / den;
    }
    case CriterionKind::AsymptoticBIC:
      return static_cast<double>(param_count(h, n)) * std::log(static_cast<double>(k));
    case CriterionKind::TIC:
    case CriterionKind::BIC: {
      if (fim == nullptr) throw InvalidArgument(c.label() + " needs the FIM estimates");
      if (c.kind == CriterionKind::TIC) return 2.0 * tic_trace(*fim);
      try {
        return RPdFactor(fim->observed).logdet();
      } catch (const NotPositiveDefinite&) {
        throw FimSingular("observed FIM is not positive definite");
      }
    }
  }
  return 0.0;
}

Evaluation evaluate(const Dataset& data, Approach approach, bool with_fim) {
  data.validate(approach);
  Evaluation out;
  out.approach = approach;
  out.N = data.N();
  out.K = data.K();
  out.with_fim = with_fim;
  for (Hypothesis h : kHypotheses) {
    HypothesisFit& fit = out.fits[static_cast<std::size_t>(index_of(h))];
    fit.hypothesis = h;
    try {
      fit.estimate = estimate(h, data, approach);
      const CovariancePoint at = CovariancePoint::from_estimate(*fit.estimate);
      const double s = approach == Approach::A
                           ? loglik_full(at, *fit.estimate->alpha_hat, *data.cut,
                                         data.secondary, *data.steering)
                           : loglik_secondary(at, data.secondary);
      fit.fit = -2.0 * s;
      if (!std::isfinite(fit.fit)) throw Error("non-finite log-likelihood");
    } catch (const Error& e) {
      fit.failure = e.what();
      continue;
    }
    if (!with_fim) continue;
    try {
      const StructureModel model(h, data.N());
      fit.fim = fim_pair(model, *fit.estimate, data, approach);
    } catch (const Error& e) {
      fit.fim_failure = e.what();
    }
  }
  return out;
}

bool Scorecard::partial_failure() const {
  for (const auto& s : scores) {
    if (!s.ok()) return true;
  }
  return false;
}

std::optional<Hypothesis> select(std::span<const HypothesisScore, 4> scores, Index n) {
  std::optional<Hypothesis> best;
  double best_total = std::numeric_limits<double>::infinity();
  Index best_m = 0;
  for (const auto& s : scores) {
    if (!s.ok() || !std::isfinite(s.total)) continue;
    const Index m = param_count(s.hypothesis, n);
    // Hypotheses are visited in index order, so strict comparisons keep the
    // lower index among exact ties.
    if (!best || s.total < best_total || (s.total == best_total && m < best_m)) {
      best = s.hypothesis;
      best_total = s.total;
      best_m = m;
    }
  }
  return best;
}

Scorecard score(const Evaluation& eval, const Criterion& c) {
  if (c.needs_fim() && !eval.with_fim) {
    throw InvalidArgument(c.label() + " needs an evaluation with FIM estimates");
  }
  Scorecard card;
  card.criterion = c;
  card.approach = eval.approach;
  for (std::size_t i = 0; i < 4; ++i) {
    const HypothesisFit& fit = eval.fits[i];
    HypothesisScore& s = card.scores[i];
    s.hypothesis = fit.hypothesis;
    if (!fit.ok()) {
      s.failure = fit.failure;
      continue;
    }
    s.fit = fit.fit;
    if (c.needs_fim() && !fit.fim) {
      s.failure = fit.fim_failure;
      continue;
    }
    try {
      s.penalty = penalty(c, fit.hypothesis, eval.approach, eval.N, eval.K,
                          fit.fim ? &*fit.fim : nullptr);
      s.total = s.fit + s.penalty;
    } catch (const Error& e) {
      s.failure = e.what();
    }
  }
  card.chosen = select(card.scores, eval.N);
  return card;
}

Scorecard classify(const Dataset& data, Approach approach, const Criterion& c) {
  return score(evaluate(data, approach, c.needs_fim()), c);
}

std::vector<std::vector<Scorecard>> classify_batch(std::span<const Dataset> datasets,
                                                   Approach approach,
                                                   std::span<const Criterion> criteria) {
  bool with_fim = false;
  for (const auto& c : criteria) with_fim = with_fim || c.needs_fim();
  std::vector<std::vector<Scorecard>> out;
  out.reserve(datasets.size());
  for (const Dataset& d : datasets) {
    const Evaluation eval = evaluate(d, approach, with_fim);
    std::vector<Scorecard> row;
    row.reserve(criteria.size());
    for (const auto& c : criteria) row.push_back(score(eval, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace covsel
