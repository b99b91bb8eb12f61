// SPDX-License-Identifier: Apache-2.0
#include "covsel/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"

namespace covsel {

ScenarioConfig ScenarioConfig::study(StudyCase c) {
  ScenarioConfig cfg;
  cfg.study_case = c;
  if (c == StudyCase::Case1) {
    cfg.sources = {{30.0, 0.85, 0.285}};
  } else {
    cfg.sources = {{20.0, 0.85, 0.285}, {30.0, 0.93, 0.05}};
  }
  return cfg;
}

void ScenarioConfig::validate() const {
  if (N < 2) throw InvalidArgument("scenario.N: need at least 2 channels");
  const std::size_t expected = study_case == StudyCase::Case1 ? 1 : 2;
  if (sources.size() != expected) {
    throw InvalidArgument("scenario.sources: case " +
                          std::to_string(static_cast<int>(study_case)) + " needs " +
                          std::to_string(expected) + " source(s), got " +
                          std::to_string(sources.size()));
  }
  for (const auto& s : sources) {
    if (!(s.rho > 0.0 && s.rho < 1.0)) {
      throw InvalidArgument("scenario.sources.rho: must lie in (0, 1)");
    }
    if (!(std::abs(s.doppler) < 0.5)) {
      throw InvalidArgument("scenario.sources.doppler: |f| must be below 0.5");
    }
    if (!std::isfinite(s.cnr_db)) throw InvalidArgument("scenario.sources.cnr_db: not finite");
  }
  if (!(sigma_d >= 0.0)) throw InvalidArgument("scenario.sigma_d: must be non-negative");
  if (!(noise_power > 0.0)) throw InvalidArgument("scenario.noise_power: must be positive");
  if (!std::isfinite(snr_db)) throw InvalidArgument("scenario.snr_db: not finite");
  if (!(std::abs(steering_doppler) < 0.5)) {
    throw InvalidArgument("scenario.steering_doppler: |f_v| must be below 0.5");
  }
}

CMatrix clutter_covariance(std::span<const ClutterSource> sources, Index n) {
  CVector lag = CVector::Zero(n);
  for (const auto& s : sources) {
    const double power = db_to_linear(s.cnr_db);
    for (Index d = 0; d < n; ++d) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(d) * s.doppler;
      lag(d) += power * std::pow(s.rho, static_cast<double>(d)) * std::polar(1.0, phase);
    }
  }
  lag(0) = lag(0).real();
  CMatrix r(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index h = 0; h < n; ++h) r(h, k) = h >= k ? lag(h - k) : std::conj(lag(k - h));
  }
  return r;
}

TruthInstance truth_instance(Hypothesis h, const ScenarioConfig& config, Rng& rng) {
  config.validate();
  const Index n = config.N;
  std::vector<ClutterSource> sources = config.sources;
  if (is_real_structure(h)) {
    for (auto& s : sources) s.doppler = 0.0;
  }

  TruthInstance out;
  out.hypothesis = h;
  out.R_clutter = clutter_covariance(sources, n);
  const CMatrix noise = config.noise_power * CMatrix::Identity(n, n);

  switch (h) {
    case Hypothesis::H1: {
      out.A_factor = CMatrix::Identity(n, n) + config.sigma_d * rng.complex_normal(n, n);
      out.M_true = hermitian_part(out.A_factor * out.R_clutter * out.A_factor.adjoint() + noise);
      break;
    }
    case Hypothesis::H2: {
      const RMatrix a = RMatrix::Identity(n, n) + config.sigma_d * rng.real_normal(n, n);
      const RMatrix r = out.R_clutter.real();
      RMatrix m = a * r * a.transpose();
      m = (0.5 * (m + m.transpose())).eval();
      m += config.noise_power * RMatrix::Identity(n, n);
      out.A_factor = a.cast<cplx>();
      out.M_true = m.cast<cplx>();
      break;
    }
    case Hypothesis::H3:
    case Hypothesis::H4: {
      out.A_factor = CMatrix::Identity(n, n);
      out.M_true = project(h, out.R_clutter + noise);
      break;
    }
  }
  return out;
}

CVector steering_vector(Index n, double doppler) {
  if (n < 1 || n % 2 == 0) {
    throw EvenNUnsupported("steering vector is defined for odd N only, got N=" +
                           std::to_string(n));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const Index half = (n - 1) / 2;
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double phase = 2.0 * std::numbers::pi * doppler * static_cast<double>(i - half);
    v(i) = i == half ? cplx(scale, 0.0) : std::polar(scale, phase);
  }
  return v;
}

Dataset sample_dataset(const TruthInstance& truth, const ScenarioConfig& config, Index k,
                       Rng& rng) {
  const Index n = truth.M_true.rows();
  const CPdFactor factor(truth.M_true);
  const CMatrix l = factor.lower();

  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const cplx alpha = std::polar(std::sqrt(db_to_linear(config.snr_db)), phi);

  Dataset out;
  out.secondary = l * rng.complex_normal(n, k);
  out.steering = steering_vector(n, config.steering_doppler);
  out.cut = alpha * *out.steering + l * rng.complex_normal(n, 1).col(0);
  out.true_alpha = alpha;
  return out;
}

}  // namespace covsel
