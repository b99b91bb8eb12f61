// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "covsel/estimators.hpp"
#include "covsel/rng.hpp"
#include "covsel/structures.hpp"
#include "covsel/types.hpp"

namespace covsel {

/// One exponentially correlated interference source.
struct ClutterSource {
  double cnr_db = 30.0;   ///< clutter-to-noise ratio
  double rho = 0.85;      ///< one-lag correlation coefficient, 0 < rho < 1
  double doppler = 0.0;   ///< normalized Doppler, |f| < 0.5

  friend bool operator==(const ClutterSource&, const ClutterSource&) = default;
};

enum class StudyCase { Case1 = 1, Case2 = 2 };

struct ScenarioConfig {
  Index N = 13;
  StudyCase study_case = StudyCase::Case1;
  std::vector<ClutterSource> sources;
  double sigma_d = 0.15;          ///< channel-error standard deviation
  double noise_power = 1.0;       ///< thermal noise power sigma_n^2
  double snr_db = 10.0;
  double steering_doppler = 0.01;
  /// Draw the channel-error matrix once per hypothesis instead of per trial.
  bool freeze_channel_errors = false;

  /// Parameters of the two study cases (N = 13, sigma_d = 0.15).
  static ScenarioConfig study(StudyCase c);

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// R(h,k) = sum_l CNR_l rho_l^{|h-k|} exp(j 2 pi (h-k) f_l), CNR in linear units.
CMatrix clutter_covariance(std::span<const ClutterSource> sources, Index n);

struct TruthInstance {
  Hypothesis hypothesis = Hypothesis::H1;
  CMatrix M_true;
  CMatrix A_factor;
  CMatrix R_clutter;
};

/// Ground truth covariance A R A^H + sigma_n^2 I for hypothesis h.
/// H1/H2 perturb the channels (complex/real W), H3/H4 use A = I; H2/H4 force
/// zero Doppler on every source.
TruthInstance truth_instance(Hypothesis h, const ScenarioConfig& config, Rng& rng);

/// Symmetric phase ramp exp(j 2 pi f n)/sqrt(N), n = -(N-1)/2 .. (N-1)/2.
/// Throws EvenNUnsupported for even N.
CVector steering_vector(Index n, double doppler);

/// K target-free snapshots and one CUT snapshot alpha v + noise, with
/// alpha = sqrt(SNR) exp(j phi), phi uniform on (0, 2 pi).
Dataset sample_dataset(const TruthInstance& truth, const ScenarioConfig& config, Index k,
                       Rng& rng);

}  // namespace covsel
