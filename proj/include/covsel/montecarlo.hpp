// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covsel/criteria.hpp"
#include "covsel/scenario.hpp"
#include "covsel/structures.hpp"

namespace covsel {

struct CampaignConfig {
  ScenarioConfig scenario = ScenarioConfig::study(StudyCase::Case1);
  std::vector<Index> K_grid = {20, 25, 30, 35, 40, 45};
  std::size_t trials = 1000;
  std::vector<Criterion> criteria = default_criteria();
  std::vector<Approach> approaches = {Approach::A, Approach::B};
  std::vector<Hypothesis> truths = {kHypotheses.begin(), kHypotheses.end()};
  std::uint64_t master_seed = 1;
  /// 0 selects COVSEL_WORKERS or the hardware concurrency.
  unsigned workers = 0;

  void validate() const;

  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

struct CellKey {
  Criterion criterion;
  Approach approach = Approach::B;
  Hypothesis truth = Hypothesis::H1;
  Index K = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellResult {
  CellKey key;
  std::size_t trials = 0;
  /// chosen[j] counts trials that selected hypothesis j + 1.
  std::array<std::size_t, 4> chosen{};
  /// Trials where every hypothesis failed; excluded from the P_cc denominator.
  std::size_t failed = 0;
  /// Trials decided over a reduced hypothesis set.
  std::size_t partial_failures = 0;
  /// Wall time spent on the (truth, K) group this cell belongs to.
  double seconds = 0.0;

  std::size_t decided() const { return trials - failed; }
  double pcc() const;
  double standard_error() const;
};

struct TrialFailure {
  CellKey key;
  std::size_t trial = 0;
  std::string message;
};

struct PccReport {
  CampaignConfig config;
  std::vector<CellResult> cells;
  std::vector<TrialFailure> failures;
  unsigned workers_used = 1;

  /// Throws MissingCell.
  const CellResult& cell(const Criterion& c, Approach a, Hypothesis truth, Index k) const;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Classifies `trials` datasets per (truth, K) with every criterion and
/// approach. Both approaches see the same datasets. Results depend only on
/// the config (including master_seed), never on the worker count.
PccReport run_campaign(const CampaignConfig& config, const ProgressFn& progress = {});

/// Row-normalized confusion matrix: rows are true hypotheses, columns the
/// chosen ones, each row summing to 1 over non-failed trials. Rows of truths
/// absent from the campaign are zero.
std::array<std::array<double, 4>, 4> confusion_histogram(const PccReport& report,
                                                         const Criterion& c, Approach a,
                                                         Index k);

/// The dataset a campaign draws for (truth, K, trial) under master_seed.
Dataset campaign_dataset(const ScenarioConfig& scenario, Hypothesis truth, Index k,
                         std::uint64_t master_seed, std::size_t trial);

/// Worker count used when CampaignConfig::workers is 0.
unsigned default_workers();

}  // namespace covsel
