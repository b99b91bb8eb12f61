// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "covsel/estimators.hpp"
#include "covsel/montecarlo.hpp"

namespace covsel {

inline constexpr int kExperimentSchema = 1;
inline constexpr int kResultsSchema = 1;

/// Experiment file: campaign settings plus output options.
struct ExperimentFile {
  int schema_version = kExperimentSchema;
  CampaignConfig campaign;
  std::string out_dir = "results";
  bool plot = false;

  friend bool operator==(const ExperimentFile&, const ExperimentFile&) = default;
};

/// Parses the JSON experiment format. Missing keys take the Case 1
/// defaults; unknown keys raise FormatError naming the key.
ExperimentFile parse_experiment(std::string_view json_text);
/// Canonical JSON text (sorted keys, 2-space indent).
std::string dump_experiment(const ExperimentFile& file);
ExperimentFile load_experiment(const std::string& path);

/// FNV-1a 64 of the canonical campaign dump, as 16 hex digits.
std::string config_hash(const CampaignConfig& config);

/// One row of the results table.
struct ResultRow {
  int schema_version = kResultsSchema;
  int study_case = 1;
  std::string criterion;
  std::string approach;
  std::string truth;
  Index K = 0;
  std::size_t trials = 0;
  double pcc = 0.0;
  double stderr_pcc = 0.0;
  std::array<std::size_t, 4> chosen{};
  std::size_t failed = 0;
  std::size_t partial_failures = 0;
  std::uint64_t master_seed = 0;
};

std::string results_csv_header();
/// Deterministic CSV: fixed header, one row per cell in report order.
std::string results_csv(const PccReport& report);
/// Throws FormatError naming the line.
std::vector<ResultRow> parse_results_csv(std::string_view text);

/// JSON mirror of the CSV with provenance and per-cell timing.
std::string results_json(const PccReport& report);

/// Text snapshot container; grammar in README.md.
std::string write_snapshots(const Dataset& data);
/// Throws FormatError naming the line.
Dataset read_snapshots(std::string_view text);

/// Scorecard as JSON text.
std::string scorecard_json(const Scorecard& card);

struct PlotFile {
  std::string name;
  std::string svg;
};

/// One SVG per (truth, approach): P_cc against K, one polyline per
/// criterion. Cells without decided trials are dropped with a warning.
std::vector<PlotFile> render_plots(const std::vector<ResultRow>& rows,
                                   std::vector<std::string>& warnings);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace covsel
