// SPDX-License-Identifier: Apache-2.0
#include "covsel/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

#include "covsel/errors.hpp"

namespace covsel {

namespace {

// Stream tags keep truth draws and data draws independent.
constexpr std::uint64_t kTruthStream = 1;
constexpr std::uint64_t kDataStream = 2;

struct TaskResult {
  std::vector<std::int8_t> chosen;  // per (approach, criterion); -1 = all failed
  std::vector<std::uint8_t> partial;
  std::vector<std::string> messages;  // only for failed outcomes
  double seconds = 0.0;
};

struct Task {
  Hypothesis truth;
  Index k;
  std::size_t trial;
};

TaskResult run_trial(const CampaignConfig& cfg, const Task& task, bool with_fim) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t slots = cfg.approaches.size() * cfg.criteria.size();
  TaskResult out;
  out.chosen.assign(slots, -1);
  out.partial.assign(slots, 0);
  out.messages.assign(slots, {});

  try {
    const Dataset data =
        campaign_dataset(cfg.scenario, task.truth, task.k, cfg.master_seed, task.trial);

    for (std::size_t a = 0; a < cfg.approaches.size(); ++a) {
      const Evaluation eval = evaluate(data, cfg.approaches[a], with_fim);
      for (std::size_t c = 0; c < cfg.criteria.size(); ++c) {
        const std::size_t slot = a * cfg.criteria.size() + c;
        const Scorecard card = score(eval, cfg.criteria[c]);
        if (card.chosen) {
          out.chosen[slot] = static_cast<std::int8_t>(index_of(*card.chosen));
          out.partial[slot] = card.partial_failure() ? 1 : 0;
        } else {
          std::string msg;
          for (const auto& s : card.scores) {
            if (!msg.empty()) msg += "; ";
            msg += std::string(to_string(s.hypothesis)) + ": " + s.failure;
          }
          out.messages[slot] = std::move(msg);
        }
      }
    }
  } catch (const Error& e) {
    std::fill(out.chosen.begin(), out.chosen.end(), std::int8_t{-1});
    std::fill(out.messages.begin(), out.messages.end(), std::string("trial: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

Dataset campaign_dataset(const ScenarioConfig& scenario, Hypothesis truth, Index k,
                         std::uint64_t master_seed, std::size_t trial) {
  const auto h = static_cast<std::uint64_t>(truth);
  const auto kk = static_cast<std::uint64_t>(k);
  const auto t = static_cast<std::uint64_t>(trial);
  Rng truth_rng = scenario.freeze_channel_errors
                      ? Rng::stream(master_seed, {kTruthStream, h})
                      : Rng::stream(master_seed, {kTruthStream, h, kk, t});
  Rng data_rng = Rng::stream(master_seed, {kDataStream, h, kk, t});
  const TruthInstance instance = truth_instance(truth, scenario, truth_rng);
  return sample_dataset(instance, scenario, k, data_rng);
}

void CampaignConfig::validate() const {
  scenario.validate();
  if (K_grid.empty()) throw InvalidArgument("campaign.K: grid is empty");
  for (Index k : K_grid) {
    if (k <= scenario.N) {
      throw InvalidArgument("campaign.K: every K must exceed N=" + std::to_string(scenario.N) +
                            ", got " + std::to_string(k));
    }
  }
  if (trials < 1) throw InvalidArgument("campaign.trials: must be at least 1");
  if (criteria.empty()) throw InvalidArgument("campaign.criteria: list is empty");
  if (approaches.empty()) throw InvalidArgument("campaign.approaches: list is empty");
  if (truths.empty()) throw InvalidArgument("campaign.truths: list is empty");
  for (Approach a : approaches) {
    if (a == Approach::A && scenario.N % 2 == 0) {
      throw InvalidArgument("campaign.approaches: Approach A needs odd N for the steering vector");
    }
  }
}

double CellResult::pcc() const {
  const std::size_t n = decided();
  if (n == 0) return 0.0;
  return static_cast<double>(chosen[static_cast<std::size_t>(index_of(key.truth))]) /
         static_cast<double>(n);
}

double CellResult::standard_error() const {
  const std::size_t n = decided();
  if (n == 0) return 0.0;
  const double p = pcc();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

const CellResult& PccReport::cell(const Criterion& c, Approach a, Hypothesis truth,
                                  Index k) const {
  for (const auto& cell : cells) {
    if (cell.key == CellKey{c, a, truth, k}) return cell;
  }
  throw MissingCell("no cell for " + c.label() + ", approach " + to_string(a) + ", truth " +
                    std::string(to_string(truth)) + ", K=" + std::to_string(k));
}

unsigned default_workers() {
  if (const char* env = std::getenv("COVSEL_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

PccReport run_campaign(const CampaignConfig& config, const ProgressFn& progress) {
  config.validate();
  bool with_fim = false;
  for (const auto& c : config.criteria) with_fim = with_fim || c.needs_fim();

  std::vector<Task> tasks;
  tasks.reserve(config.truths.size() * config.K_grid.size() * config.trials);
  for (Hypothesis h : config.truths) {
    for (Index k : config.K_grid) {
      for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({h, k, t});
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_trial(config, tasks[i], with_fim);
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(d, tasks.size());
      }
    }
  };

  const unsigned workers = std::max(
      1u, std::min<unsigned>(config.workers == 0 ? default_workers() : config.workers,
                             static_cast<unsigned>(tasks.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  PccReport report;
  report.config = config;
  report.workers_used = workers;
  const std::size_t nk = config.K_grid.size();
  const std::size_t nc = config.criteria.size();
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t a = 0; a < config.approaches.size(); ++a) {
      for (std::size_t hi = 0; hi < config.truths.size(); ++hi) {
        for (std::size_t ki = 0; ki < nk; ++ki) {
          CellResult cell;
          cell.key = {config.criteria[c], config.approaches[a], config.truths[hi],
                      config.K_grid[ki]};
          cell.trials = config.trials;
          const std::size_t slot = a * nc + c;
          const std::size_t base = (hi * nk + ki) * config.trials;
          for (std::size_t t = 0; t < config.trials; ++t) {
            const TaskResult& r = results[base + t];
            cell.seconds += r.seconds;
            const int chosen = r.chosen[slot];
            if (chosen < 0) {
              ++cell.failed;
              report.failures.push_back({cell.key, t, r.messages[slot]});
            } else {
              ++cell.chosen[static_cast<std::size_t>(chosen)];
              cell.partial_failures += r.partial[slot];
            }
          }
          report.cells.push_back(cell);
        }
      }
    }
  }
  return report;
}

std::array<std::array<double, 4>, 4> confusion_histogram(const PccReport& report,
                                                         const Criterion& c, Approach a,
                                                         Index k) {
  std::array<std::array<double, 4>, 4> out{};
  bool any = false;
  for (Hypothesis truth : report.config.truths) {
    const CellResult& cell = report.cell(c, a, truth, k);
    any = true;
    const std::size_t n = cell.decided();
    if (n == 0) continue;
    auto& row = out[static_cast<std::size_t>(index_of(truth))];
    for (std::size_t j = 0; j < 4; ++j) {
      row[j] = static_cast<double>(cell.chosen[j]) / static_cast<double>(n);
    }
  }
  if (!any) throw MissingCell("campaign has no truths");
  return out;
}

}  // namespace covsel
