// SPDX-License-Identifier: Apache-2.0
#include "covsel/commands.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "covsel/errors.hpp"
#include "covsel/io.hpp"

namespace covsel {

namespace {

namespace fs = std::filesystem;

struct RunArgs {
  std::string config;
  std::optional<int> study_case;
  std::optional<Index> n;
  std::vector<std::string> approaches;
  std::vector<std::string> criteria;
  std::vector<Index> k_grid;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string out_dir;
  bool plot = false;
  bool dump_config = false;
  bool quiet = false;
};

struct ClassifyArgs {
  std::string data;
  std::string approach = "B";
  std::string criterion = "asymptotic-bic";
};

struct PlotArgs {
  std::string results;
  std::string out_dir;
};

struct SimulateArgs {
  int study_case = 1;
  std::optional<Index> n;
  std::string truth = "H1";
  Index k = 26;
  std::uint64_t seed = 1;
  std::size_t trial = 0;
  std::string out;
};

Approach approach_from(const std::string& s) {
  if (s == "A" || s == "a") return Approach::A;
  if (s == "B" || s == "b") return Approach::B;
  throw InvalidArgument("approach: expected A or B, got '" + s + "'");
}

Hypothesis hypothesis_from(const std::string& s) {
  const auto h = parse_hypothesis(s);
  if (!h) throw InvalidArgument("truth: unknown hypothesis '" + s + "'");
  return *h;
}

StudyCase case_from(int c) {
  if (c == 1) return StudyCase::Case1;
  if (c == 2) return StudyCase::Case2;
  throw InvalidArgument("case: must be 1 or 2");
}

void write_plots(const std::vector<ResultRow>& rows, const fs::path& dir, std::ostream& out,
                 std::ostream& err) {
  std::vector<std::string> warnings;
  const auto plots = render_plots(rows, warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  for (const auto& p : plots) {
    write_file((dir / p.name).string(), p.svg);
    out << "wrote " << (dir / p.name).string() << "\n";
  }
}

int do_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentFile file = a.config.empty() ? ExperimentFile{} : load_experiment(a.config);
  CampaignConfig& c = file.campaign;
  if (a.study_case) {
    const Index n = c.scenario.N;
    c.scenario = ScenarioConfig::study(case_from(*a.study_case));
    c.scenario.N = n;
  }
  if (a.n) c.scenario.N = *a.n;
  if (!a.approaches.empty()) {
    c.approaches.clear();
    for (const auto& s : a.approaches) c.approaches.push_back(approach_from(s));
  }
  if (!a.criteria.empty()) {
    c.criteria.clear();
    for (const auto& s : a.criteria) c.criteria.push_back(Criterion::parse(s));
  }
  if (!a.k_grid.empty()) c.K_grid = a.k_grid;
  if (a.trials) c.trials = *a.trials;
  if (a.seed) c.master_seed = *a.seed;
  if (a.workers) c.workers = *a.workers;
  if (!a.out_dir.empty()) file.out_dir = a.out_dir;
  if (a.plot) file.plot = true;

  if (a.dump_config) {
    out << dump_experiment(file);
    return kExitOk;
  }
  c.validate();

  std::size_t last = 0;
  ProgressFn progress;
  if (!a.quiet) {
    progress = [&](std::size_t done, std::size_t total) {
      const std::size_t pct = total ? 100 * done / total : 100;
      if (pct >= last + 10 || done == total) {
        last = pct;
        err << "progress: " << done << "/" << total << " trials\n";
      }
    };
  }
  const PccReport report = run_campaign(c, progress);

  const fs::path dir(file.out_dir);
  fs::create_directories(dir);
  const std::string csv = results_csv(report);
  write_file((dir / "results.csv").string(), csv);
  write_file((dir / "results.json").string(), results_json(report));
  out << "wrote " << (dir / "results.csv").string() << " (" << report.cells.size()
      << " rows, master_seed " << c.master_seed << ", config " << config_hash(c) << ")\n";
  out << "wrote " << (dir / "results.json").string() << "\n";
  if (file.plot) write_plots(parse_results_csv(csv), dir, out, err);
  return kExitOk;
}

int do_classify(const ClassifyArgs& a, std::ostream& out) {
  const Dataset data = read_snapshots(read_file(a.data));
  const Approach approach = approach_from(a.approach);
  const Criterion criterion = Criterion::parse(a.criterion);
  data.validate(approach);
  out << scorecard_json(classify(data, approach, criterion));
  return kExitOk;
}

int do_plot(const PlotArgs& a, std::ostream& out, std::ostream& err) {
  const auto rows = parse_results_csv(read_file(a.results));
  fs::path dir = a.out_dir.empty() ? fs::path(a.results).parent_path() : fs::path(a.out_dir);
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  write_plots(rows, dir, out, err);
  return kExitOk;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  ScenarioConfig scenario = ScenarioConfig::study(case_from(a.study_case));
  if (a.n) scenario.N = *a.n;
  scenario.validate();
  if (a.k < 1) throw InvalidArgument("K: must be positive");
  const Dataset data = campaign_dataset(scenario, hypothesis_from(a.truth), a.k, a.seed, a.trial);
  std::string text = write_snapshots(data);
  text = "# simulated: case " + std::to_string(a.study_case) + ", truth " + a.truth +
         ", seed " + std::to_string(a.seed) + ", trial " + std::to_string(a.trial) + "\n" + text;
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
    out << "wrote " << a.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariance structure classification from radar snapshots", "covsel"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo classification campaign");
  run_cmd->add_option("--config", run.config, "Experiment JSON file");
  run_cmd->add_option("--case", run.study_case, "Study case (1 or 2)");
  run_cmd->add_option("--N", run.n, "Number of channels");
  run_cmd->add_option("--approach", run.approaches, "Approaches (A, B)")->delimiter(',');
  run_cmd->add_option("--criteria", run.criteria, "Criteria labels")->delimiter(',');
  run_cmd->add_option("--K", run.k_grid, "Secondary sample sizes")->delimiter(',');
  run_cmd->add_option("--trials", run.trials, "Trials per (truth, K)");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--workers", run.workers, "Worker threads (0 = COVSEL_WORKERS or all cores)");
  run_cmd->add_option("--out-dir", run.out_dir, "Output directory");
  run_cmd->add_flag("--plot", run.plot, "Also write SVG plots");
  run_cmd->add_flag("--dump-config", run.dump_config, "Print the effective config and exit");
  run_cmd->add_flag("--quiet", run.quiet, "No progress output");

  ClassifyArgs cls;
  auto* cls_cmd = app.add_subcommand("classify", "Classify one snapshot file");
  cls_cmd->add_option("data", cls.data, "Snapshot file")->required();
  cls_cmd->add_option("--approach", cls.approach, "A or B");
  cls_cmd->add_option("--criterion", cls.criterion, "Criterion label");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render P_cc curves from a results CSV");
  plot_cmd->add_option("results", plot.results, "results.csv")->required();
  plot_cmd->add_option("--out-dir", plot.out_dir, "Output directory (default: next to the CSV)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Write one simulated dataset as a snapshot file");
  sim_cmd->add_option("--case", sim.study_case, "Study case (1 or 2)");
  sim_cmd->add_option("--N", sim.n, "Number of channels");
  sim_cmd->add_option("--truth", sim.truth, "True hypothesis (H1..H4)");
  sim_cmd->add_option("--K", sim.k, "Secondary sample size");
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--trial", sim.trial, "Trial index within the campaign streams");
  sim_cmd->add_option("--out", sim.out, "Output file (default: stdout)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("covsel");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return do_run(run, out, err);
    if (*cls_cmd) return do_classify(cls, out);
    if (*plot_cmd) return do_plot(plot, out, err);
    if (*sim_cmd) return do_simulate(sim, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace covsel
