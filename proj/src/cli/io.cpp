// SPDX-License-Identifier: Apache-2.0
#include "covsel/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <system_error>

#include "covsel/errors.hpp"
#include "json.hpp"

namespace covsel {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view s, const std::string& where) {
  T value{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw FormatError(where + ": cannot parse number '" + std::string(s) + "'");
  }
  return value;
}

// Strict JSON readers ------------------------------------------------------

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw FormatError(path + ": expected a number");
  return j.get<double>();
}

std::int64_t get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t get_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  throw FormatError(path + ": expected a non-negative integer");
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw FormatError(path + ": expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path + ": expected a string");
  return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path + ": expected an array");
  return j;
}

Approach parse_approach(const std::string& s, const std::string& path) {
  if (s == "A" || s == "a") return Approach::A;
  if (s == "B" || s == "b") return Approach::B;
  throw FormatError(path + ": unknown approach '" + s + "' (expected A or B)");
}

StudyCase parse_case(std::int64_t c, const std::string& path) {
  if (c == 1) return StudyCase::Case1;
  if (c == 2) return StudyCase::Case2;
  throw FormatError(path + ": study case must be 1 or 2");
}

ClutterSource parse_source(const json& j, const std::string& path) {
  expect_object(j, path);
  ClutterSource s;
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "." + key;
    if (key == "cnr_db") {
      s.cnr_db = get_double(value, p);
    } else if (key == "rho") {
      s.rho = get_double(value, p);
    } else if (key == "doppler") {
      s.doppler = get_double(value, p);
    } else {
      throw FormatError("unknown key '" + p + "'");
    }
  }
  return s;
}

ScenarioConfig parse_scenario(const json& j) {
  expect_object(j, "scenario");
  ScenarioConfig cfg = ScenarioConfig::study(StudyCase::Case1);
  if (j.contains("case")) {
    cfg = ScenarioConfig::study(parse_case(get_int(j.at("case"), "scenario.case"), "scenario.case"));
  }
  for (const auto& [key, value] : j.items()) {
    const std::string p = "scenario." + key;
    if (key == "case") {
      continue;
    } else if (key == "N") {
      cfg.N = get_int(value, p);
    } else if (key == "sources") {
      cfg.sources.clear();
      std::size_t i = 0;
      for (const auto& s : get_array(value, p)) {
        cfg.sources.push_back(parse_source(s, p + "[" + std::to_string(i++) + "]"));
      }
    } else if (key == "sigma_d") {
      cfg.sigma_d = get_double(value, p);
    } else if (key == "noise_power") {
      cfg.noise_power = get_double(value, p);
    } else if (key == "snr_db") {
      cfg.snr_db = get_double(value, p);
    } else if (key == "steering_doppler") {
      cfg.steering_doppler = get_double(value, p);
    } else if (key == "freeze_channel_errors") {
      cfg.freeze_channel_errors = get_bool(value, p);
    } else {
      throw FormatError("unknown key '" + p + "'");
    }
  }
  return cfg;
}

json dump_campaign(const CampaignConfig& c) {
  json sources = json::array();
  for (const auto& s : c.scenario.sources) {
    sources.push_back({{"cnr_db", s.cnr_db}, {"rho", s.rho}, {"doppler", s.doppler}});
  }
  json criteria = json::array();
  for (const auto& x : c.criteria) criteria.push_back(x.label());
  json approaches = json::array();
  for (auto a : c.approaches) approaches.push_back(to_string(a));
  json truths = json::array();
  for (auto h : c.truths) truths.push_back(std::string(to_string(h)));
  return {{"scenario",
           {{"case", static_cast<int>(c.scenario.study_case)},
            {"N", c.scenario.N},
            {"sources", sources},
            {"sigma_d", c.scenario.sigma_d},
            {"noise_power", c.scenario.noise_power},
            {"snr_db", c.scenario.snr_db},
            {"steering_doppler", c.scenario.steering_doppler},
            {"freeze_channel_errors", c.scenario.freeze_channel_errors}}},
          {"K", c.K_grid},
          {"trials", c.trials},
          {"criteria", criteria},
          {"approaches", approaches},
          {"truths", truths},
          {"seed", c.master_seed},
          {"workers", c.workers}};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

}  // namespace

ExperimentFile parse_experiment(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("experiment file is not valid JSON: ") + e.what());
  }
  expect_object(j, "experiment");
  ExperimentFile out;
  if (j.contains("schema_version")) {
    const auto v = get_int(j.at("schema_version"), "schema_version");
    if (v != kExperimentSchema) {
      throw FormatError("schema_version: unsupported version " + std::to_string(v));
    }
  }
  if (j.contains("scenario")) out.campaign.scenario = parse_scenario(j.at("scenario"));
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version" || key == "scenario") {
      continue;
    } else if (key == "K") {
      out.campaign.K_grid.clear();
      for (const auto& k : get_array(value, key)) out.campaign.K_grid.push_back(get_int(k, "K"));
    } else if (key == "trials") {
      const auto t = get_int(value, key);
      if (t < 1) throw FormatError("trials: must be at least 1");
      out.campaign.trials = static_cast<std::size_t>(t);
    } else if (key == "criteria") {
      out.campaign.criteria.clear();
      for (const auto& c : get_array(value, key)) {
        try {
          out.campaign.criteria.push_back(Criterion::parse(get_string(c, key)));
        } catch (const FormatError&) {
          throw;
        } catch (const InvalidArgument& e) {
          throw FormatError(std::string("criteria: ") + e.what());
        }
      }
    } else if (key == "approaches") {
      out.campaign.approaches.clear();
      for (const auto& a : get_array(value, key)) {
        out.campaign.approaches.push_back(parse_approach(get_string(a, key), key));
      }
    } else if (key == "truths") {
      out.campaign.truths.clear();
      for (const auto& t : get_array(value, key)) {
        const std::string s = get_string(t, key);
        const auto h = parse_hypothesis(s);
        if (!h) throw FormatError("truths: unknown hypothesis '" + s + "'");
        out.campaign.truths.push_back(*h);
      }
    } else if (key == "seed") {
      out.campaign.master_seed = get_uint(value, key);
    } else if (key == "workers") {
      out.campaign.workers = static_cast<unsigned>(get_uint(value, key));
    } else if (key == "output") {
      expect_object(value, key);
      for (const auto& [k2, v2] : value.items()) {
        const std::string p = "output." + k2;
        if (k2 == "dir") {
          out.out_dir = get_string(v2, p);
        } else if (k2 == "plot") {
          out.plot = get_bool(v2, p);
        } else {
          throw FormatError("unknown key '" + p + "'");
        }
      }
    } else {
      throw FormatError("unknown key '" + key + "'");
    }
  }
  return out;
}

std::string dump_experiment(const ExperimentFile& file) {
  json j = dump_campaign(file.campaign);
  j["schema_version"] = file.schema_version;
  j["output"] = {{"dir", file.out_dir}, {"plot", file.plot}};
  return j.dump(2) + "\n";
}

ExperimentFile load_experiment(const std::string& path) { return parse_experiment(read_file(path)); }

std::string config_hash(const CampaignConfig& config) {
  const std::string text = dump_campaign(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string results_csv_header() {
  return "schema_version,case,criterion,approach,truth,K,trials,pcc,stderr,"
         "chosen_h1,chosen_h2,chosen_h3,chosen_h4,failed,partial_failures,master_seed";
}

std::string results_csv(const PccReport& report) {
  std::ostringstream os;
  os << results_csv_header() << "\n";
  const int study_case = static_cast<int>(report.config.scenario.study_case);
  for (const auto& cell : report.cells) {
    os << kResultsSchema << ',' << study_case << ',' << cell.key.criterion.label() << ','
       << to_string(cell.key.approach) << ',' << to_string(cell.key.truth) << ',' << cell.key.K
       << ',' << cell.trials << ',' << num(cell.pcc()) << ',' << num(cell.standard_error());
    for (auto c : cell.chosen) os << ',' << c;
    os << ',' << cell.failed << ',' << cell.partial_failures << ',' << report.config.master_seed
       << "\n";
  }
  return os.str();
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw FormatError("line 1: empty results file");
  if (lines[0] != results_csv_header()) {
    throw FormatError("line 1: unexpected header (expected '" + results_csv_header() + "')");
  }
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const auto f = split(lines[i], ',');
    if (f.size() != 16) {
      throw FormatError(where + ": expected 16 fields, got " + std::to_string(f.size()));
    }
    ResultRow r;
    r.schema_version = parse_number<int>(f[0], where);
    if (r.schema_version != kResultsSchema) {
      throw FormatError(where + ": unsupported schema_version " + std::string(f[0]));
    }
    r.study_case = parse_number<int>(f[1], where);
    r.criterion = std::string(f[2]);
    r.approach = std::string(f[3]);
    r.truth = std::string(f[4]);
    r.K = parse_number<Index>(f[5], where);
    r.trials = parse_number<std::size_t>(f[6], where);
    r.pcc = parse_number<double>(f[7], where);
    r.stderr_pcc = parse_number<double>(f[8], where);
    for (std::size_t c = 0; c < 4; ++c) r.chosen[c] = parse_number<std::size_t>(f[9 + c], where);
    r.failed = parse_number<std::size_t>(f[13], where);
    r.partial_failures = parse_number<std::size_t>(f[14], where);
    r.master_seed = parse_number<std::uint64_t>(f[15], where);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string results_json(const PccReport& report) {
  json cells = json::array();
  for (const auto& cell : report.cells) {
    cells.push_back({{"criterion", cell.key.criterion.label()},
                     {"approach", to_string(cell.key.approach)},
                     {"truth", std::string(to_string(cell.key.truth))},
                     {"K", cell.key.K},
                     {"trials", cell.trials},
                     {"pcc", cell.pcc()},
                     {"stderr", cell.standard_error()},
                     {"chosen", cell.chosen},
                     {"failed", cell.failed},
                     {"partial_failures", cell.partial_failures},
                     {"seconds", cell.seconds}});
  }
  constexpr std::size_t kMaxFailures = 1000;
  json failures = json::array();
  for (std::size_t i = 0; i < report.failures.size() && i < kMaxFailures; ++i) {
    const auto& f = report.failures[i];
    failures.push_back({{"criterion", f.key.criterion.label()},
                        {"approach", to_string(f.key.approach)},
                        {"truth", std::string(to_string(f.key.truth))},
                        {"K", f.key.K},
                        {"trial", f.trial},
                        {"message", f.message}});
  }
  json confusion = json::array();
  for (const auto& c : report.config.criteria)
    for (auto a : report.config.approaches)
      for (Index k : report.config.K_grid) {
        confusion.push_back({{"criterion", c.label()},
                             {"approach", to_string(a)},
                             {"K", k},
                             {"rows", confusion_histogram(report, c, a, k)}});
      }
  const json j = {{"schema_version", kResultsSchema},
                  {"config", dump_campaign(report.config)},
                  {"config_hash", config_hash(report.config)},
                  {"master_seed", report.config.master_seed},
                  {"workers_used", report.workers_used},
                  {"cells", cells},
                  {"confusion", confusion},
                  {"failure_count", report.failures.size()},
                  {"failures", failures}};
  return j.dump(2) + "\n";
}

// Snapshot container ---------------------------------------------------------

std::string write_snapshots(const Dataset& data) {
  std::ostringstream os;
  os << "covsel-snapshots v1\n";
  os << "N " << data.N() << "\n";
  os << "K " << data.K() << "\n";
  auto vector_section = [&](const char* name, const CVector& v) {
    os << "[" << name << "]\n";
    for (Index i = 0; i < v.size(); ++i) os << num(v(i).real()) << ' ' << num(v(i).imag()) << "\n";
  };
  if (data.steering) vector_section("steering", *data.steering);
  if (data.cut) vector_section("cut", *data.cut);
  os << "[secondary]\n";
  for (Index i = 0; i < data.N(); ++i) {
    for (Index k = 0; k < data.K(); ++k) {
      if (k > 0) os << ' ';
      os << num(data.secondary(i, k).real()) << ' ' << num(data.secondary(i, k).imag());
    }
    os << "\n";
  }
  return os.str();
}

Dataset read_snapshots(std::string_view text) {
  const auto lines = lines_of(text);
  std::size_t i = 0;
  auto where = [&](std::size_t l) { return "line " + std::to_string(l + 1); };
  auto skip = [&]() {
    while (i < lines.size()) {
      const auto t = tokens(lines[i]);
      if (!t.empty() && t[0].front() != '#') return;
      ++i;
    }
  };
  skip();
  if (i >= lines.size() || tokens(lines[i]) != std::vector<std::string_view>{"covsel-snapshots", "v1"}) {
    throw FormatError(where(i < lines.size() ? i : 0) +
                      ": expected header 'covsel-snapshots v1'");
  }
  ++i;
  auto read_dim = [&](std::string_view name) {
    skip();
    if (i >= lines.size()) throw FormatError(where(i) + ": missing '" + std::string(name) + "'");
    const auto t = tokens(lines[i]);
    if (t.size() != 2 || t[0] != name) {
      throw FormatError(where(i) + ": expected '" + std::string(name) + " <count>'");
    }
    const auto v = parse_number<Index>(t[1], where(i));
    if (v < 1) throw FormatError(where(i) + ": " + std::string(name) + " must be positive");
    ++i;
    return v;
  };
  const Index n = read_dim("N");
  const Index k = read_dim("K");

  Dataset out;
  bool have_secondary = false;
  auto read_row = [&](Index pairs, std::string_view section) {
    skip();
    if (i >= lines.size()) {
      throw FormatError(where(i) + ": [" + std::string(section) + "] ends early");
    }
    const auto t = tokens(lines[i]);
    if (t.size() != static_cast<std::size_t>(2 * pairs)) {
      throw FormatError(where(i) + ": [" + std::string(section) + "] expected " +
                        std::to_string(2 * pairs) + " numbers, got " + std::to_string(t.size()));
    }
    CVector row(pairs);
    for (Index p = 0; p < pairs; ++p) {
      row(p) = cplx(parse_number<double>(t[static_cast<std::size_t>(2 * p)], where(i)),
                    parse_number<double>(t[static_cast<std::size_t>(2 * p + 1)], where(i)));
    }
    ++i;
    return row;
  };
  while (true) {
    skip();
    if (i >= lines.size()) break;
    const auto t = tokens(lines[i]);
    const std::string head(t[0]);
    if (t.size() != 1 || head.size() < 3 || head.front() != '[' || head.back() != ']') {
      throw FormatError(where(i) + ": expected a section header, got '" + std::string(lines[i]) + "'");
    }
    const std::string name = head.substr(1, head.size() - 2);
    const std::size_t header_line = i;
    ++i;
    if (name == "steering" || name == "cut") {
      auto& slot = name == "steering" ? out.steering : out.cut;
      if (slot) throw FormatError(where(header_line) + ": duplicate [" + name + "]");
      CVector v(n);
      for (Index r = 0; r < n; ++r) v(r) = read_row(1, name)(0);
      slot = v;
    } else if (name == "secondary") {
      if (have_secondary) throw FormatError(where(header_line) + ": duplicate [secondary]");
      out.secondary.resize(n, k);
      for (Index r = 0; r < n; ++r) out.secondary.row(r) = read_row(k, name).transpose();
      have_secondary = true;
    } else {
      throw FormatError(where(header_line) + ": unknown section [" + name + "]");
    }
  }
  if (!have_secondary) throw FormatError("missing [secondary] section");
  return out;
}

std::string scorecard_json(const Scorecard& card) {
  json scores = json::array();
  for (const auto& s : card.scores) {
    json e = {{"hypothesis", std::string(to_string(s.hypothesis))}};
    if (s.ok()) {
      e["fit"] = s.fit;
      e["penalty"] = s.penalty;
      e["total"] = s.total;
    } else {
      e["failure"] = s.failure;
    }
    scores.push_back(e);
  }
  json j = {{"criterion", card.criterion.label()},
            {"approach", to_string(card.approach)},
            {"chosen", card.chosen ? json(std::string(to_string(*card.chosen))) : json(nullptr)},
            {"scores", scores}};
  return j.dump(2) + "\n";
}

// SVG ------------------------------------------------------------------------

std::vector<PlotFile> render_plots(const std::vector<ResultRow>& rows,
                                   std::vector<std::string>& warnings) {
  // (truth, approach) -> criterion -> K -> pcc, criteria in first-seen order.
  struct Series {
    std::string criterion;
    std::map<Index, double> points;
  };
  std::map<std::pair<std::string, std::string>, std::vector<Series>> groups;
  for (const auto& r : rows) {
    auto& series = groups[{r.truth, r.approach}];
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.criterion == r.criterion; });
    if (it == series.end()) {
      series.push_back({r.criterion, {}});
      it = series.end() - 1;
    }
    if (r.trials <= r.failed) {
      warnings.push_back("no decided trials for " + r.criterion + ", truth " + r.truth +
                         ", approach " + r.approach + ", K=" + std::to_string(r.K) +
                         "; point dropped");
      continue;
    }
    it->points[r.K] = r.pcc;
  }

  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  constexpr double kW = 640, kH = 420, kLeft = 60, kRight = 170, kTop = 40, kBottom = 50;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;

  std::vector<PlotFile> out;
  for (const auto& [key, series] : groups) {
    Index kmin = std::numeric_limits<Index>::max(), kmax = std::numeric_limits<Index>::min();
    for (const auto& s : series)
      for (const auto& [k, p] : s.points) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
    if (kmin > kmax) kmin = kmax = 0;
    double x0 = static_cast<double>(kmin), x1 = static_cast<double>(kmax);
    if (x1 <= x0) {
      x0 -= 1.0;
      x1 += 1.0;
    }
    auto sx = [&](double k) { return kLeft + (k - x0) / (x1 - x0) * pw; };
    auto sy = [&](double p) { return kTop + (1.0 - p) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">truth " << key.first
       << ", approach " << key.second << "</text>\n";
    os << "<g class=\"axes\" stroke=\"black\">\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft + pw << "\" y2=\""
       << sy(0) << "\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft << "\" y2=\""
       << sy(1) << "\"/>\n";
    os << "</g>\n";
    for (int t = 0; t <= 5; ++t) {
      const double p = t / 5.0;
      os << "<line class=\"ytick\" data-p=\"" << num(p) << "\" x1=\"" << kLeft - 4 << "\" y1=\"" << num(sy(p)) << "\" x2=\"" << kLeft << "\" y2=\""
         << sy(p) << "\" stroke=\"black\"/>";
      os << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(p) + 4 << "\" text-anchor=\"end\">"
         << num(p) << "</text>\n";
    }
    std::vector<Index> ks;
    for (const auto& s : series)
      for (const auto& [k, p] : s.points) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (Index k : ks) {
      os << "<text x=\"" << sx(static_cast<double>(k)) << "\" y=\"" << sy(0) + 18
         << "\" text-anchor=\"middle\">" << k << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12
       << "\" text-anchor=\"middle\">K</text>\n";
    os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 16 "
       << kTop + ph / 2 << ")\" text-anchor=\"middle\">P_cc</text>\n";

    std::size_t color = 0, legend = 0;
    for (const auto& s : series) {
      const char* stroke = kColors[color++ % std::size(kColors)];
      if (s.points.empty()) {
        warnings.push_back("criterion " + s.criterion + " has no points for truth " + key.first +
                           ", approach " + key.second + "; curve omitted");
        continue;
      }
      os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
      bool first = true;
      for (const auto& [k, p] : s.points) {
        if (!first) os << ' ';
        first = false;
        os << num(sx(static_cast<double>(k))) << ',' << num(sy(p));
      }
      os << "\"/>\n";
      const double ly = kTop + 14.0 * static_cast<double>(legend++);
      os << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 35
         << "\" y2=\"" << ly << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>";
      os << "<text x=\"" << kLeft + pw + 40 << "\" y=\"" << ly + 4 << "\">" << s.criterion
         << "</text>\n";
    }
    os << "</svg>\n";
    out.push_back({"pcc_" + key.first + "_" + key.second + ".svg", os.str()});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace covsel
