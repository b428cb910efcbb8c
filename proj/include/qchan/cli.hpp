// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every command writes machine-readable CSV or JSON
// to stdout (or --out) and diagnostics to stderr; failures are reported only
// through the exit code.

#ifndef QCHAN_CLI_HPP
#define QCHAN_CLI_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qchan/capacity.hpp"
#include "qchan/channels.hpp"
#include "qchan/mixtures.hpp"
#include "qchan/oracle.hpp"

namespace qchan::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kInvalidParameters = 2,
  kSolverFailure = 3,
  kUnwritablePath = 4,
  kBudgetExceeded = 5,
  kCertificationFailed = 6,
};

class UnwritablePath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits: re-parsing with strtod reproduces the double.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonOptions {
  std::string out;
  std::string format;
  double tol = kDefaultCapacityTol;
  unsigned threads = 0;
  long long seed = 0;

  // --threads, then QCHAN_THREADS, then 1.
  unsigned resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("QCHAN_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
  }
};

struct OracleOptions {
  int n_states = 4;
  int a_grid = 201;
  int prob_grid = 20;
  int phase_grid = 8;
  bool complex_b = false;
  std::uint64_t budget = 100'000'000;
  double bound = kDefaultCertifyBound;

  OracleConfig config(unsigned threads) const {
    OracleConfig c;
    c.n_states = n_states;
    c.a_grid = a_grid;
    c.prob_grid = prob_grid;
    c.phase_grid = phase_grid;
    c.restrict_real_b = !complex_b;
    c.budget = budget;
    c.threads = threads;
    return c;
  }
};

//=========================================================================
// Channel specifications
//=========================================================================

struct ChannelSpec {
  std::string family;  // "ad" or "dep"
  double param = 0.0;

  Channel channel() const {
    if (family == "ad") return AmplitudeDamping{param};
    return Depolarizing{param};
  }

  std::string text() const { return family + ":" + format_real(param); }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j[family == "ad" ? "gamma" : "lambda"] = param;
    return j;
  }
};

// "ad:0.5" or "dep:0.3"
inline ChannelSpec parse_channel_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("channel spec '" + text + "' must look like ad:GAMMA or dep:LAMBDA");
  }
  ChannelSpec spec{text.substr(0, colon), 0.0};
  if (spec.family != "ad" && spec.family != "dep") {
    throw DomainError("unknown channel family '" + spec.family + "'");
  }
  const std::string number = text.substr(colon + 1);
  char* end = nullptr;
  spec.param = std::strtod(number.c_str(), &end);
  if (number.empty() || *end != '\0') throw DomainError("bad channel parameter '" + number + "'");
  detail::check_param(spec.param, spec.family == "ad" ? "gamma" : "lambda");
  return spec;
}

inline ChannelSpec single_channel_spec(const std::string& family,
                                       const std::optional<double>& gamma,
                                       const std::optional<double>& lambda) {
  if (family == "ad") {
    if (!gamma) throw DomainError("--channel ad requires --gamma");
    detail::check_param(*gamma, "gamma");
    return {"ad", *gamma};
  }
  if (family == "dep") {
    if (!lambda) throw DomainError("--channel dep requires --lambda");
    detail::check_param(*lambda, "lambda");
    return {"dep", *lambda};
  }
  throw DomainError("unknown channel family '" + family + "'");
}

//=========================================================================
// Output helpers
//=========================================================================

struct Output {
  std::ostream& stdout_stream;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      stdout_stream << text;
      stdout_stream.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UnwritablePath("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw UnwritablePath("failed writing '" + path + "'");
  }
};

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_real(v));
    row_strings(cells);
  }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ << ',';
      text_ << cells[i];
    }
    text_ << '\n';
  }

  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

inline nlohmann::json ensemble_json(const Ensemble& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& entry : e) {
    arr.push_back({{"p", entry.p},
                   {"a", entry.state.a},
                   {"b_re", entry.state.b.real()},
                   {"b_im", entry.state.b.imag()}});
  }
  return arr;
}

inline nlohmann::json oracle_config_json(const OracleConfig& c) {
  return {{"n_states", c.n_states},     {"a_grid", c.a_grid},
          {"prob_grid", c.prob_grid},   {"phase_grid", c.phase_grid},
          {"restrict_real_b", c.restrict_real_b}, {"budget", c.budget},
          {"threads", c.threads}};
}

inline nlohmann::json report_header(const std::string& command, nlohmann::json inputs) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)}};
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void require_format(const std::string& format) {
  if (format != "csv" && format != "json") {
    throw DomainError("--format must be csv or json");
  }
}

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

//=========================================================================
// Commands
//=========================================================================

// Mirror pair (a, +b), (a, -b) with equal weights.
inline Ensemble mirror_pair(double a) {
  return {{0.5, QubitState::pure(a, 1.0)}, {0.5, QubitState::pure(a, -1.0)}};
}

inline int cmd_capacity(const ChannelSpec& spec, const CommonOptions& common, std::ostream& out) {
  const auto t0 = Clock::now();
  const std::string format = common.format.empty() ? "json" : common.format;
  require_format(format);
  const CapacityResult r = capacity(spec.channel(), common.tol);
  if (format == "csv") {
    CsvWriter csv({"channel", "param", "capacity_bits", "a_max", "residual", "iterations",
                   "method"});
    csv.row_strings({spec.family, format_real(spec.param), format_real(r.capacity_bits),
                     format_real(r.a_max), format_real(r.residual), std::to_string(r.iterations),
                     std::string(to_string(r.method))});
    Output{out, common.out}.write(csv.str());
    return kOk;
  }
  auto inputs = spec.to_json();
  inputs["tol"] = common.tol;
  auto j = report_header("capacity", inputs);
  j["capacity_bits"] = r.capacity_bits;
  j["a_max"] = r.a_max;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["method"] = std::string(to_string(r.method));
  j["optimal_ensemble"] = ensemble_json(mirror_pair(r.a_max));
  j["wall_time_s"] = seconds_since(t0);
  Output{out, common.out}.write(dump_json(j));
  return kOk;
}

struct CurveOptions {
  std::string family = "ad";
  double start = 0.0;
  double end = 1.0;
  double step = 0.01;
};

// start + i step for i = 0..n, the last point snapped to `end`.
inline std::vector<double> grid_points(double start, double end, double step) {
  if (!(start >= 0.0 && start < end && end <= 1.0)) {
    throw DomainError("range must satisfy 0 <= start < end <= 1");
  }
  if (!(step > 0.0)) throw DomainError("step must be positive");
  const auto n = static_cast<long long>(std::floor((end - start) / step + 1e-9));
  if (n > 10'000'000) throw DomainError("step too small");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i) xs.push_back(start + static_cast<double>(i) * step);
  if (std::abs(xs.back() - end) <= 1e-9) xs.back() = end;
  return xs;
}

inline int cmd_curve(const CurveOptions& opt, const CommonOptions& common, std::ostream& out) {
  const std::string format = common.format.empty() ? "csv" : common.format;
  require_format(format);
  if (opt.family != "ad" && opt.family != "dep") {
    throw DomainError("--family must be ad or dep");
  }
  const auto params = grid_points(opt.start, opt.end, opt.step);
  std::vector<CapacityResult> rows;
  rows.reserve(params.size());
  for (double p : params) {
    rows.push_back(opt.family == "ad" ? capacity_amplitude_damping(p, common.tol)
                                      : capacity_depolarizing(p));
  }
  if (format == "csv") {
    CsvWriter csv({"param", "capacity_bits", "a_max"});
    for (std::size_t i = 0; i < params.size(); ++i) {
      csv.row({params[i], rows[i].capacity_bits, rows[i].a_max});
    }
    Output{out, common.out}.write(csv.str());
    return kOk;
  }
  auto j = report_header("curve", {{"family", opt.family},
                                   {"start", opt.start},
                                   {"end", opt.end},
                                   {"step", opt.step},
                                   {"tol", common.tol}});
  j["rows"] = nlohmann::json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    j["rows"].push_back(
        {{"param", params[i]}, {"capacity_bits", rows[i].capacity_bits}, {"a_max", rows[i].a_max}});
  }
  Output{out, common.out}.write(dump_json(j));
  return kOk;
}

struct ChiCurveOptions {
  double gamma = 0.5;
  double lambda = 0.24;
  double step = 0.001;
};

inline int cmd_chi_curves(const ChiCurveOptions& opt, const CommonOptions& common,
                          std::ostream& out) {
  const std::string format = common.format.empty() ? "csv" : common.format;
  require_format(format);
  detail::check_param(opt.gamma, "gamma");
  detail::check_param(opt.lambda, "lambda");
  const auto grid = grid_points(0.0, 1.0, opt.step);
  const MixedChannelPair pair{AmplitudeDamping{opt.gamma}, Depolarizing{opt.lambda}, 0.5};
  const std::optional<double> crossing = minimax_capacity(pair).a_cross;

  struct Row {
    double a, ad, dep;
    bool crossing;
  };
  std::vector<Row> rows;
  auto make = [&](double a, bool flag) {
    return Row{a, chi_ad_curve(opt.gamma, a), chi_dep_curve(opt.lambda, a), flag};
  };
  bool placed = !crossing.has_value();
  for (double a : grid) {
    if (!placed && *crossing < a) {
      rows.push_back(make(*crossing, true));
      placed = true;
    }
    rows.push_back(make(a, false));
  }
  if (!placed) rows.push_back(make(*crossing, true));

  if (format == "csv") {
    CsvWriter csv({"a", "chi_ad", "chi_dep", "min_chi", "crossing"});
    for (const auto& r : rows) {
      csv.row_strings({format_real(r.a), format_real(r.ad), format_real(r.dep),
                       format_real(std::min(r.ad, r.dep)), r.crossing ? "1" : "0"});
    }
    Output{out, common.out}.write(csv.str());
    return kOk;
  }
  auto j = report_header("chi-curves",
                         {{"gamma", opt.gamma}, {"lambda", opt.lambda}, {"step", opt.step}});
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"a", r.a},
                         {"chi_ad", r.ad},
                         {"chi_dep", r.dep},
                         {"min_chi", std::min(r.ad, r.dep)},
                         {"crossing", r.crossing}});
  }
  Output{out, common.out}.write(dump_json(j));
  return kOk;
}

struct EllipseOptions {
  double gamma = 0.5;
  int n_points = 64;
};

// Samples the pure-state circle at angle 2 pi k / n from |0><0|:
// a = (1 + cos t)/2, b = sin(t)/2.
inline int cmd_ellipse(const EllipseOptions& opt, const CommonOptions& common, std::ostream& out) {
  const std::string format = common.format.empty() ? "csv" : common.format;
  require_format(format);
  detail::check_param(opt.gamma, "gamma");
  if (opt.n_points < 3) throw DomainError("--n must be at least 3");
  const Channel ch = AmplitudeDamping{opt.gamma};

  struct Row {
    QubitState input;
    QubitState output;
    bool optimal = false;
  };
  std::vector<Row> rows;
  for (int k = 0; k < opt.n_points; ++k) {
    const double t = 2.0 * std::numbers::pi * k / opt.n_points;
    QubitState s{0.5 * (1.0 + std::cos(t)), Complex(0.5 * std::sin(t), 0.0)};
    if (k == 0) s = {1.0, Complex(0.0, 0.0)};
    rows.push_back(Row{s, apply(ch, s), false});
  }
  const double a_max = capacity_amplitude_damping(opt.gamma, common.tol).a_max;
  for (double sign : {1.0, -1.0}) {
    const auto s = QubitState::pure(a_max, sign);
    rows.push_back(Row{s, apply(ch, s), true});
  }

  if (format == "csv") {
    CsvWriter csv({"a_in", "b_in", "a_out", "b_out", "optimal"});
    for (const auto& r : rows) {
      csv.row_strings({format_real(r.input.a), format_real(r.input.b.real()),
                       format_real(r.output.a), format_real(r.output.b.real()),
                       r.optimal ? "1" : "0"});
    }
    Output{out, common.out}.write(csv.str());
    return kOk;
  }
  auto j = report_header("ellipse", {{"gamma", opt.gamma}, {"n", opt.n_points}});
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"a_in", r.input.a},
                         {"b_in", r.input.b.real()},
                         {"a_out", r.output.a},
                         {"b_out", r.output.b.real()},
                         {"optimal", r.optimal}});
  }
  Output{out, common.out}.write(dump_json(j));
  return kOk;
}

struct MinimaxOptions {
  std::optional<double> gamma;
  std::optional<double> lambda;
  std::string channel1;
  std::string channel2;
  double weight = 0.5;
  double resolution = kDefaultMinimaxResolution;
  bool certify = false;
};

inline std::pair<ChannelSpec, ChannelSpec> minimax_specs(const MinimaxOptions& opt) {
  ChannelSpec first;
  ChannelSpec second;
  if (!opt.channel1.empty()) {
    first = parse_channel_spec(opt.channel1);
  } else if (opt.gamma) {
    first = single_channel_spec("ad", opt.gamma, std::nullopt);
  } else {
    throw DomainError("minimax needs --channel1 SPEC or --gamma");
  }
  if (!opt.channel2.empty()) {
    second = parse_channel_spec(opt.channel2);
  } else if (opt.lambda) {
    second = single_channel_spec("dep", std::nullopt, opt.lambda);
  } else {
    throw DomainError("minimax needs --channel2 SPEC or --lambda");
  }
  return {first, second};
}

inline int cmd_minimax(const MinimaxOptions& opt, const OracleOptions& oracle,
                       const CommonOptions& common, std::ostream& out) {
  const auto t0 = Clock::now();
  const std::string format = common.format.empty() ? "json" : common.format;
  require_format(format);
  const auto [first, second] = minimax_specs(opt);
  const MixedChannelPair pair{first.channel(), second.channel(), opt.weight};
  MinimaxResult r = minimax_capacity(pair, opt.resolution);
  std::optional<Certification> cert;
  if (opt.certify) {
    cert = certify_minimax(r, pair, oracle.config(common.resolved_threads()), oracle.bound);
  }

  if (format == "csv") {
    CsvWriter csv({"capacity_bits", "a_star", "capacity_channel1", "capacity_channel2",
                   "branch_min", "separation_gap", "certified_by_oracle"});
    csv.row_strings({format_real(r.capacity_bits), format_real(r.a_star),
                     format_real(r.capacity_first), format_real(r.capacity_second),
                     format_real(r.branch_min()), format_real(r.separation_gap()),
                     r.certified_by_oracle ? "1" : "0"});
    Output{out, common.out}.write(csv.str());
  } else {
    auto j = report_header("minimax", {{"channel1", first.to_json()},
                                       {"channel2", second.to_json()},
                                       {"weight1", opt.weight},
                                       {"resolution", opt.resolution},
                                       {"certify", opt.certify}});
    j["capacity_bits"] = r.capacity_bits;
    j["a_star"] = r.a_star;
    j["a_cross"] = r.a_cross ? nlohmann::json(*r.a_cross) : nlohmann::json(nullptr);
    j["min_branch"] = std::string(to_string(r.min_branch));
    j["branch_capacities"] = {r.capacity_first, r.capacity_second};
    j["branch_maximizers"] = {r.a_max_first, r.a_max_second};
    j["branch_min"] = r.branch_min();
    j["separation_gap"] = r.separation_gap();
    j["certified_by_oracle"] = r.certified_by_oracle;
    if (cert) {
      j["oracle"] = {{"value", cert->oracle_value},
                     {"gap", cert->difference()},
                     {"bound", cert->bound},
                     {"evaluations", cert->oracle.evaluations},
                     {"search_size", cert->oracle.search_size},
                     {"config", oracle_config_json(oracle.config(common.resolved_threads()))},
                     {"ensemble", ensemble_json(cert->oracle.ensemble)}};
    }
    j["wall_time_s"] = seconds_since(t0);
    Output{out, common.out}.write(dump_json(j));
  }
  return kOk;
}

inline int cmd_certify(const ChannelSpec& spec, const OracleOptions& oracle,
                       const CommonOptions& common, std::ostream& out) {
  const auto t0 = Clock::now();
  const std::string format = common.format.empty() ? "json" : common.format;
  require_format(format);
  const OracleConfig config = oracle.config(common.resolved_threads());
  const Certification c = certify_capacity(spec.channel(), config, oracle.bound, common.tol);

  if (format == "csv") {
    CsvWriter csv({"solver_value", "oracle_value", "difference", "bound", "passed"});
    csv.row_strings({format_real(c.solver_value), format_real(c.oracle_value),
                     format_real(c.difference()), format_real(c.bound), c.passed() ? "1" : "0"});
    Output{out, common.out}.write(csv.str());
  } else {
    auto inputs = spec.to_json();
    inputs["tol"] = common.tol;
    inputs["oracle"] = oracle_config_json(config);
    inputs["bound"] = oracle.bound;
    auto j = report_header("certify", inputs);
    j["solver_value"] = c.solver_value;
    j["oracle_value"] = c.oracle_value;
    j["difference"] = c.difference();
    j["passed"] = c.passed();
    j["evaluations"] = c.oracle.evaluations;
    j["search_size"] = c.oracle.search_size;
    j["oracle_ensemble"] = ensemble_json(c.oracle.ensemble);
    j["wall_time_s"] = seconds_since(t0);
    Output{out, common.out}.write(dump_json(j));
  }
  if (!c.passed()) {
    throw CertificationFailed("oracle and solver disagree beyond the declared bound");
  }
  return kOk;
}

//=========================================================================
// Argument parsing
//=========================================================================

inline void add_common(CLI::App& sub, CommonOptions& common) {
  sub.add_option("--out", common.out, "Write output to PATH instead of stdout");
  sub.add_option("--format", common.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--tol", common.tol, "Solver bracket-width tolerance")
      ->check(CLI::PositiveNumber);
  sub.add_option("--threads", common.threads, "Worker threads (fallback: QCHAN_THREADS)");
  sub.add_option("--seed", common.seed, "Seed recorded for reproducibility");
}

inline void add_oracle(CLI::App& sub, OracleOptions& o) {
  sub.add_option("--n-states", o.n_states, "Ensemble size cap (1-4)")->check(CLI::Range(1, 4));
  sub.add_option("--a-grid", o.a_grid, "Grid points for a on [0,1]")->check(CLI::Range(2, 100000));
  sub.add_option("--prob-grid", o.prob_grid, "Probability quanta per ensemble")
      ->check(CLI::Range(2, 10000));
  sub.add_option("--phase-grid", o.phase_grid, "Coherence phases when --complex-b is set")
      ->check(CLI::Range(2, 10000));
  sub.add_flag("--complex-b", o.complex_b, "Search complex coherences instead of real b");
  sub.add_option("--budget", o.budget, "Maximum ensemble evaluations");
  sub.add_option("--bound", o.bound, "Allowed solver-oracle difference")->check(CLI::NonNegativeNumber);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qchan: product-state capacities of qubit channels"};
  app.set_config("--config", "", "Read option defaults from a TOML/INI key=value file");
  app.require_subcommand(1);

  CommonOptions common;
  OracleOptions oracle;
  std::function<int()> action;

  std::string family;
  std::optional<double> gamma;
  std::optional<double> lambda;

  auto* capacity_cmd = app.add_subcommand("capacity", "Capacity and maximizer of one channel");
  capacity_cmd->add_option("--channel", family, "ad or dep")->required();
  capacity_cmd->add_option("--gamma", gamma, "Amplitude-damping parameter");
  capacity_cmd->add_option("--lambda", lambda, "Depolarizing parameter");
  add_common(*capacity_cmd, common);
  capacity_cmd->callback([&] {
    action = [&] { return cmd_capacity(single_channel_spec(family, gamma, lambda), common, out); };
  });

  CurveOptions curve;
  auto* curve_cmd = app.add_subcommand("curve", "Capacity as a function of the channel parameter");
  curve_cmd->add_option("--family,--channel", curve.family, "ad or dep");
  curve_cmd->add_option("--start", curve.start, "First parameter value");
  curve_cmd->add_option("--end", curve.end, "Last parameter value");
  curve_cmd->add_option("--step", curve.step, "Parameter step");
  add_common(*curve_cmd, common);
  curve_cmd->callback([&] { action = [&] { return cmd_curve(curve, common, out); }; });

  ChiCurveOptions chi;
  auto* chi_cmd = app.add_subcommand("chi-curves", "Mirror-pair chi curves of AD and dep channels");
  chi_cmd->add_option("--gamma", chi.gamma, "Amplitude-damping parameter");
  chi_cmd->add_option("--lambda", chi.lambda, "Depolarizing parameter");
  chi_cmd->add_option("--step", chi.step, "Step in a");
  add_common(*chi_cmd, common);
  chi_cmd->callback([&] { action = [&] { return cmd_chi_curves(chi, common, out); }; });

  EllipseOptions ellipse;
  auto* ellipse_cmd = app.add_subcommand("ellipse", "Pure inputs and their AD images");
  ellipse_cmd->add_option("--gamma", ellipse.gamma, "Amplitude-damping parameter");
  ellipse_cmd->add_option("--n", ellipse.n_points, "Number of sampled pure states");
  add_common(*ellipse_cmd, common);
  ellipse_cmd->callback([&] { action = [&] { return cmd_ellipse(ellipse, common, out); }; });

  MinimaxOptions minimax;
  auto* minimax_cmd = app.add_subcommand("minimax", "Capacity of a two-channel convex combination");
  minimax_cmd->add_option("--gamma", minimax.gamma, "Shorthand for --channel1 ad:GAMMA");
  minimax_cmd->add_option("--lambda", minimax.lambda, "Shorthand for --channel2 dep:LAMBDA");
  minimax_cmd->add_option("--channel1", minimax.channel1, "First branch, ad:G or dep:L");
  minimax_cmd->add_option("--channel2", minimax.channel2, "Second branch, ad:G or dep:L");
  minimax_cmd->add_option("--weight", minimax.weight, "Probability of the first branch");
  minimax_cmd->add_option("--resolution", minimax.resolution, "Search resolution in a")
      ->check(CLI::PositiveNumber);
  minimax_cmd->add_flag("--certify", minimax.certify, "Cross-check with the ensemble oracle");
  add_oracle(*minimax_cmd, oracle);
  add_common(*minimax_cmd, common);
  minimax_cmd->callback([&] { action = [&] { return cmd_minimax(minimax, oracle, common, out); }; });

  std::string certify_family;
  std::optional<double> certify_gamma;
  std::optional<double> certify_lambda;
  auto* certify_cmd = app.add_subcommand("certify", "Compare the solver with the ensemble oracle");
  certify_cmd->add_option("--channel", certify_family, "ad or dep")->required();
  certify_cmd->add_option("--gamma", certify_gamma, "Amplitude-damping parameter");
  certify_cmd->add_option("--lambda", certify_lambda, "Depolarizing parameter");
  add_oracle(*certify_cmd, oracle);
  add_common(*certify_cmd, common);
  certify_cmd->callback([&] {
    action = [&] {
      return cmd_certify(single_channel_spec(certify_family, certify_gamma, certify_lambda),
                         oracle, common, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParameters;
  }

  try {
    return action();
  } catch (const DomainError& e) {
    err << "qchan: invalid parameters: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const SolverError& e) {
    err << "qchan: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const UnwritablePath& e) {
    err << "qchan: " << e.what() << '\n';
    return kUnwritablePath;
  } catch (const BudgetExceeded& e) {
    err << "qchan: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const CertificationFailed& e) {
    err << "qchan: certification failed: " << e.what() << '\n';
    return kCertificationFailed;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qchan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qchan::cli

#endif  // QCHAN_CLI_HPP
