#pragma once

// Command-line front end: TOML game definitions in, JSON reports and CSV
// surfaces out. `run` is the whole program; tools/qgame.cpp only forwards argv.
//
// Exit codes: 0 success, 1 oracle disagreement (verify), 2 malformed
// configuration or arguments, 3 output could not be written.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <toml.hpp>

#include "qgame/analysis.hpp"
#include "qgame/equilibria.hpp"
#include "qgame/operators.hpp"
#include "qgame/oracle.hpp"
#include "qgame/payoff.hpp"

namespace qgame::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kWriteFailed = 3,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GridRange { Pi, TwoPi };
enum class OutputFormat { Csv, Json };

struct GridConfig {
  std::size_t gamma1_steps = 101;
  std::size_t gamma2_steps = 101;
  GridRange range = GridRange::Pi;

  /// [0, pi]^2 with both ends, or the periodic [0, 2pi)^2.
  GridSpec spec() const {
    if (range == GridRange::Pi) {
      return {GridAxis::closed(0.0, std::numbers::pi, gamma1_steps),
              GridAxis::closed(0.0, std::numbers::pi, gamma2_steps)};
    }
    return {GridAxis::periodic(gamma1_steps), GridAxis::periodic(gamma2_steps)};
  }
};

struct OracleConfig {
  std::size_t n_amp = 51;
  std::size_t n_phase = 24;
  double tol = 1e-6;
};

struct OutputConfig {
  std::optional<OutputFormat> format;
  std::string path = "-";
};

struct GameConfig {
  std::optional<PayoffMatrix> payoff;
  std::optional<GridConfig> grid;
  OracleConfig oracle;
  OutputConfig output;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  std::size_t n_quad = 64;
};

// ---------------------------------------------------------------------------
// Parsing helpers.

/// Radians as a float or a multiple of pi: "1.5", "pi", "-pi/2", "3pi/4",
/// "3*pi/4", "2pi".
inline double parse_angle(const std::string& text) {
  static const std::regex pi_form(
      R"(^\s*([+-]?)\s*([0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch mt;
  if (std::regex_match(text, mt, pi_form)) {
    double coef = mt[2].length() > 0 ? std::stod(mt[2].str()) : 1.0;
    if (mt[1] == "-") coef = -coef;
    double den = mt[3].matched ? std::stod(mt[3].str()) : 1.0;
    if (den == 0.0) throw ConfigError("angle denominator is zero: " + text);
    return coef * std::numbers::pi / den;
  }
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  while (ptr < last && *ptr == ' ') ++ptr;
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("cannot parse angle: '" + text + "'");
  }
  return v;
}

namespace detail {

inline double number_at(const toml::node_view<const toml::node>& node, const std::string& key) {
  if (auto v = node.value<double>()) return *v;
  throw ConfigError("expected a number for '" + key + "'");
}

inline std::size_t count_at(const toml::node_view<const toml::node>& node,
                            const std::string& key) {
  auto v = node.value<std::int64_t>();
  if (!v || *v < 0) throw ConfigError("expected a non-negative integer for '" + key + "'");
  return static_cast<std::size_t>(*v);
}

inline double angle_at(const toml::node_view<const toml::node>& node, const std::string& key) {
  if (auto s = node.value<std::string>()) return parse_angle(*s);
  return number_at(node, key);
}

}  // namespace detail

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + s + "'");
}

inline GridRange parse_range(const std::string& s) {
  if (s == "pi") return GridRange::Pi;
  if (s == "2pi") return GridRange::TwoPi;
  throw ConfigError("grid range must be \"pi\" or \"2pi\", got '" + s + "'");
}

inline Selection parse_selection(const std::string& s) {
  if (s == "max") return Selection::MaxForA;
  if (s == "mixed") return Selection::MaxSymmetric;
  if (s == "all") return Selection::AllRecords;
  throw ConfigError("selection must be max, mixed or all, got '" + s + "'");
}

inline LogBase parse_log_base(const std::string& s) {
  if (s == "e" || s == "natural") return LogBase::Natural;
  if (s == "2" || s == "two") return LogBase::Two;
  throw ConfigError("log base must be e or 2, got '" + s + "'");
}

/// "3,0,5,1" -> PayoffMatrix.
inline PayoffMatrix parse_payoff_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_angle(item));
  if (v.size() != 4) throw ConfigError("payoff needs four comma-separated values");
  return {v[0], v[1], v[2], v[3]};
}

/// "101x101" -> (101, 101).
inline std::pair<std::size_t, std::size_t> parse_grid_size(const std::string& s) {
  static const std::regex form(R"(^\s*([0-9]+)\s*[xX]\s*([0-9]+)\s*$)");
  std::smatch mt;
  if (!std::regex_match(s, mt, form)) throw ConfigError("grid must look like 101x101");
  return {std::stoul(mt[1].str()), std::stoul(mt[2].str())};
}

/// Parses the TOML game definition:
///
///   [payoff]  a00, a01, a10, a11
///   [grid]    gamma1_steps, gamma2_steps, range = "pi" | "2pi"
///   [oracle]  n_amp, n_phase, tol
///   [output]  format = "csv" | "json", path
///   [gamma]   gamma1, gamma2 (numbers or strings such as "pi/2")
///   [moderation] n_quad
inline GameConfig parse_config(std::string_view text) {
  toml::table tbl;
  try {
    tbl = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw ConfigError(std::string("TOML: ") + std::string(e.description()));
  }
  const toml::table& t = tbl;
  GameConfig cfg;

  if (auto p = t["payoff"]; p) {
    if (!p.is_table()) throw ConfigError("[payoff] must be a table");
    try {
      cfg.payoff = PayoffMatrix(detail::number_at(p["a00"], "payoff.a00"),
                                detail::number_at(p["a01"], "payoff.a01"),
                                detail::number_at(p["a10"], "payoff.a10"),
                                detail::number_at(p["a11"], "payoff.a11"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (auto g = t["grid"]; g) {
    GridConfig gc;
    if (g["gamma1_steps"]) gc.gamma1_steps = detail::count_at(g["gamma1_steps"], "grid.gamma1_steps");
    if (g["gamma2_steps"]) gc.gamma2_steps = detail::count_at(g["gamma2_steps"], "grid.gamma2_steps");
    if (auto r = g["range"]) {
      auto s = r.value<std::string>();
      if (!s) throw ConfigError("grid.range must be a string");
      gc.range = parse_range(*s);
    }
    if (gc.gamma1_steps < 2 || gc.gamma2_steps < 2) throw ConfigError("grid steps must be >= 2");
    cfg.grid = gc;
  }
  if (auto o = t["oracle"]; o) {
    if (o["n_amp"]) cfg.oracle.n_amp = detail::count_at(o["n_amp"], "oracle.n_amp");
    if (o["n_phase"]) cfg.oracle.n_phase = detail::count_at(o["n_phase"], "oracle.n_phase");
    if (o["tol"]) cfg.oracle.tol = detail::number_at(o["tol"], "oracle.tol");
    if (!(cfg.oracle.tol > 0.0)) throw ConfigError("oracle.tol must be > 0");
    if (cfg.oracle.n_amp < 2 || cfg.oracle.n_phase < 1) throw ConfigError("oracle grid too small");
  }
  if (auto o = t["output"]; o) {
    if (auto f = o["format"]) {
      auto s = f.value<std::string>();
      if (!s) throw ConfigError("output.format must be a string");
      cfg.output.format = parse_format(*s);
    }
    if (auto p = o["path"]) {
      auto s = p.value<std::string>();
      if (!s) throw ConfigError("output.path must be a string");
      cfg.output.path = *s;
    }
  }
  if (auto g = t["gamma"]; g) {
    if (g["gamma1"]) cfg.gamma1 = detail::angle_at(g["gamma1"], "gamma.gamma1");
    if (g["gamma2"]) cfg.gamma2 = detail::angle_at(g["gamma2"], "gamma.gamma2");
  }
  if (auto q = t["moderation"]; q) {
    if (q["n_quad"]) cfg.n_quad = detail::count_at(q["n_quad"], "moderation.n_quad");
  }
  return cfg;
}

inline GameConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Output formatting.

/// Nine significant digits with a '.' separator whatever the locale.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

inline const char* kCsvHeader = "gamma1,gamma2,kind,a0_star,payoff_a,payoff_b,h_plus,h_minus,delta";

inline void write_csv(const SurfaceTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << format_number(r.gamma1) << ',' << format_number(r.gamma2) << ','
        << (r.kind ? to_string(*r.kind) : std::string_view("None")) << ','
        << format_number(r.a0_star) << ',' << format_number(r.payoff_a) << ','
        << format_number(r.payoff_b) << ',' << format_number(r.h_plus) << ','
        << format_number(r.h_minus) << ',' << format_number(r.delta) << '\n';
  }
}

/// Reads a table written by write_csv.
inline std::vector<SurfaceRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("unexpected CSV header");
  std::vector<SurfaceRow> rows;
  auto num = [](const std::string& s) {
    if (s == "nan") return std::nan("");
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw ConfigError("bad CSV number " + s);
    return v;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 9) throw ConfigError("CSV row must have 9 fields");
    SurfaceRow r;
    r.gamma1 = num(f[0]);
    r.gamma2 = num(f[1]);
    r.kind = kind_from_string(f[2]);
    r.a0_star = num(f[3]);
    r.payoff_a = num(f[4]);
    r.payoff_b = num(f[5]);
    r.h_plus = num(f[6]);
    r.h_minus = num(f[7]);
    r.delta = num(f[8]);
    rows.push_back(r);
  }
  return rows;
}

inline Json surface_json(const SurfaceTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json j;
    j["gamma1"] = r.gamma1;
    j["gamma2"] = r.gamma2;
    j["kind"] = r.kind ? std::string(to_string(*r.kind)) : "None";
    j["a0_star"] = r.a0_star;
    j["payoff_a"] = r.payoff_a;
    j["payoff_b"] = r.payoff_b;
    j["h_plus"] = r.h_plus;
    j["h_minus"] = r.h_minus;
    j["delta"] = r.delta;
    rows.push_back(j);
  }
  return rows;
}

inline Json strategy_json(const StrategyVector& s) {
  return Json{{"a0", s.a0()}, {"phase", s.phase()}};
}

inline Json gamma_json(const CorrelationParams& g) { return Json::array({g.gamma1(), g.gamma2()}); }

// ---------------------------------------------------------------------------
// Commands. Each builds its document; `run` handles writing and exit codes.

inline Json equilibria_document(const PayoffMatrix& m, const CorrelationParams& gamma,
                                LogBase base = LogBase::Natural) {
  const auto rep = equilibria_at(m, gamma);
  Json doc;
  doc["gamma"] = gamma_json(gamma);
  doc["tau"] = rep.functions.tau;
  doc["g_plus"] = rep.functions.g_plus;
  doc["g_minus"] = rep.functions.g_minus;
  doc["h_plus"] = rep.functions.h_plus;
  doc["h_minus"] = rep.functions.h_minus;
  doc["delta"] = rep.functions.delta;
  doc["log_base"] = base == LogBase::Two ? "2" : "e";
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    Json j;
    j["kind"] = std::string(to_string(r.kind));
    j["a0"] = r.alpha.a0();
    j["phase"] = r.alpha.phase();
    j["b0"] = r.beta.a0();
    j["chi"] = r.beta.phase();
    j["payoff_a"] = r.payoff_a;
    j["payoff_b"] = r.payoff_b;
    j["boundary"] = r.boundary;
    if (r.phase_star) j["phase_star"] = *r.phase_star;
    j["entropy"] = entanglement_entropy(joint_state(r.alpha, r.beta, gamma), base);
    recs.push_back(j);
  }
  doc["records"] = recs;
  return doc;
}

struct VerifyOutcome {
  Json document;
  bool all_pass = true;
};

/// Runs verify_record on every analytic record, plus an optional injected
/// edge profile (|i,j>) that is checked as a pure strategy pair.
inline VerifyOutcome verify_document(const PayoffMatrix& m, const CorrelationParams& gamma,
                                     const OracleConfig& oc,
                                     std::optional<std::pair<int, int>> inject = std::nullopt) {
  const StrategyGrid grid(oc.n_amp, oc.n_phase);
  auto rep = equilibria_at(m, gamma);
  VerifyOutcome out;
  Json recs = Json::array();
  double allowance = 0.0;

  auto add = [&](std::string kind, const DeviationReport& d, bool injected) {
    allowance = d.curvature_allowance;
    Json j;
    j["kind"] = std::move(kind);
    j["injected"] = injected;
    j["max_gain_a"] = d.max_gain_a;
    j["max_gain_b"] = d.max_gain_b;
    j["best_deviation_a"] = strategy_json(d.best_deviation_a);
    j["best_deviation_b"] = strategy_json(d.best_deviation_b);
    j["is_nash"] = d.is_nash;
    out.all_pass = out.all_pass && d.is_nash;
    recs.push_back(j);
  };
  for (const auto& r : rep.records) {
    add(std::string(to_string(r.kind)), verify_record(m, gamma, r, grid, oc.tol), false);
  }
  if (inject) {
    const auto [i, j] = *inject;
    const auto d = verify_nash(m, gamma, StrategyVector::basis(i), StrategyVector::basis(j), grid,
                               oc.tol);
    add("Edge" + std::to_string(i) + std::to_string(j), d, true);
  }

  Json doc;
  doc["gamma"] = gamma_json(gamma);
  doc["grid"] = Json{{"n_amp", oc.n_amp}, {"n_phase", oc.n_phase}};
  doc["tol"] = oc.tol;
  doc["curvature_allowance"] = allowance;
  doc["records"] = recs;
  doc["all_pass"] = out.all_pass;
  out.document = std::move(doc);
  return out;
}

inline Json matrix_json(const Operator4& op) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (std::size_t j = 0; j < 4; ++j) {
      rr.push_back(op(i, j).real());
      ri.push_back(op(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return Json{{"real", re}, {"imag", im}};
}

inline Json moderate_document(const PayoffMatrix& m, std::size_t n_quad) {
  const Operator4 avg = moderated_operator(m, n_quad);
  const Operator4 closed = moderated_closed_form(m);
  Json doc;
  doc["n_quad"] = n_quad;
  doc["operator"] = matrix_json(avg);
  const auto d = closed.real_diagonal();
  doc["closed_form_diagonal"] = Json::array({d[0], d[1], d[2], d[3]});
  doc["residual"] = max_abs_diff(avg, closed);
  return doc;
}

inline Json entropy_document(const StrategyVector& alpha, const StrategyVector& beta,
                             const CorrelationParams& gamma, LogBase base) {
  const JointState s = joint_state(alpha, beta, gamma);
  const auto ev = reduced_density(s, Subsystem::A).eigenvalues();
  Json doc;
  doc["gamma"] = gamma_json(gamma);
  doc["alpha"] = strategy_json(alpha);
  doc["beta"] = strategy_json(beta);
  doc["eigenvalues"] = Json::array({ev[0], ev[1]});
  doc["entropy"] = entanglement_entropy(s, base);
  doc["log_base"] = base == LogBase::Two ? "2" : "e";
  return doc;
}

// ---------------------------------------------------------------------------
// Program entry.

namespace detail {

/// Writes `text` to `path` ("-" is `out`).
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path == "-" || path.empty()) {
    out << text;
    out.flush();
    if (!out) throw WriteError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw WriteError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw WriteError("failed writing '" + path + "'");
}

/// "0.7" or "0.7:pi/4" -> strategy.
inline StrategyVector parse_strategy(const std::string& s) {
  const auto colon = s.find(':');
  const double a0 = parse_angle(s.substr(0, colon));
  const double ph = colon == std::string::npos ? 0.0 : parse_angle(s.substr(colon + 1));
  try {
    return StrategyVector::from_amplitude(a0, ph);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solver for two-player two-strategy quantum games"};
  app.require_subcommand(1);

  std::string config_path, payoff_flag, gamma1_flag, gamma2_flag, out_flag, format_flag;
  std::string grid_flag, range_flag, selection_flag = "max", log_base_flag = "e";
  std::string alpha_flag = "1", beta_flag = "1", inject_flag;
  std::optional<double> lambda_flag;
  std::optional<std::size_t> n_amp_flag, n_phase_flag, n_quad_flag;
  std::optional<double> tol_flag;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "TOML game definition");
    sub->add_option("--payoff", payoff_flag, "payoff entries a00,a01,a10,a11");
    sub->add_option("-o,--out", out_flag, "output path ('-' for stdout)");
  };
  auto gamma_opts = [&](CLI::App* sub) {
    sub->add_option("--gamma1", gamma1_flag, "gamma1 in radians (accepts e.g. pi/2)");
    sub->add_option("--gamma2", gamma2_flag, "gamma2 in radians");
  };

  auto* eq = app.add_subcommand("equilibria", "classify equilibria at one gamma");
  common(eq);
  gamma_opts(eq);
  eq->add_option("--log-base", log_base_flag, "entropy logarithm base: e or 2");

  auto* sweep = app.add_subcommand("sweep", "equilibrium payoff surface over the gamma plane");
  common(sweep);
  sweep->add_option("--grid", grid_flag, "grid size, e.g. 101x101");
  sweep->add_option("--range", range_flag, "pi ([0,pi]^2) or 2pi ([0,2pi)^2)");
  sweep->add_option("--selection", selection_flag, "max, mixed or all");
  sweep->add_option("--format", format_flag, "csv or json");

  auto* verify = app.add_subcommand("verify", "check every analytic equilibrium by grid search");
  common(verify);
  gamma_opts(verify);
  verify->add_option("--n-amp", n_amp_flag, "amplitude samples");
  verify->add_option("--n-phase", n_phase_flag, "phase samples");
  verify->add_option("--tol", tol_flag, "gain tolerance");
  verify->add_option("--inject-edge", inject_flag, "also check the profile |i,j> (00, 01, 10, 11)");

  auto* moderate = app.add_subcommand("moderate", "gamma-averaged payoff operator");
  common(moderate);
  moderate->add_option("--n-quad", n_quad_flag, "quadrature nodes per axis (>= 8)");

  auto* entropy = app.add_subcommand("entropy", "entanglement entropy of a joint strategy");
  common(entropy);
  gamma_opts(entropy);
  entropy->add_option("--alpha", alpha_flag, "player A strategy a0[:phase]");
  entropy->add_option("--beta", beta_flag, "player B strategy b0[:phase]");
  entropy->add_option("--lambda", lambda_flag, "closed form for Schmidt weight lambda");
  entropy->add_option("--log-base", log_base_flag, "e or 2");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    GameConfig cfg = config_path.empty() ? GameConfig{} : load_config(config_path);
    if (!payoff_flag.empty()) cfg.payoff = parse_payoff_list(payoff_flag);
    if (!out_flag.empty()) cfg.output.path = out_flag;
    const LogBase base = parse_log_base(log_base_flag);

    auto require_payoff = [&]() -> PayoffMatrix {
      if (!cfg.payoff) throw ConfigError("no payoff matrix: give [payoff] or --payoff");
      return *cfg.payoff;
    };
    auto gamma = [&]() {
      const double g1 = !gamma1_flag.empty() ? parse_angle(gamma1_flag) : cfg.gamma1.value_or(0.0);
      const double g2 = !gamma2_flag.empty() ? parse_angle(gamma2_flag) : cfg.gamma2.value_or(0.0);
      return CorrelationParams(g1, g2);
    };

    if (eq->parsed()) {
      const auto doc = equilibria_document(require_payoff(), gamma(), base);
      detail::emit(doc.dump(2) + "\n", cfg.output.path, out);
      return kOk;
    }
    if (sweep->parsed()) {
      const PayoffMatrix m = require_payoff();
      GridConfig gc = cfg.grid.value_or(GridConfig{});
      if (!cfg.grid && grid_flag.empty()) throw ConfigError("sweep needs [grid] or --grid");
      if (!grid_flag.empty()) std::tie(gc.gamma1_steps, gc.gamma2_steps) = parse_grid_size(grid_flag);
      if (!range_flag.empty()) gc.range = parse_range(range_flag);
      if (gc.gamma1_steps < 2 || gc.gamma2_steps < 2) throw ConfigError("grid steps must be >= 2");
      const auto fmt = !format_flag.empty() ? parse_format(format_flag)
                                            : cfg.output.format.value_or(OutputFormat::Csv);
      const auto table = payoff_surface(m, gc.spec(), parse_selection(selection_flag));
      std::ostringstream text;
      if (fmt == OutputFormat::Csv) {
        write_csv(table, text);
      } else {
        text << surface_json(table).dump(2) << '\n';
      }
      detail::emit(text.str(), cfg.output.path, out);
      return kOk;
    }
    if (verify->parsed()) {
      OracleConfig oc = cfg.oracle;
      if (n_amp_flag) oc.n_amp = *n_amp_flag;
      if (n_phase_flag) oc.n_phase = *n_phase_flag;
      if (tol_flag) oc.tol = *tol_flag;
      if (oc.n_amp < 2 || oc.n_phase < 1 || !(oc.tol > 0.0)) throw ConfigError("bad oracle settings");
      std::optional<std::pair<int, int>> inject;
      if (!inject_flag.empty()) {
        if (inject_flag.size() != 2 || (inject_flag[0] != '0' && inject_flag[0] != '1') ||
            (inject_flag[1] != '0' && inject_flag[1] != '1')) {
          throw ConfigError("--inject-edge expects one of 00, 01, 10, 11");
        }
        inject = std::pair{inject_flag[0] - '0', inject_flag[1] - '0'};
      }
      const auto res = verify_document(require_payoff(), gamma(), oc, inject);
      detail::emit(res.document.dump(2) + "\n", cfg.output.path, out);
      return res.all_pass ? kOk : kVerifyFailed;
    }
    if (moderate->parsed()) {
      const std::size_t nq = n_quad_flag.value_or(cfg.n_quad);
      if (nq < 8) throw ConfigError("n_quad must be >= 8");
      const auto doc = moderate_document(require_payoff(), nq);
      detail::emit(doc.dump(2) + "\n", cfg.output.path, out);
      return kOk;
    }
    if (entropy->parsed()) {
      Json doc;
      if (lambda_flag) {
        doc["lambda"] = *lambda_flag;
        doc["entropy"] = entropy_of_lambda(*lambda_flag, base);
        doc["log_base"] = base == LogBase::Two ? "2" : "e";
      } else {
        doc = entropy_document(detail::parse_strategy(alpha_flag),
                               detail::parse_strategy(beta_flag), gamma(), base);
      }
      detail::emit(doc.dump(2) + "\n", cfg.output.path, out);
      return kOk;
    }
  } catch (const WriteError& e) {
    err << "error: " << e.what() << '\n';
    return kWriteFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace qgame::cli
