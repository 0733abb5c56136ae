#include "onecut/cli.hpp"

#include "onecut/asymptotics.hpp"
#include "onecut/equilibrium.hpp"
#include "onecut/errors.hpp"
#include "onecut/potential.hpp"
#include "onecut/recurrence.hpp"
#include "onecut/rh_expansion.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#ifndef ONECUT_VERSION
#define ONECUT_VERSION "0.0.0"
#endif

namespace onecut {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kCommands[] = {"eqm", "rec", "rh", "fit", "verify", "jacobi-check"};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
std::optional<Int> parse_int(const std::string& text) {
  Int value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::optional<std::vector<int>> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto v = parse_int<int>(trim(item));
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

bool uses_potential(const std::string& command) {
  return command == "eqm" || command == "rec" || command == "rh" || command == "verify";
}

bool uses_n_max(const std::string& command) {
  return command == "rec" || command == "verify" || command == "jacobi-check";
}

std::vector<std::string> allowed_formats(const std::string& command) {
  if (command == "rec") return {"csv", "json"};
  if (command == "verify") return {"json", "table"};
  return {"json"};
}

Real tolerance(const RunConfig& cfg, const std::string& name) { return parse_real(cfg.tolerances.at(name)); }

struct Formatter {
  unsigned digits;
  std::string operator()(const Real& x) const { return to_string(x, digits); }
  Json complex(const Complex& z) const { return Json{{"re", (*this)(z.re)}, {"im", (*this)(z.im)}}; }
  Json pauli(const PauliCoefficients& p) const {
    return Json{{"identity", complex(p.identity)},
                {"sigma1", complex(p.sigma1)},
                {"sigma2", complex(p.sigma2)},
                {"sigma3", complex(p.sigma3)}};
  }
};

Json metadata(const std::string& potential, std::size_t node_count) {
  return Json{{"potential", potential},
              {"precision_bits", precision_bits()},
              {"node_count", node_count},
              {"tool_version", ONECUT_VERSION}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json fit_json(const ExpansionFit& fit, const Formatter& fmt) {
  Json coeffs = Json::array();
  Json unc = Json::array();
  for (std::size_t j = 0; j < fit.powers.size(); ++j) {
    coeffs.push_back(fmt(fit.coefficients[j]));
    unc.push_back(fmt(fit.uncertainties[j]));
  }
  return Json{{"powers", fit.powers},
              {"coefficients", coeffs},
              {"uncertainties", unc},
              {"residual_max", fmt(fit.residual_max)},
              {"condition", fmt(fit.condition)},
              {"window", {fit.window.first, fit.window.second}},
              {"method", fit.method == FitMethod::Richardson ? "richardson" : "least-squares"}};
}

EquilibriumMeasure regular_measure(const Potential& p) {
  EquilibriumMeasure m = compute_equilibrium(p);
  m.require_regular();
  return m;
}

RecurrenceOptions recurrence_options(const RunConfig& cfg) {
  RecurrenceOptions opts;
  opts.digits_target = cfg.digits;
  opts.threads = cfg.threads;
  return opts;
}

}  // namespace

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "potential", "n-max",    "precision-bits", "digits", "window", "powers", "format", "tol-limit",
      "tol-beta1", "tol-odd",  "input",          "plot",   "report", "A",      "B",      "method",
      "threads"};
  return keys;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  const std::set<std::string> known(setting_keys().begin(), setting_keys().end());
  Settings out;
  std::vector<std::string> problems;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!known.count(key)) {
      problems.push_back(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    out[key] = value;
  }
  if (!problems.empty()) {
    std::string msg = "invalid config file:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  return out;
}

RunConfig make_run_config(const std::string& command, const Settings& settings) {
  std::vector<std::string> problems;
  RunConfig cfg;
  cfg.command = command;
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    problems.push_back("unknown command '" + command + "'");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = settings.find(key);
    if (it == settings.end()) return std::nullopt;
    return it->second;
  };

  std::optional<std::string> bits_text = get("precision-bits");
  if (!bits_text) {
    if (const char* env = std::getenv("ONECUT_PRECISION_BITS")) bits_text = std::string(env);
  }
  if (bits_text) {
    auto bits = parse_int<unsigned>(*bits_text);
    if (!bits || *bits < 64 || *bits > 65536) {
      problems.push_back("precision-bits must be an integer in [64, 65536], got '" + *bits_text + "'");
    } else {
      cfg.precision_bits = *bits;
    }
  }
  const PrecisionScope scope(cfg.precision_bits);

  if (auto v = get("potential")) cfg.potential_spec = *v;
  if (uses_potential(command)) {
    if (cfg.potential_spec.empty()) {
      problems.push_back("potential is required for '" + command + "'");
    } else {
      try {
        (void)Potential::parse(cfg.potential_spec);
      } catch (const Error& e) {
        problems.push_back("potential: " + std::string(e.what()));
      }
    }
  }

  if (auto v = get("n-max")) {
    auto n = parse_int<int>(*v);
    if (!n || *n < 1) {
      problems.push_back("n-max must be a positive integer, got '" + *v + "'");
    } else {
      cfg.n_max = *n;
    }
  }

  if (auto v = get("digits")) {
    auto d = parse_int<int>(*v);
    const int ceiling = static_cast<int>(precision_digits10()) - 5;
    if (!d || *d < 1 || *d > ceiling) {
      problems.push_back("digits must be an integer in [1, " + std::to_string(ceiling) +
                         "] at this precision, got '" + *v + "'");
    } else {
      cfg.digits = *d;
    }
  }

  if (auto v = get("window")) {
    const auto colon = v->find(':');
    std::optional<int> lo, hi;
    if (colon != std::string::npos) {
      lo = parse_int<int>(trim(v->substr(0, colon)));
      hi = parse_int<int>(trim(v->substr(colon + 1)));
    }
    if (!lo || !hi || *lo < 1 || *lo >= *hi) {
      problems.push_back("window must look like LO:HI with 1 <= LO < HI, got '" + *v + "'");
    } else if (uses_n_max(command) && *hi > cfg.n_max) {
      problems.push_back("window upper end " + std::to_string(*hi) + " exceeds n-max " + std::to_string(cfg.n_max));
    } else {
      cfg.window = {*lo, *hi};
    }
  }

  if (auto v = get("powers")) {
    auto list = parse_int_list(*v);
    if (!list || std::set<int>(list->begin(), list->end()).size() != list->size() ||
        *std::min_element(list->begin(), list->end()) < 0) {
      problems.push_back("powers must be distinct non-negative integers like 0,1,2,3, got '" + *v + "'");
    } else {
      cfg.powers = *list;
    }
  }

  if (command == "verify" || command == "jacobi-check") {
    const auto window = cfg.window == std::pair<int, int>{0, 0} ? default_window(cfg.n_max) : cfg.window;
    if (window.second - window.first + 1 < 7) {
      problems.push_back("fit window [" + std::to_string(window.first) + ", " + std::to_string(window.second) +
                         "] holds fewer than the 7 points the a-fit needs; raise n-max or widen the window");
    }
  }

  if (auto v = get("format")) {
    const auto allowed = allowed_formats(command);
    if (std::find(allowed.begin(), allowed.end(), *v) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      problems.push_back("format '" + *v + "' is not available for '" + command + "' (choose " + list + ")");
    } else {
      cfg.format = *v == "csv" ? OutputFormat::Csv : *v == "table" ? OutputFormat::Table : OutputFormat::Json;
    }
  }

  const std::pair<const char*, const char*> tol_keys[] = {
      {"tol-limit", "limit"}, {"tol-beta1", "beta1"}, {"tol-odd", "odd_relative"}};
  for (const auto& [key, name] : tol_keys) {
    if (auto v = get(key)) {
      try {
        if (!(parse_real(*v) > 0)) throw ArgumentError("not positive");
        cfg.tolerances[name] = *v;
      } catch (const Error&) {
        problems.push_back(std::string(key) + " must be a positive decimal, got '" + *v + "'");
      }
    }
  }

  if (auto v = get("input")) cfg.input = *v;
  if (command == "fit" && cfg.input.empty()) problems.push_back("input is required for 'fit' (use - for stdin)");
  if (auto v = get("plot")) cfg.plot = *v;

  if (auto v = get("report")) {
    if (*v != "beta1" && *v != "laurent") {
      problems.push_back("report must be beta1 or laurent, got '" + *v + "'");
    } else {
      cfg.report = *v;
    }
  }

  for (const char* key : {"A", "B"}) {
    if (auto v = get(key)) {
      try {
        if (!(parse_real(*v) > 0)) throw ArgumentError("not positive");
        (key[0] == 'A' ? cfg.jacobi_A : cfg.jacobi_B) = *v;
      } catch (const Error&) {
        problems.push_back(std::string(key) + " must be a positive decimal, got '" + *v + "'");
      }
    }
  }

  if (auto v = get("method")) {
    if (*v != "least-squares" && *v != "richardson") {
      problems.push_back("method must be least-squares or richardson, got '" + *v + "'");
    } else {
      cfg.richardson = *v == "richardson";
    }
  }

  if (auto v = get("threads")) {
    auto t = parse_int<unsigned>(*v);
    if (!t) {
      problems.push_back("threads must be a non-negative integer, got '" + *v + "'");
    } else {
      cfg.threads = *t;
    }
  }

  if (!problems.empty()) {
    std::string msg = std::to_string(problems.size()) + " configuration problem(s):";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_eqm(const RunConfig& cfg) {
  const PrecisionScope scope(cfg.precision_bits);
  const Formatter fmt{static_cast<unsigned>(cfg.digits)};
  const Potential p = Potential::parse(cfg.potential_spec);
  const EquilibriumMeasure m = compute_equilibrium(p);
  const auto& ep = *m.endpoint_solution();
  const auto& reg = *m.regularity();

  Json j = metadata(p.spec(), ep.node_count);
  j["a"] = fmt(m.a());
  j["b"] = fmt(m.b());
  j["endpoint_residual"] = fmt(ep.residual);
  j["newton_iterations"] = ep.iterations;
  j["normalization_residual"] = fmt(reg.normalization_residual);
  j["lagrange"] = m.lagrange() ? Json(fmt(*m.lagrange())) : Json(nullptr);
  j["regular"] = reg.regular;
  j["regularity"] = Json{{"min_h", fmt(reg.min_h)},
                         {"argmin_h", fmt(reg.argmin_h)},
                         {"h_positive", reg.h_positive},
                         {"min_phi_right", fmt(reg.min_phi_right)},
                         {"phi_right_positive", reg.phi_right_positive},
                         {"min_phi_left", fmt(reg.min_phi_left)},
                         {"phi_left_positive", reg.phi_left_positive},
                         {"inside_domain", reg.inside_domain},
                         {"notes", reg.notes}};
  CommandResult r;
  r.data = dump(j);
  if (!reg.regular) {
    r.exit_code = 1;
    r.diagnostics = "potential is not one-cut regular\n";
  }
  return r;
}

CommandResult cmd_rec(const RunConfig& cfg) {
  const PrecisionScope scope(cfg.precision_bits);
  const Formatter fmt{static_cast<unsigned>(cfg.digits)};
  const Potential p = Potential::parse(cfg.potential_spec);
  const EquilibriumMeasure m = regular_measure(p);
  const RecurrenceTable table = compute_recurrence(p, m, cfg.n_max, recurrence_options(cfg));

  CommandResult r;
  if (cfg.format.value_or(OutputFormat::Csv) == OutputFormat::Json) {
    Json j = metadata(table.potential_spec, table.node_count);
    j["digits"] = cfg.digits;
    Json rows = Json::array();
    for (const auto& e : table.entries) rows.push_back(Json{{"n", e.n}, {"a_nn", fmt(e.a)}, {"b_nn", fmt(e.b)}});
    j["entries"] = rows;
    r.data = dump(j);
    return r;
  }
  std::ostringstream os;
  os << "# potential=" << table.potential_spec << "\n"
     << "# precision_bits=" << table.precision_bits << "\n"
     << "# node_count=" << table.node_count << "\n"
     << "# tool_version=" << ONECUT_VERSION << "\n"
     << "# digits=" << cfg.digits << "\n"
     << "n,a_nn,b_nn\n";
  for (const auto& e : table.entries) os << e.n << ',' << fmt(e.a) << ',' << fmt(e.b) << '\n';
  r.data = os.str();
  return r;
}

CommandResult cmd_rh(const RunConfig& cfg) {
  const PrecisionScope scope(cfg.precision_bits);
  const Formatter fmt{static_cast<unsigned>(cfg.digits)};
  const Potential p = Potential::parse(cfg.potential_spec);
  const EquilibriumMeasure m = regular_measure(p);
  const EndpointLaurentData d = endpoint_laurent(m, p);

  Json j = metadata(p.spec(), m.endpoint_solution()->node_count);
  CommandResult r;
  if (cfg.report == "laurent") {
    const Delta1Laurent lp = delta1_laurent(m, d);
    j["right"] = Json{{"pole2", fmt.pauli(lp.right.pole2)}, {"pole1", fmt.pauli(lp.right.pole1)}};
    j["left"] = Json{{"pole2", fmt.pauli(lp.left.pole2)}, {"pole1", fmt.pauli(lp.left.pole1)}};
    r.data = dump(j);
    return r;
  }

  const R1Moments moments = r1_moments(m, d);
  j["A0"] = fmt(d.A0);
  j["A1"] = fmt(d.A1);
  j["B0"] = fmt(d.B0);
  j["B1"] = fmt(d.B1);
  j["R11"] = fmt.pauli(moments.first);
  j["R12"] = fmt.pauli(moments.second);
  j["beta1_closed"] = fmt(beta1_closed(m));
  try {
    const Beta1Assembly as = assemble_beta1(m, d);
    j["beta1_via_R"] = fmt(as.assembled.re);
    j["assembly_imag"] = fmt(as.assembled.im);
    j["beta1_simplified"] = fmt(as.simplified);
    j["pass"] = true;
  } catch (const CancellationError& e) {
    j["pass"] = false;
    r.exit_code = 1;
    r.diagnostics = std::string("beta_1 assembly failed: ") + e.what() + "\n";
  }
  r.data = dump(j);
  return r;
}

CommandResult cmd_fit(const RunConfig& cfg, std::istream& csv) {
  const PrecisionScope scope(cfg.precision_bits);
  const Formatter fmt{static_cast<unsigned>(cfg.digits)};

  std::map<std::string, std::string> meta;
  Sequence a_seq, b_seq;
  bool header = false;
  int lineno = 0;
  for (std::string line; std::getline(csv, line);) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) meta[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      continue;
    }
    if (!header) {
      if (line != "n,a_nn,b_nn") throw ConfigError("expected CSV header 'n,a_nn,b_nn', got '" + line + "'");
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string n_text, a_text, b_text;
    std::getline(ss, n_text, ',');
    std::getline(ss, a_text, ',');
    std::getline(ss, b_text, ',');
    const auto n = parse_int<int>(n_text);
    if (!n) throw ConfigError("line " + std::to_string(lineno) + ": bad row '" + line + "'");
    a_seq.emplace_back(*n, parse_real(a_text));
    b_seq.emplace_back(*n, parse_real(b_text));
  }
  if (a_seq.empty()) throw ConfigError("no data rows in the recurrence CSV");

  int n_max = 0;
  for (const auto& [n, v] : a_seq) n_max = std::max(n_max, n);
  const auto window = cfg.window == std::pair<int, int>{0, 0} ? default_window(n_max) : cfg.window;
  const std::vector<int> powers = cfg.powers.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.powers;
  const FitMethod method = cfg.richardson ? FitMethod::Richardson : FitMethod::LeastSquares;

  std::size_t nodes = 0;
  if (auto it = meta.find("node_count"); it != meta.end()) nodes = parse_int<std::size_t>(it->second).value_or(0);
  Json j = metadata(meta.count("potential") ? meta["potential"] : "", nodes);
  j["a_nn"] = fit_json(fit_inverse_powers(a_seq, powers, window, method), fmt);
  j["b_nn"] = fit_json(fit_inverse_powers(b_seq, powers, window, method), fmt);
  CommandResult r;
  r.data = dump(j);
  return r;
}

namespace {

std::string verification_table(const VerificationReport& rep, const Formatter& fmt, const VerificationTolerances& tol) {
  std::ostringstream os;
  auto row = [&](const std::string& name, const Real& expected, const Real& fitted, const Real& bound, bool ok) {
    os << std::left << std::setw(14) << name << std::setw(fmt.digits + 10) << fmt(expected)
       << std::setw(fmt.digits + 10) << fmt(fitted) << std::setw(12) << to_string(bound, 3)
       << (ok ? "PASS" : "FAIL") << '\n';
  };
  os << std::left << std::setw(14) << "check" << std::setw(fmt.digits + 10) << "expected"
     << std::setw(fmt.digits + 10) << "fitted" << std::setw(12) << "tolerance" << "status\n";
  row("a limit", rep.a_limit_expected, rep.a_limit_fitted, tol.limit, rep.a_limit_pass);
  row("b limit", rep.b_limit_expected, rep.b_limit_fitted, tol.limit, rep.b_limit_pass);
  row("beta_1", rep.beta1_expected, rep.beta1_fitted, tol.beta1, rep.beta1_pass);
  row("odd alpha", Real(0), rep.odd_alpha_max, rep.odd_alpha_bound, rep.odd_alpha_pass);
  os << "overall: " << (rep.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace

CommandResult cmd_verify(const RunConfig& cfg) {
  const PrecisionScope scope(cfg.precision_bits);
  const Formatter fmt{static_cast<unsigned>(cfg.digits)};
  const Potential p = Potential::parse(cfg.potential_spec);
  const EquilibriumMeasure m = regular_measure(p);
  const RecurrenceTable table = compute_recurrence(p, m, cfg.n_max, recurrence_options(cfg));

  VerificationOptions opts;
  opts.window = cfg.window;
  opts.tolerances = {tolerance(cfg, "limit"), tolerance(cfg, "beta1"), tolerance(cfg, "odd_relative")};
  opts.method = cfg.richardson ? FitMethod::Richardson : FitMethod::LeastSquares;
  if (!cfg.powers.empty()) opts.b_powers = cfg.powers;
  const VerificationReport rep = verify_theorem(p, m, table, opts);

  Json j = metadata(table.potential_spec, table.node_count);
  j["a"] = fmt(m.a());
  j["b"] = fmt(m.b());
  j["a_limit_expected"] = fmt(rep.a_limit_expected);
  j["a_limit_fitted"] = fmt(rep.a_limit_fitted);
  j["b_limit_expected"] = fmt(rep.b_limit_expected);
  j["b_limit_fitted"] = fmt(rep.b_limit_fitted);
  j["beta1_expected"] = fmt(rep.beta1_expected);
  j["beta1_fitted"] = fmt(rep.beta1_fitted);
  j["odd_alpha_max"] = fmt(rep.odd_alpha_max);
  j["odd_alpha_bound"] = fmt(rep.odd_alpha_bound);
  j["checks"] = Json{{"a_limit", rep.a_limit_pass},
                     {"b_limit", rep.b_limit_pass},
                     {"beta1", rep.beta1_pass},
                     {"odd_alpha", rep.odd_alpha_pass}};
  j["pass"] = rep.pass;
  j["a_fit"] = fit_json(rep.a_fit, fmt);
  j["b_fit"] = fit_json(rep.b_fit, fmt);

  CommandResult r;
  const std::string table_text = verification_table(rep, fmt, opts.tolerances);
  if (cfg.format.value_or(OutputFormat::Json) == OutputFormat::Table) {
    r.data = table_text;
  } else {
    r.data = dump(j);
    r.diagnostics = table_text;
  }

  if (!cfg.plot.empty()) {
    std::ofstream plot(cfg.plot);
    if (!plot) throw ConfigError("cannot write plot file '" + cfg.plot + "'");
    plot << "# n  b_nn-beta0_fit   (" << table.potential_spec << ")\n";
    for (const auto& e : table.entries) plot << e.n << ' ' << fmt(e.b - rep.b_limit_fitted) << '\n';
  }
  r.exit_code = rep.pass ? 0 : 1;
  return r;
}

CommandResult cmd_jacobi_check(const RunConfig& cfg) {
  const PrecisionScope scope(cfg.precision_bits);
  const Formatter fmt{static_cast<unsigned>(cfg.digits)};
  const Real A = parse_real(cfg.jacobi_A);
  const Real B = parse_real(cfg.jacobi_B);
  const Potential p = Potential::jacobi(A, B);
  const EquilibriumMeasure m = regular_measure(p);
  const RecurrenceTable table = compute_recurrence(p, m, cfg.n_max, recurrence_options(cfg));

  Real worst(0);
  for (const auto& e : table.entries) {
    const auto [a, b] = jacobi_recurrence_closed(A, B, e.n);
    worst = max(worst, abs(e.a - a) / abs(a));
    worst = max(worst, abs(e.b - b) / max(abs(b), sqrt(a)));
  }
  const Real closed_tol("1e-12");

  const auto window = cfg.window == std::pair<int, int>{0, 0} ? default_window(cfg.n_max) : cfg.window;
  const std::vector<int> powers = cfg.powers.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.powers;
  const ExpansionFit fit = fit_inverse_powers(b_sequence(table), powers, window,
                                              cfg.richardson ? FitMethod::Richardson : FitMethod::LeastSquares);
  // b_nn = beta0 / (1 + 2/(s n)) with s = 2 + A + B
  const Real s = 2 + A + B;
  const Real beta0 = (B * B - A * A) / (s * s);
  const Real beta1 = beta1_closed(m);
  const Real limit_tol = tolerance(cfg, "limit");
  const Real beta1_tol = tolerance(cfg, "beta1");

  const bool closed_ok = worst <= closed_tol;
  const bool beta0_ok = abs(fit.coefficient(0) - beta0) <= limit_tol;
  const bool beta1_ok = abs(fit.coefficient(1) - beta1) <= beta1_tol;

  Json j = metadata(p.spec(), table.node_count);
  j["A"] = fmt(A);
  j["B"] = fmt(B);
  j["a"] = fmt(m.a());
  j["b"] = fmt(m.b());
  j["closed_form_max_relative_error"] = fmt(worst);
  j["beta0_expected"] = fmt(beta0);
  j["beta0_fitted"] = fmt(fit.coefficient(0));
  j["beta1_closed"] = fmt(beta1);
  j["beta1_series"] = fmt(-2 * beta0 / s);
  j["beta1_fitted"] = fmt(fit.coefficient(1));
  if (std::find(powers.begin(), powers.end(), 2) != powers.end()) {
    j["beta2_series"] = fmt(4 * beta0 / (s * s));
    j["beta2_fitted"] = fmt(fit.coefficient(2));
  }
  j["checks"] = Json{{"closed_form", closed_ok}, {"beta0", beta0_ok}, {"beta1", beta1_ok}};
  j["pass"] = closed_ok && beta0_ok && beta1_ok;
  j["b_fit"] = fit_json(fit, fmt);

  CommandResult r;
  r.data = dump(j);
  r.exit_code = j["pass"].get<bool>() ? 0 : 1;
  return r;
}

CommandResult run_command(const RunConfig& cfg, std::istream& in) {
  try {
    if (cfg.command == "eqm") return cmd_eqm(cfg);
    if (cfg.command == "rec") return cmd_rec(cfg);
    if (cfg.command == "rh") return cmd_rh(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "jacobi-check") return cmd_jacobi_check(cfg);
    if (cfg.command == "fit") {
      if (cfg.input == "-") return cmd_fit(cfg, in);
      std::ifstream file(cfg.input);
      if (!file) throw ConfigError("cannot open input '" + cfg.input + "'");
      return cmd_fit(cfg, file);
    }
    throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    return {2, "", "error (" + e.kind() + "): " + e.what() + "\n"};
  }
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium measures, diagonal recurrence coefficients and their 1/n expansions", "onecut"};
  app.set_version_flag("--version", ONECUT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> options;
  const std::map<std::string, std::string> help = {
      {"potential", "poly:c0,c1,...,c2m or jacobi:A,B"},
      {"n-max", "largest n of the diagonal sequence"},
      {"precision-bits", "working significand bits (default 256 or $ONECUT_PRECISION_BITS)"},
      {"digits", "significant digits in data output and self-validation"},
      {"window", "fit window LO:HI (default n_max/2:n_max)"},
      {"powers", "fitted inverse powers, e.g. 0,1,2,3"},
      {"format", "json, csv or table (command dependent)"},
      {"tol-limit", "tolerance of the limit checks"},
      {"tol-beta1", "tolerance of the beta_1 check"},
      {"tol-odd", "relative bound on odd a-coefficients"},
      {"input", "recurrence CSV for fit (- reads stdin)"},
      {"plot", "verify: write gnuplot data of b_nn minus the fitted limit"},
      {"report", "rh: beta1 or laurent"},
      {"A", "jacobi-check: right exponent"},
      {"B", "jacobi-check: left exponent"},
      {"method", "least-squares or richardson"},
      {"threads", "worker threads for the recurrence (0 = all cores)"}};
  for (const auto& key : setting_keys()) options[key] = app.add_option("--" + key, flags[key], help.at(key));
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file; flags win on conflict");

  std::string command;
  for (const char* name : kCommands) {
    app.add_subcommand(name)->callback([&command, name] { command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Settings settings;
  try {
    if (!config_path.empty()) settings = read_config_file(config_path);
  } catch (const Error& e) {
    err << "error (" << e.kind() << "): " << e.what() << '\n';
    return 2;
  }
  for (const auto& [key, opt] : options) {
    if (opt->count() > 0) settings[key] = flags[key];
  }

  RunConfig cfg;
  try {
    cfg = make_run_config(command, settings);
  } catch (const Error& e) {
    err << "error (" << e.kind() << "): " << e.what() << '\n';
    return 2;
  }
  const CommandResult result = run_command(cfg, in);
  out << result.data;
  err << result.diagnostics;
  return result.exit_code;
}

}  // namespace onecut
