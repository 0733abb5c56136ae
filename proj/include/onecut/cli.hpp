#pragma once

// Command layer behind the `onecut` executable.  Every command returns its
// data output and diagnostics separately so callers control the streams.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace onecut {

enum class OutputFormat { Json, Csv, Table };

/// Raw key/value settings; keys are the long flag names without dashes.
using Settings = std::map<std::string, std::string>;

/// Every key accepted on the command line and in config files.
const std::vector<std::string>& setting_keys();

/// Flat `key = value` file; blank lines and `#` comments are skipped.
/// ConfigError on malformed lines or unknown keys.
Settings read_config_file(const std::string& path);

struct RunConfig {
  std::string command;
  std::string potential_spec;
  int n_max = 64;
  unsigned precision_bits = 256;
  int digits = 30;
  std::pair<int, int> window{0, 0};  // {0, 0}: [n_max/2, n_max]
  std::vector<int> powers;           // empty: command default
  /// limit, beta1, odd_relative; decimal text, converted at working precision
  std::map<std::string, std::string> tolerances{{"limit", "1e-6"}, {"beta1", "1e-3"}, {"odd_relative", "1e-3"}};
  std::optional<OutputFormat> format;
  std::string input;                 // fit: CSV path, "-" for standard input
  std::string plot;                  // verify: gnuplot data path
  std::string report = "beta1";      // rh: beta1 | laurent
  std::string jacobi_A = "1";
  std::string jacobi_B = "2";
  bool richardson = false;
  unsigned threads = 0;
};

/// Validates every field before any computation; throws one ConfigError
/// listing all violations.  `precision_bits` defaults to the value of
/// ONECUT_PRECISION_BITS when the setting is absent.
RunConfig make_run_config(const std::string& command, const Settings& settings);

struct CommandResult {
  int exit_code = 0;  // 0 pass, 1 verification failure, 2 configuration or numerical error
  std::string data;
  std::string diagnostics;
};

CommandResult cmd_eqm(const RunConfig& cfg);
CommandResult cmd_rec(const RunConfig& cfg);
CommandResult cmd_rh(const RunConfig& cfg);
CommandResult cmd_fit(const RunConfig& cfg, std::istream& csv);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_jacobi_check(const RunConfig& cfg);

/// Dispatches on cfg.command; library errors become exit code 2.
CommandResult run_command(const RunConfig& cfg, std::istream& in);

/// Full command-line entry point (argv[0] excluded).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace onecut
