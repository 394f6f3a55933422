#pragma once

#include <string>
#include <vector>

#include "liouville/report.hpp"

namespace liouville {

/// Parsed CLI invocation. Defaults are part of the reproducibility surface:
/// the same Command always produces the same report bytes.
struct Command {
  enum class Kind { constants, exact, shoot, verify, sweep };
  Kind kind = Kind::constants;
  std::string verify_what;  // pohozaev|mass|levelsets|asymptotics|sobolev|limit-mass|all

  int n = 2;
  double lambda = 1.0;
  bool has_alpha = false;
  double alpha = 0.0;
  double rmax = 50.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::vector<double> R_list;  // --R (comma separated)
  std::vector<double> y;       // --y off-center point
  int levels = 50;

  std::string format = "json";  // json|csv
  std::string out_path;         // --out, empty = stdout
  std::string profile_out;      // shoot/exact profile CSV
  std::string levels_out;       // level-set CSV

  std::vector<int> n_grid{2, 3, 4};             // sweep
  std::vector<double> lambda_grid{0.5, 1, 2};   // sweep

  std::string raw;  // argv joined, echoed into the report
};

/// Thrown by parse_command when --help is requested; carries the help text.
struct help_requested {
  std::string text;
};

/// Parses argv (program name excluded). Throws usage_error on unknown
/// subcommands/flags or invalid values, help_requested for --help.
Command parse_command(const std::vector<std::string>& argv);

/// Executes the command's verification suite. Numeric failures downstream
/// become failed checks, never exceptions. Deterministic byte-for-byte for
/// identical inputs (timing_ms is pinned to 0 in the report).
VerificationReport run_suite(const Command& cmd);

/// Renders the report in the command's format (json|csv).
std::string render_report(const VerificationReport& rep, const std::string& format);

std::string usage_text();

}  // namespace liouville
