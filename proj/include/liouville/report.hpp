#pragma once

#include <string>
#include <vector>

namespace liouville {

/// One verified identity: pass holds exactly when residual <= tolerance.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Structured residual record emitted by the CLI. Serialization is
/// deterministic: fixed key order, 17 significant digits, LF line endings.
/// timing_ms is pinned to 0 in emitted reports so identical commands produce
/// byte-identical files; wall time goes to stderr instead.
struct VerificationReport {
  std::string schema_version = "1";
  std::string command;
  int n = 0;
  struct Input {
    std::string key;
    std::string value;
    bool quoted = false;  // false: value is a JSON number token
  };
  std::vector<Input> inputs;
  std::vector<Check> checks;
  long long timing_ms = 0;

  void add_input(const std::string& key, const std::string& value);
  void add_input(const std::string& key, double value);
  void add_input(const std::string& key, int value);

  /// Appends a check; pass is computed from residual <= tolerance. A
  /// non-finite residual counts as failed.
  Check& add_check(const std::string& name, double lhs, double rhs, double residual,
                   double tolerance);

  int total() const { return static_cast<int>(checks.size()); }
  int passed() const;
  int failed() const { return total() - passed(); }
};

/// 17-significant-digit decimal form (%.17g); "inf"/"nan" spelled out.
std::string format_number(double v);

std::string to_json(const VerificationReport& rep);
std::string to_csv(const VerificationReport& rep);

/// Writes content to path ("-" or empty means stdout). Throws io_error.
void write_output(const std::string& path, const std::string& content);

}  // namespace liouville
