#include "liouville/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "liouville/errors.hpp"

namespace liouville {

void VerificationReport::add_input(const std::string& key, const std::string& value) {
  inputs.push_back(Input{key, value, true});
}

void VerificationReport::add_input(const std::string& key, double value) {
  inputs.push_back(Input{key, format_number(value), !std::isfinite(value)});
}

void VerificationReport::add_input(const std::string& key, int value) {
  inputs.push_back(Input{key, std::to_string(value), false});
}

Check& VerificationReport::add_check(const std::string& name, double lhs, double rhs,
                                     double residual, double tolerance) {
  Check c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  checks.push_back(std::move(c));
  return checks.back();
}

int VerificationReport::passed() const {
  int k = 0;
  for (const Check& c : checks)
    if (c.pass) ++k;
  return k;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

// number token, or quoted string for non-finite values
std::string json_number(double v) {
  return std::isfinite(v) ? format_number(v) : "\"" + format_number(v) + "\"";
}

}  // namespace

std::string to_json(const VerificationReport& rep) {
  std::string out;
  out += "{\n";
  out += "  \"schema_version\": \"" + json_escape(rep.schema_version) + "\",\n";
  out += "  \"command\": \"" + json_escape(rep.command) + "\",\n";
  out += "  \"n\": " + std::to_string(rep.n) + ",\n";
  out += "  \"inputs\": {";
  for (std::size_t i = 0; i < rep.inputs.size(); ++i) {
    const auto& in = rep.inputs[i];
    out += (i ? ", " : "");
    out += "\"" + json_escape(in.key) + "\": ";
    out += in.quoted ? "\"" + json_escape(in.value) + "\"" : in.value;
  }
  out += "},\n";
  out += "  \"checks\": [\n";
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const Check& c = rep.checks[i];
    out += "    {\"name\": \"" + json_escape(c.name) + "\", \"lhs\": " + json_number(c.lhs) +
           ", \"rhs\": " + json_number(c.rhs) + ", \"residual\": " + json_number(c.residual) +
           ", \"tolerance\": " + json_number(c.tolerance) +
           ", \"pass\": " + (c.pass ? "true" : "false") + "}";
    out += (i + 1 < rep.checks.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"summary\": {\"total\": " + std::to_string(rep.total()) +
         ", \"passed\": " + std::to_string(rep.passed()) +
         ", \"failed\": " + std::to_string(rep.failed()) + "},\n";
  out += "  \"timing_ms\": " + std::to_string(rep.timing_ms) + "\n";
  out += "}\n";
  return out;
}

std::string to_csv(const VerificationReport& rep) {
  std::string out = "name,lhs,rhs,residual,tolerance,pass\n";
  for (const Check& c : rep.checks) {
    out += c.name + "," + format_number(c.lhs) + "," + format_number(c.rhs) + "," +
           format_number(c.residual) + "," + format_number(c.tolerance) + "," +
           (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw io_error("write_output: stdout write failed");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("write_output: cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw io_error("write_output: write to '" + path + "' failed");
}

}  // namespace liouville
