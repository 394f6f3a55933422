#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "liouville/errors.hpp"
#include "liouville/report.hpp"
#include "liouville/suites.hpp"

using namespace liouville;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LIOUVILLE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string tmp_path(const std::string& name) {
  return std::string(LIOUVILLE_TEST_TMPDIR) + "/" + name;
}

}  // namespace

TEST_CASE("parse_command: subcommands and flags") {
  {
    const Command c = parse_command({"constants", "--n", "2"});
    CHECK(c.kind == Command::Kind::constants);
    CHECK(c.n == 2);
    CHECK(c.raw == "constants --n 2");
  }
  {
    const Command c =
        parse_command({"verify", "pohozaev", "--n", "3", "--lambda", "1", "--R", "1"});
    CHECK(c.kind == Command::Kind::verify);
    CHECK(c.verify_what == "pohozaev");
    CHECK(c.n == 3);
    CHECK(c.lambda == 1.0);
    REQUIRE(c.R_list.size() == 1);
    CHECK(c.R_list[0] == 1.0);
  }
  {
    const Command c = parse_command({"shoot", "--n", "2", "--alpha", "2.079442", "--rmax", "50"});
    CHECK(c.kind == Command::Kind::shoot);
    CHECK(c.has_alpha);
    CHECK(c.alpha == doctest::Approx(2.079442));
    CHECK(c.rmax == 50.0);
  }
  {
    const Command c = parse_command({"sweep", "--n-grid", "2,3", "--lambda-grid", "1,2"});
    CHECK(c.kind == Command::Kind::sweep);
    CHECK(c.n_grid == std::vector<int>{2, 3});
    CHECK(c.lambda_grid == std::vector<double>{1.0, 2.0});
  }
}

TEST_CASE("parse_command: rejection paths") {
  CHECK_THROWS_AS(parse_command({"verify", "bogus"}), usage_error);
  CHECK_THROWS_AS(parse_command({"frobnicate"}), usage_error);
  CHECK_THROWS_AS(parse_command({"constants", "--no-such-flag"}), usage_error);
  CHECK_THROWS_AS(parse_command({"constants", "--n", "1"}), usage_error);
  CHECK_THROWS_AS(parse_command({"constants", "--n", "17"}), usage_error);
  CHECK_THROWS_AS(parse_command({"shoot", "--lambda", "-1"}), usage_error);
  CHECK_THROWS_AS(parse_command({"shoot", "--rtol", "0.5"}), usage_error);
  CHECK_THROWS_AS(parse_command({"verify", "mass", "--y", "1"}), usage_error);  // wrong length
  CHECK_THROWS_AS(parse_command({}), usage_error);
  CHECK_THROWS_AS(parse_command({"--help"}), help_requested);
}

TEST_CASE("run_suite: deterministic byte-for-byte output") {
  const Command cmd = parse_command({"verify", "levelsets", "--n", "2"});
  const std::string a = to_json(run_suite(cmd));
  const std::string b = to_json(run_suite(cmd));
  CHECK(a == b);
  const std::string c1 = to_csv(run_suite(cmd));
  const std::string c2 = to_csv(run_suite(cmd));
  CHECK(c1 == c2);
}

TEST_CASE("run_suite: verify all with defaults passes every check") {
  const Command cmd = parse_command({"verify", "all", "--n", "2"});
  const VerificationReport rep = run_suite(cmd);
  CHECK(rep.failed() == 0);
  CHECK(rep.total() > 20);
  CHECK(rep.passed() == rep.total());
}

TEST_CASE("run_suite: verify limit-mass emits the root check") {
  const Command cmd = parse_command({"verify", "limit-mass", "--n", "2"});
  const VerificationReport rep = run_suite(cmd);
  REQUIRE(rep.checks.size() >= 1);
  CHECK(rep.checks[0].name == "limit_mass_root(n=2)");
  CHECK(rep.checks[0].lhs == doctest::Approx(25.13274).epsilon(1e-6));
  CHECK(rep.checks[0].pass);
  CHECK(rep.failed() == 0);
}

TEST_CASE("run_suite: shoot with the rounded spec alpha passes at 1e-6") {
  const Command cmd = parse_command({"shoot", "--n", "2", "--alpha", "2.079442", "--rmax", "50"});
  const VerificationReport rep = run_suite(cmd);
  CHECK(rep.failed() == 0);
  bool found = false;
  for (const Check& c : rep.checks)
    if (c.name.rfind("integrate_radial(family_sup_error", 0) == 0) {
      found = true;
      CHECK(c.tolerance == 1e-6);
      CHECK(c.pass);
    }
  CHECK(found);
}

TEST_CASE("emit_report: JSON round-trip is field-for-field faithful") {
  const Command cmd = parse_command({"verify", "limit-mass", "--n", "3"});
  const VerificationReport rep = run_suite(cmd);
  const nlohmann::json j = nlohmann::json::parse(to_json(rep));
  CHECK(j["schema_version"] == "1");
  CHECK(j["command"] == rep.command);
  CHECK(j["n"] == rep.n);
  REQUIRE(j["checks"].size() == rep.checks.size());
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const auto& jc = j["checks"][i];
    CHECK(jc["name"] == rep.checks[i].name);
    CHECK(jc["lhs"].get<double>() == rep.checks[i].lhs);
    CHECK(jc["rhs"].get<double>() == rep.checks[i].rhs);
    CHECK(jc["residual"].get<double>() == rep.checks[i].residual);
    CHECK(jc["tolerance"].get<double>() == rep.checks[i].tolerance);
    CHECK(jc["pass"].get<bool>() == rep.checks[i].pass);
  }
  CHECK(j["summary"]["total"].get<int>() == rep.total());
  CHECK(j["summary"]["passed"].get<int>() == rep.passed());
  CHECK(j["summary"]["failed"].get<int>() == rep.failed());
  CHECK(j["timing_ms"].get<long long>() == 0);
  for (const auto& in : rep.inputs) CHECK(j["inputs"].contains(in.key));
}

TEST_CASE("emit_report: CSV schema") {
  const Command cmd = parse_command({"verify", "limit-mass", "--n", "2"});
  const VerificationReport rep = run_suite(cmd);
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("name,lhs,rhs,residual,tolerance,pass\n", 0) == 0);
  CHECK(csv.find("name,lhs,rhs,residual,tolerance,pass",
                 1) == std::string::npos);  // header exactly once
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(rep.checks.size()) + 1);
  CHECK(csv.find('\r') == std::string::npos);  // LF endings only
}

TEST_CASE("format_number: 17 significant digits round-trip") {
  for (double v : {0.1, 3.141592653589793, 25.132741228718345, 1e-300, -4.0}) {
    const std::string s = format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("write_output: io_error on unwritable path") {
  CHECK_THROWS_AS(write_output("/nonexistent-dir/report.json", "{}"), io_error);
}

TEST_CASE("cli process: exit codes 0, 1, 2, 3") {
  CHECK(run_cli("constants --n 2") == 0);
  CHECK(run_cli("verify limit-mass --n 4") == 0);
  // a deliberately loose integration fails the 1e-6 sup-error contract
  CHECK(run_cli("shoot --n 2 --rtol 9e-3 --atol 9e-3") == 1);
  CHECK(run_cli("verify bogus") == 2);
  CHECK(run_cli("no-such-subcommand") == 2);
  CHECK(run_cli("constants --n 2 --out /nonexistent-dir/x.json") == 3);
}

TEST_CASE("cli process: identical commands produce byte-identical files") {
  const std::string p1 = tmp_path("det_a.json");
  const std::string p2 = tmp_path("det_b.json");
  REQUIRE(run_cli("verify asymptotics --n 2 --out " + p1) == 0);
  REQUIRE(run_cli("verify asymptotics --n 2 --out " + p2) == 0);
  const std::string a = slurp(p1), b = slurp(p2);
  CHECK(!a.empty());
  CHECK(a == b);
}

TEST_CASE("cli process: profile and level-set dumps") {
  const std::string prof = tmp_path("profile.csv");
  REQUIRE(run_cli("shoot --n 2 --rmax 20 --profile-out " + prof) == 0);
  const std::string pcsv = slurp(prof);
  CHECK(pcsv.rfind("r,U,dU_dr,flux,mass_in_ball\n", 0) == 0);
  const std::string lev = tmp_path("levels.csv");
  REQUIRE(run_cli("verify levelsets --n 2 --levels-out " + lev) == 0);
  const std::string lcsv = slurp(lev);
  CHECK(lcsv.rfind("t,R,volume,mass,perimeter_grad,coarea,D1,D2,D3,D4\n", 0) == 0);
  CHECK(std::count(lcsv.begin(), lcsv.end(), '\n') == 51);
}
