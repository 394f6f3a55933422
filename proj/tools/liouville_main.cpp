#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/report.hpp"
#include "liouville/suites.hpp"

int main(int argc, char** argv) {
  using namespace liouville;
  std::vector<std::string> args(argv + 1, argv + argc);

  Command cmd;
  try {
    cmd = parse_command(args);
  } catch (const help_requested& h) {
    std::cout << h.text;
    return 0;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n" << usage_text();
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  try {
    rep = run_suite(cmd);  // may write --profile-out / --levels-out
    write_output(cmd.out_path, render_report(rep, cmd.format));
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  // wall time stays out of the report so identical commands emit identical bytes
  std::cerr << "elapsed_ms=" << elapsed << " checks=" << rep.total() << " failed=" << rep.failed()
            << "\n";
  return rep.failed() == 0 ? 0 : 1;
}
