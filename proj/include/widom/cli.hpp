#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace widom {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_parse_error = 2,
  exit_domain_error = 3,
  exit_fit_residual = 4,
  exit_no_convergence = 5,
};

/// Runs the `widom` command line with the given arguments (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace widom
