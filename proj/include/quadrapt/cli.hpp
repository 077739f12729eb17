#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quadrapt {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_numerical = 1, exit_usage = 2, exit_acceptance = 3 };

/// Runs one command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadrapt
