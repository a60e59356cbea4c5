#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pilotopt {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitUsage = 2,
    kExitInfeasible = 3,
};

/// Runs the command line front end. args[0] is the program name.
/// Subcommands: optimize, rate, figure, sweep, validate.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pilotopt
