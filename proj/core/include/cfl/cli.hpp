#ifndef CFL_CLI_HPP
#define CFL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cfl::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kVerdictNegative = 1,  // only with --strict-verdict
    kInputError = 2,
    kInternalError = 3,  // cross-check or self-test failure
};

/// Runs one subcommand. args excludes the program name. Reports go to out,
/// diagnostics to err, and "-" reads from in.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cfl::cli

#endif
