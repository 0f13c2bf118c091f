#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypopq::cli {

/// Exit codes of run().
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kValidation = 2,
  kPrecisionExhausted = 3,
  kSingularStep = 4,
  kFailure = 5,
};

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// its records to out (or --output). Errors go to err as a JSON object.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypopq::cli
