#ifndef INTERPK_TOOLS_CLI_HPP_
#define INTERPK_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace interpk::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,
  kConfigError = 2,
  kVerifyFailed = 3,
};

// Runs one command; args excludes the program name. The report goes to
// --output when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interpk::cli

#endif  // INTERPK_TOOLS_CLI_HPP_
