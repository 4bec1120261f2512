#ifndef CHERMITE_CLI_HPP
#define CHERMITE_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>

namespace chermite::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformedInput = 1,
  kIdentityFailure = 2,
  kDomainViolation = 3,
};

/// Runs one command line. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

} // namespace chermite::cli

#endif // CHERMITE_CLI_HPP
