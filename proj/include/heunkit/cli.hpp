#pragma once

#include <iosfwd>

namespace heunkit {

// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitDomain = 3, kExitVerification = 4 };

// Runs the heunkit command line: eval | region | compare | transform | verify.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heunkit
