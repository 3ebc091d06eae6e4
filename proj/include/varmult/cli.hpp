#pragma once

#include <ostream>

namespace varmult {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitHypothesis = 2,
    kExitInvariant = 3,
    kExitIo = 4,
};

/// Entry point of the `varmult` tool; subcommands vr-norm, decompose,
/// varcarleson, maximal, sweep, verify.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace varmult
