#pragma once

#include <iosfwd>

namespace hetbound {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitHypothesis = 3,
    kExitNonConvergence = 4,
};

/// Entry point of the `hetbound` tool; writes reports to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetbound
