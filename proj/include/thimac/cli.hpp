#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thimac {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,   // validation errors, failed simulation, conformance violations
    kExitParse = 2,
    kExitUsage = 3,
    kExitIo = 4,
};

/// Runs `tm <args...>` (args excludes the program name). Artifacts go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thimac
