#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace powiv::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,      ///< bad flags or config
    kNoSolution = 3, ///< closed form found no admissible root
    kOracle = 4,     ///< iterative reference solver failed
};

/// Runs one command line (without the program name) and returns the exit
/// code. Verbs: price, iv, simulate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace powiv::cli
