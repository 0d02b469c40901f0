#pragma once

#include <ostream>

namespace llab::cli {

/// Exit codes.
enum Exit : int { kOk = 0, kRejected = 1, kUsage = 2, kIntegrity = 3, kFailure = 4 };

/// The whole command line. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace llab::cli
