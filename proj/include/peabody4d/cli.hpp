#pragma once

#include <iosfwd>

namespace peabody4d {

enum ExitStatus : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitIo = 3 };

// Entry point of the peabody4d tool, with explicit streams so tests can run
// it in process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace peabody4d
