#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuspgeom::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsageError = 2 };

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "CUSPGEOM_OUT";

// Full command line including the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// Quick invariant suite; returns the number of failed checks and prints one line per check.
int selftest(std::ostream& out);

}  // namespace cuspgeom::cli
