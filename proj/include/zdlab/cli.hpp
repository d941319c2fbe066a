#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zdlab::cli {

/// Exit codes: 0 success, 1 mathematical negative result, 2 usage error,
/// 3 invariant violation or failed certificate re-check.
enum ExitCode : int { kOk = 0, kMath = 1, kUsage = 2, kInvariant = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdlab::cli
