#pragma once

// The property suite behind `zdlab selftest`. A corruption target perturbs one
// field of a freshly built document before it is re-verified, so the run must
// fail.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zdlab/execution.hpp"

namespace zdlab::selftest {

struct Options {
  std::optional<std::string> corrupt;
  bool quick = false;  // smaller instance counts
  std::uint64_t seed = 20061;
  Execution exec = Execution::Parallel;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

std::vector<std::string> corruption_targets();

/// Throws UsageError for an unknown corruption target.
std::vector<SuiteResult> run(const Options& opts);

}  // namespace zdlab::selftest
