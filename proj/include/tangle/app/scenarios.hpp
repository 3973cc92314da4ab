#pragma once

#include <string>
#include <vector>

#include "tangle/app/config.hpp"
#include "tangle/app/report.hpp"

namespace tangle::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitTolerance = 3,
  kExitIo = 4,
};

struct RunResult {
  TraceReport report;
  int status = kExitOk;
  std::vector<std::string> breaches;  // tolerance breaches, one line each
};

/// Runs a validated configuration. Deterministic given the config and seed.
RunResult run(const RunConfig& config);

}  // namespace tangle::app
