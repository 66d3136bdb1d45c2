#pragma once

#include "specgraph/config.hpp"

namespace specgraph {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

/// Runs cfg.command, writing outputs under cfg.out. Never throws: failures are
/// written to <out>/error.json and mapped to the exit code.
int run_command(const RunConfig& cfg);

} // namespace specgraph
