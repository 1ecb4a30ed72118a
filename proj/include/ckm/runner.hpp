#pragma once

// Subcommand dispatch behind the CLI: executes a validated RunConfig and
// writes its output files. Returns the process exit status (0 success,
// 2 validation, 3 runtime failure such as a pole, instability or blow-up).

#include <iosfwd>
#include <string>

#include "ckm/config.hpp"

namespace ckm {

int run(const RunConfig& config, std::ostream& log);

/// Convenience wrapper: parse, run, map error categories to exit codes.
int run_config_text(const std::string& text, std::ostream& log);

}  // namespace ckm
