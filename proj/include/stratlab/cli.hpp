// Subcommand dispatch shared by the executable and the end-to-end tests.

#pragma once

#include <string>
#include <vector>

#include "stratlab/config.hpp"

namespace stratlab {

// subcommands: simulate, limit, diff, sweep, dispersion, kernel, report
int run_command(const std::string& subcommand, const RunConfig& cfg);

// Full argv-level entry (parses flags --config/--output/--threads/--seed).
int cli_main(const std::vector<std::string>& args);

}  // namespace stratlab
