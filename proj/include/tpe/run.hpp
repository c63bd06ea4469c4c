#pragma once

#include <string>
#include <vector>

namespace tpe {

// Batch front-end. Subcommands: rates, evolve, sweep, spectrum, resonance.
// Exit codes: 0 success, 2 validation/config, 3 numerical accuracy, 4 horizon.
int run(const std::vector<std::string>& args);

}  // namespace tpe
