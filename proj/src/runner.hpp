#pragma once

#include "config.hpp"
#include "report.hpp"

#include <string>

namespace discrimlab {

// Executes one toolkit command over a parsed configuration and returns the
// report. Commands: discrim, ontic-bound, ontic-search, bell-verify,
// bell-sweep, sample. Unknown commands and malformed parameters throw
// std::invalid_argument. Identical configurations (including the seed)
// produce identical reports; sweep rows run concurrently on split RNG
// streams and are emitted in input order.
Report run_command(const std::string& command, const KeyValueConfig& cfg);

}  // namespace discrimlab
