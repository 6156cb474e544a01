#pragma once

#include <string>
#include <vector>

#include "rydspec/config.hpp"

namespace rydspec {

// Shortest decimal representation that round-trips to the same double; used
// for every number written to CSV so outputs are bit-stable across runs.
std::string format_double(double value);

// Executes the experiment and writes its artifacts (CSV and/or JSON,
// depending on the mode and output options) into out_dir, creating the
// directory if needed.  `threads` <= 0 keeps the hardware default.  Returns
// the paths of the files written.
std::vector<std::string> run_experiment(const ExperimentConfig& config,
                                        const std::string& out_dir, int threads);

} // namespace rydspec
