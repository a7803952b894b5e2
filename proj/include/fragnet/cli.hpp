#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fragnet {

// Parsed command line. `seed` defaults to a fixed constant so repeated runs
// are reproducible without flags.
struct RunConfig {
    std::string command;      // stats|spectrum|nullcheck|panel|heatmap|export-matrices
    std::string input_path;
    std::string output_path;  // empty = stdout
    int k = 6;                // requested ranks; clamped to the bank count
    int r = 10;               // ensemble replicas
    std::uint64_t seed = 12345;
    double threshold = 2.0;
    std::string format;       // "" = command default (json or csv)
    std::string alias_file;
    std::vector<int> ranks = {2, 3};  // panel/heatmap ranks
};

// Executes one command; returns the process exit code:
//   0 success, 1 validation error, 2 solver or matching failure.
// Output goes to config.output_path or to `out`; diagnostics go to `diag`.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace fragnet
