#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fluxlab/config.hpp"

namespace fluxlab {

// In-memory result table of one experiment run; `columns` and `rows` carry
// exactly the values written to the CSV and JSON outputs.
struct RunTable {
    std::string kind;
    std::string label;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Executes the experiment described by `cfg`.  Independent work items
// (radii, trajectories) may run on `workers` threads; results are merged in
// index order, so the output is byte-identical for every worker count.
RunTable run_experiment(const ExperimentConfig& cfg, int workers = 1);

// Writes table.csv and table.json under out_dir (created if needed), named
// <kind>[-<label>].{csv,json}.  Returns the paths written.  Numbers are
// rendered with shortest round-trip formatting, so reruns are byte-identical.
std::vector<std::filesystem::path> write_outputs(const RunTable& table,
                                                 const std::filesystem::path& out_dir);

// CSV serialization of a table (used by write_outputs; exposed for tests).
std::string to_csv(const RunTable& table);
std::string to_json_summary(const RunTable& table);

}  // namespace fluxlab
