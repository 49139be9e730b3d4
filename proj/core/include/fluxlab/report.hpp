#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fluxlab {

// A CSV produced by run_experiment, read back.
struct CsvTable {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Parses a results CSV; throws std::runtime_error on unreadable files,
// malformed headers, tables with no data rows, or tables missing the
// columns expected for their kind (the message names the missing columns).
CsvTable read_csv(const std::filesystem::path& path);

// Least-squares slope of log(y) vs log(x) over pairs with x, y > 0.
// Throws std::invalid_argument if fewer than two such pairs exist.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Human-readable convergence report for one or more result CSVs: the value
// table plus log-log slopes of every positive column against the scan
// variable (R or t).
std::string report_text(const std::vector<std::filesystem::path>& files);

}  // namespace fluxlab
