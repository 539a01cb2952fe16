#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "s3sim/report.hpp"
#include "s3sim/scenario.hpp"

namespace s3sim {

struct SweepRow {
    double value{0.0};
    RunReport report;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepRow> rows;
};

/// Runs the base scenario once per axis value (same seed), collecting one
/// report per value. Throws ConfigError for an unknown or non-numeric axis.
SweepResult run_sweep(const Scenario& base, const std::string& axis,
                      const std::vector<double>& values,
                      const std::filesystem::path& out_dir);

/// CSV with one row per value (header always present, even when empty).
std::string sweep_to_csv(const SweepResult& result);

} // namespace s3sim
