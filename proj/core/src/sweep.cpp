#include "s3sim/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "s3sim/simulation.hpp"

namespace s3sim {

SweepResult run_sweep(const Scenario& base, const std::string& axis,
                      const std::vector<double>& values,
                      const std::filesystem::path& out_dir) {
    SweepResult result;
    result.axis = axis;
    std::filesystem::create_directories(out_dir);
    std::size_t index = 0;
    for (const double value : values) {
        const Scenario scenario = with_axis_value(base, axis, value);
        const auto run_dir = out_dir / ("run_" + std::to_string(index++));
        SweepRow row;
        row.value = value;
        row.report = run_scenario(scenario, run_dir);
        result.rows.push_back(std::move(row));
    }
    std::ofstream csv(out_dir / "sweep.csv", std::ios::binary);
    csv << sweep_to_csv(result);
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "axis_value,detection_time_ns,detection_cause,verdict,"
           "detection_latency_ns,mean_infected_exec_cycles,iteration_count,"
           "plant_destroyed,first_unsafe_time_ns\n";
    char buffer[64];
    for (const SweepRow& row : result.rows) {
        std::snprintf(buffer, sizeof(buffer), "%.9g", row.value);
        out << buffer << ',';
        if (row.report.detection_time) {
            out << row.report.detection_time->ns;
        }
        out << ',';
        if (row.report.detection_cause) {
            out << to_string(*row.report.detection_cause);
        }
        out << ',' << to_string(row.report.verdict) << ',';
        if (row.report.detection_latency) {
            out << row.report.detection_latency->ns;
        }
        out << ',';
        std::snprintf(buffer, sizeof(buffer), "%.9g",
                      row.report.mean_infected_exec_cycles);
        out << buffer << ',' << row.report.iteration_count << ','
            << (row.report.plant_destroyed ? "true" : "false") << ',';
        if (row.report.first_unsafe_time) {
            out << row.report.first_unsafe_time->ns;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace s3sim
