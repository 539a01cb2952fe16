#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "s3sim/decision.hpp"
#include "s3sim/monitor.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

struct ModeSwitch {
    SimTime time{};
    ControllerChoice to{ControllerChoice::Safety};
    SwitchCause cause{SwitchCause::None};
};

/// Per-run outcome summary, serialized to report.json. All durations and
/// instants are integer nanoseconds of virtual time.
struct RunReport {
    std::uint64_t seed{0};
    std::string monitor; // "s3a" | "vanilla"

    std::optional<SimTime> detection_time{}; // first switch to safety
    std::optional<SwitchCause> detection_cause{};
    VerdictKind verdict{VerdictKind::Nominal}; // final FSM verdict
    std::optional<SimTime> trip_time{};

    std::optional<SimTime> first_unsafe_time{};
    bool plant_destroyed{false};
    std::optional<SimTime> destroyed_time{};

    std::int64_t iteration_count{0};
    std::int64_t messages_sent{0};
    std::int64_t messages_per_iteration{0};
    Duration sender_overhead_per_iteration{};

    std::optional<SimTime> first_infected_release{};
    std::optional<SimTime> first_infected_start_arrival{};
    std::optional<Duration> detection_latency{}; // detection - infected start arrival
    double mean_infected_exec_cycles{0.0};

    std::vector<ModeSwitch> mode_switches{};
};

std::string report_to_json(const RunReport& report);

} // namespace s3sim
