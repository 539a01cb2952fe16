#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "s3sim/exec_model.hpp"
#include "s3sim/scenario.hpp"

namespace s3sim {

struct ProfileResult {
    ExecutionProfile profile;
    FsmConfig fsm;
    std::int64_t iterations{0};
};

/// Simulates the measurement campaign: `iterations` instrumented runs of
/// the control task plus the same number of instrumentation-only (dual
/// loop) runs, then corrects, extracts the profile (steady window = the
/// last 90% of iterations) and derives FSM parameters using the scenario's
/// margins and channel jitter. Deterministic in the scenario seed.
ProfileResult profile_and_derive(const Scenario& scenario,
                                 std::int64_t iterations);

std::string profile_to_json(const ProfileResult& result, const CpuModel& cpu);
std::string fsm_to_json(const FsmConfig& cfg);

/// Writes profile.json and fsm.json into out_dir.
ProfileResult profile_and_derive(const Scenario& scenario,
                                 std::int64_t iterations,
                                 const std::filesystem::path& out_dir);

} // namespace s3sim
