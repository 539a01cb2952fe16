#pragma once

#include <cstdint>
#include <string>

#include "s3sim/cartpole.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

using Cycles = std::int64_t;

enum class AttackKind {
    None,
    Overrun,
    Undertime,
    PeriodDrift,
    IdleSilence,
    Destabilize,
    Replay,
};

/// Declarative attack scenario. Attacks perturb only the untrusted side:
/// the execution schedule, the emitted timing messages, and the actuation
/// value on the complex path. Monitor and decision module internals are
/// never touched.
struct AttackSpec {
    AttackKind kind{AttackKind::None};
    SimTime start_time{};

    // Overrun: malicious loop inside the control task.
    std::int64_t loop_bound{1}; // typical sweep values: 1, 10, 100
    Cycles per_iteration_cost{2'000};

    // Undertime: execution scaled below the accepted window.
    double shrink_factor{0.5};

    // PeriodDrift: each release after start shifts by this much per period.
    Duration drift_per_period{};

    // Replay: length of the recorded send window (must be a whole number of
    // control periods; it loops seamlessly), plus the hidden payload that
    // runs while the stale side channel keeps the monitor happy.
    Duration replay_window{milliseconds(40)};
    bool replay_destabilize{true};
    std::int64_t replay_loop_bound{100};
};

/// Malicious-loop cost: bound iterations of per_iteration_cost cycles on
/// top of the clean draw. bound 0 disables the attack.
Cycles apply_overrun(Cycles base, std::int64_t bound, Cycles per_iteration_cost);

/// Scales execution below the accepted window. Result is at least 1 cycle.
Cycles apply_undertime(Cycles base, double shrink_factor);

/// Max voltage in the direction that grows |theta| fastest: the sign of
/// theta, ties toward +.
ActuationCmd destabilize_command(double theta_rad, double voltage_limit_v);

std::string to_string(AttackKind kind);

} // namespace s3sim
