#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "s3sim/channel.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

/// One leg of the control phase: the minimum time that must elapse before
/// the leg's terminating message (MustWait) and the additional jitter
/// allowance on top of it (CanWait). MustWait + CanWait is the maximum.
struct ExecWindow {
    Duration must_wait;
    Duration can_wait;
};

/// Timing-model parameters for the monitor FSM. control_legs describes the
/// control job: with one leg the job is delimited by StartControl and
/// EndControl; with N legs the job additionally sends N-1 Checkpoint
/// messages, each leg carrying its own window. The idle window bounds the
/// gaps between idle heartbeats (and from EndControl to the first one); the
/// period window bounds StartControl-to-StartControl gaps.
struct FsmConfig {
    std::vector<ExecWindow> control_legs{};
    Duration must_wait_i;
    Duration can_wait_i;
    Duration must_wait_p;
    Duration can_wait_p;

    Duration must_wait_c() const { return control_legs.front().must_wait; }
    Duration can_wait_c() const { return control_legs.front().can_wait; }

    /// Throws std::invalid_argument when a value is negative, no leg is
    /// present, or the period window cannot contain one control job.
    void validate() const;
};

FsmConfig single_leg_config(Duration must_wait_c, Duration can_wait_c,
                            Duration must_wait_i, Duration can_wait_i,
                            Duration must_wait_p, Duration can_wait_p);

enum class Location { Init, C1, C2, I1, I2, Tripped };

enum class VerdictKind {
    Nominal,
    ExecTooLong,
    ExecTooShort,
    PeriodTooLong,
    PeriodTooShort,
    IdleSilence,
    IdleTooEarly,
    UnexpectedMessage,
};

struct Verdict {
    VerdictKind kind{VerdictKind::Nominal};
    SimTime detect_time{};

    bool nominal() const { return kind == VerdictKind::Nominal; }
};

enum class ClockId { ClkC, ClkI, ClkP };

/// Live FSM state. Deadlines are absolute instants of the armed timers;
/// period_min is the earliest legal arrival of the next StartControl
/// (anchor + MustWait_P). idle_preempted is the state_I bookkeeping bit for
/// the two-task case: set while the idle task is preempted by the control
/// job. Tripped is absorbing; the standing verdict is carried in `verdict`.
struct MonitorState {
    Location location{Location::Init};
    std::size_t leg{0};
    std::optional<SimTime> clk_c{};
    std::optional<SimTime> clk_i{};
    std::optional<SimTime> clk_p{};
    std::optional<SimTime> period_min{};
    bool idle_preempted{false};
    Verdict verdict{};
    SimTime last_event{};
};

/// Advances the FSM on a message arrival. Pure: returns the successor state
/// and the verdict standing after the event. Requires arrival >= the last
/// processed event time (the monitor consumes an ordered stream).
std::pair<MonitorState, Verdict> on_message(MonitorState state,
                                            MessageKind kind, SimTime arrival,
                                            const FsmConfig& cfg);

/// Advances the FSM on a timer expiry. The named timer must be armed and
/// due exactly at `now`; anything else is a harness bug and throws.
std::pair<MonitorState, Verdict> on_timer(MonitorState state, ClockId which,
                                          SimTime now, const FsmConfig& cfg);

/// Latest possible trip for a silent failure anchored at a job-start (or
/// checkpoint) message: the largest MustWait + CanWait over the control
/// legs. Equals MustWait_C + CanWait_C for the single-leg configuration.
Duration worst_case_detection_latency(const FsmConfig& cfg);

std::string to_string(Location loc);
std::string to_string(VerdictKind kind);
std::string to_string(ClockId id);

} // namespace s3sim
