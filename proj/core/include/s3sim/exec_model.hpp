#pragma once

#include <cstdint>
#include <span>

#include "s3sim/monitor.hpp"
#include "s3sim/rng.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

using Cycles = std::int64_t;

struct CpuModel {
    std::uint64_t frequency_hz{2'670'000'000}; // 2.67 GHz
    Cycles message_overhead_cycles{130};
};

/// Generative model of the control task's per-iteration cost on the virtual
/// CPU. The first cold_start_iterations draw from [steady_high,
/// cold_start_worst] (cache warm-up); afterwards iterations draw uniformly
/// from the steady band, shifted with probability upper_band_probability by
/// a uniform extra in [upper_band_extra_low, upper_band_extra_high] (random
/// last-level-cache evictions) and further inflated with probability
/// spike_probability by a uniform extra in [spike_extra_low,
/// spike_extra_high] (bus contention). Both probabilities default to zero:
/// the default steady band already spans the full accepted range.
struct ExecTimeDistribution {
    Cycles steady_low{13'070};
    Cycles steady_high{14'660};
    std::int64_t cold_start_iterations{10};
    Cycles cold_start_worst{16'560};
    double upper_band_probability{0.0};
    Cycles upper_band_extra_low{500};
    Cycles upper_band_extra_high{900};
    double spike_probability{0.0};
    Cycles spike_extra_low{1'000};
    Cycles spike_extra_high{5'000};
    // Cost of the measurement instrumentation itself, per iteration, as
    // seen by the dual-loop campaign.
    Cycles instrumentation_overhead_low{260};
    Cycles instrumentation_overhead_high{270};

    void validate() const; // throws std::invalid_argument
};

/// Measured timing envelope of the control task, in cycles, after
/// instrumentation-overhead correction.
struct ExecutionProfile {
    Cycles best{0};
    Cycles worst{0};
    Cycles steady_low{0};
    Cycles steady_high{0};
    Cycles instrumentation_overhead{0};

    bool ordered() const {
        return best <= steady_low && steady_low <= steady_high &&
               steady_high <= worst;
    }
};

/// Converts a cycle count at the given CPU frequency to integer
/// nanoseconds, rounding to nearest (half away from zero).
Duration cycles_to_time(Cycles c, const CpuModel& cpu);

/// Draws one iteration's execution cost. `iteration` is the zero-based
/// iteration index (cold start applies to the first few).
Cycles draw_exec_time(std::int64_t iteration, const ExecTimeDistribution& dist,
                      RngStream& rng);

/// Dual-loop correction: the instrumentation-only loop's median cost is
/// subtracted from every raw sample; best/worst are the min/max over all
/// corrected samples and the steady band is the min/max over the last
/// steady_window of them. Throws std::invalid_argument on an empty trace or
/// a window longer than the trace.
ExecutionProfile dual_loop_profile(std::span<const Cycles> timed_trace,
                                   std::span<const Cycles> instrumentation_trace,
                                   std::size_t steady_window);

/// Guard margins used when turning a measured profile into FSM parameters,
/// plus the idle-heartbeat cadence the idle window is built around.
struct DerivationMargins {
    Duration exec_lower_guard{nanoseconds(800)};
    Duration exec_upper_guard{nanoseconds(300)};
    Duration period_margin{microseconds(5)};
    Duration idle_heartbeat_interval{milliseconds(1)};
    Duration idle_margin{microseconds(10)};
};

/// MustWait_C = steady-low time - lower guard; MustWait_C + CanWait_C =
/// steady-high time + channel jitter + upper guard. Period and idle windows
/// are centred on the period and heartbeat interval with their margins.
/// With checkpoints the control window is split into `legs` equal legs,
/// each guarded the same way. Throws std::invalid_argument if a resulting
/// MustWait is not positive.
FsmConfig derive_fsm_params(const ExecutionProfile& profile,
                            Duration channel_jitter,
                            const DerivationMargins& margins,
                            const CpuModel& cpu, Duration period,
                            std::size_t legs = 1);

} // namespace s3sim
