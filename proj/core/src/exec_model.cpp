#include "s3sim/exec_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace s3sim {

void ExecTimeDistribution::validate() const {
    if (steady_low <= 0 || steady_high <= 0 || cold_start_worst <= 0) {
        throw std::invalid_argument("exec distribution: cycle values must be positive");
    }
    if (steady_low > steady_high) {
        throw std::invalid_argument("exec distribution: steady_low > steady_high");
    }
    if (cold_start_iterations < 0) {
        throw std::invalid_argument("exec distribution: negative cold start count");
    }
    if (cold_start_worst < steady_high) {
        throw std::invalid_argument("exec distribution: cold_start_worst < steady_high");
    }
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(upper_band_probability) || !probability(spike_probability)) {
        throw std::invalid_argument("exec distribution: probabilities must be in [0,1]");
    }
    if (upper_band_extra_low > upper_band_extra_high ||
        spike_extra_low > spike_extra_high ||
        instrumentation_overhead_low > instrumentation_overhead_high) {
        throw std::invalid_argument("exec distribution: range low > high");
    }
}

Duration cycles_to_time(Cycles c, const CpuModel& cpu) {
    if (cpu.frequency_hz == 0) {
        throw std::invalid_argument("CpuModel: frequency must be positive");
    }
    const bool negative = c < 0;
    const std::uint64_t mag = static_cast<std::uint64_t>(negative ? -c : c);
    const std::uint64_t hz = cpu.frequency_hz;
    // Split off whole seconds first so the remainder product stays in
    // 64 bits for any frequency below ~9.2 GHz.
    const std::uint64_t whole = mag / hz;
    const std::uint64_t rest = mag % hz;
    const std::uint64_t ns =
        whole * 1'000'000'000u + (rest * 1'000'000'000u + hz / 2) / hz;
    const auto value = static_cast<std::int64_t>(ns);
    return Duration{negative ? -value : value};
}

Cycles draw_exec_time(std::int64_t iteration, const ExecTimeDistribution& dist,
                      RngStream& rng) {
    if (iteration < dist.cold_start_iterations) {
        return rng.uniform_i64(dist.steady_high, dist.cold_start_worst);
    }
    Cycles cycles = rng.uniform_i64(dist.steady_low, dist.steady_high);
    if (rng.bernoulli(dist.upper_band_probability)) {
        cycles += rng.uniform_i64(dist.upper_band_extra_low,
                                  dist.upper_band_extra_high);
    }
    if (rng.bernoulli(dist.spike_probability)) {
        cycles += rng.uniform_i64(dist.spike_extra_low, dist.spike_extra_high);
    }
    return cycles;
}

namespace {

Cycles median(std::vector<Cycles> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2;
}

} // namespace

ExecutionProfile dual_loop_profile(std::span<const Cycles> timed_trace,
                                   std::span<const Cycles> instrumentation_trace,
                                   std::size_t steady_window) {
    if (timed_trace.empty() || instrumentation_trace.empty()) {
        throw std::invalid_argument("dual_loop_profile: empty trace");
    }
    if (steady_window == 0 || steady_window > timed_trace.size()) {
        throw std::invalid_argument(
            "dual_loop_profile: steady window must be in [1, trace length]");
    }

    const Cycles overhead = median(std::vector<Cycles>(
        instrumentation_trace.begin(), instrumentation_trace.end()));

    ExecutionProfile profile;
    profile.instrumentation_overhead = overhead;
    profile.best = timed_trace[0] - overhead;
    profile.worst = profile.best;
    for (const Cycles raw : timed_trace) {
        const Cycles corrected = raw - overhead;
        profile.best = std::min(profile.best, corrected);
        profile.worst = std::max(profile.worst, corrected);
    }
    const std::size_t first = timed_trace.size() - steady_window;
    profile.steady_low = timed_trace[first] - overhead;
    profile.steady_high = profile.steady_low;
    for (std::size_t i = first; i < timed_trace.size(); ++i) {
        const Cycles corrected = timed_trace[i] - overhead;
        profile.steady_low = std::min(profile.steady_low, corrected);
        profile.steady_high = std::max(profile.steady_high, corrected);
    }
    return profile;
}

FsmConfig derive_fsm_params(const ExecutionProfile& profile,
                            Duration channel_jitter,
                            const DerivationMargins& margins,
                            const CpuModel& cpu, Duration period,
                            std::size_t legs) {
    if (!profile.ordered()) {
        throw std::invalid_argument("derive_fsm_params: profile not ordered");
    }
    if (channel_jitter.ns < 0) {
        throw std::invalid_argument("derive_fsm_params: negative jitter");
    }
    if (legs == 0) {
        throw std::invalid_argument("derive_fsm_params: need at least one leg");
    }

    FsmConfig cfg;
    const auto n = static_cast<Cycles>(legs);
    for (std::size_t i = 0; i < legs; ++i) {
        const Duration low = cycles_to_time(profile.steady_low / n, cpu);
        const Duration high = cycles_to_time(profile.steady_high / n, cpu);
        const Duration must_wait = low - margins.exec_lower_guard;
        const Duration can_wait =
            (high + channel_jitter + margins.exec_upper_guard) - must_wait;
        cfg.control_legs.push_back(ExecWindow{must_wait, can_wait});
    }
    cfg.must_wait_p = period - margins.period_margin;
    cfg.can_wait_p = margins.period_margin * 2;
    cfg.must_wait_i = margins.idle_heartbeat_interval - margins.idle_margin;
    cfg.can_wait_i = margins.idle_margin * 2;

    for (const ExecWindow& leg : cfg.control_legs) {
        if (leg.must_wait.ns <= 0) {
            throw std::invalid_argument(
                "derive_fsm_params: non-positive MustWait_C (guards too wide)");
        }
    }
    if (cfg.must_wait_i.ns <= 0 || cfg.must_wait_p.ns <= 0) {
        throw std::invalid_argument(
            "derive_fsm_params: non-positive MustWait (margins too wide)");
    }
    cfg.validate();
    return cfg;
}

} // namespace s3sim
