#include "s3sim/profiler.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "s3sim/rng.hpp"

namespace s3sim {

using nlohmann::json;

ProfileResult profile_and_derive(const Scenario& scenario,
                                 std::int64_t iterations) {
    if (iterations < 1) {
        throw std::invalid_argument("profile_and_derive: iterations must be >= 1");
    }
    scenario.exec.validate();

    RngStream exec_rng(scenario.seed, "profile-exec");
    RngStream instr_rng(scenario.seed, "profile-instrumentation");

    std::vector<Cycles> timed(static_cast<std::size_t>(iterations));
    std::vector<Cycles> instrumentation(static_cast<std::size_t>(iterations));
    for (std::int64_t i = 0; i < iterations; ++i) {
        const Cycles overhead =
            instr_rng.uniform_i64(scenario.exec.instrumentation_overhead_low,
                                  scenario.exec.instrumentation_overhead_high);
        timed[static_cast<std::size_t>(i)] =
            draw_exec_time(i, scenario.exec, exec_rng) + overhead;
        instrumentation[static_cast<std::size_t>(i)] =
            instr_rng.uniform_i64(scenario.exec.instrumentation_overhead_low,
                                  scenario.exec.instrumentation_overhead_high);
    }

    // Steady window: the last 90% of iterations (at least one).
    const auto window = static_cast<std::size_t>(
        std::max<std::int64_t>(1, iterations - iterations / 10));

    ProfileResult result;
    result.iterations = iterations;
    result.profile = dual_loop_profile(timed, instrumentation, window);

    DerivationMargins margins =
        scenario.fsm.derive ? *scenario.fsm.derive : DerivationMargins{};
    margins.idle_heartbeat_interval = scenario.idle.heartbeat_interval;
    result.fsm = derive_fsm_params(result.profile, scenario.channel.jitter_bound,
                                   margins, scenario.cpu, scenario.control.period,
                                   static_cast<std::size_t>(scenario.checkpoints) + 1);
    return result;
}

std::string profile_to_json(const ProfileResult& r, const CpuModel& cpu) {
    const Cycles band = r.profile.steady_high - r.profile.steady_low;
    json j;
    j["iterations"] = r.iterations;
    j["best_cycles"] = r.profile.best;
    j["worst_cycles"] = r.profile.worst;
    j["steady_low_cycles"] = r.profile.steady_low;
    j["steady_high_cycles"] = r.profile.steady_high;
    j["steady_band_cycles"] = band;
    j["steady_band_ns"] = cycles_to_time(band, cpu).ns;
    j["instrumentation_overhead_cycles"] = r.profile.instrumentation_overhead;
    j["best_ns"] = cycles_to_time(r.profile.best, cpu).ns;
    j["worst_ns"] = cycles_to_time(r.profile.worst, cpu).ns;
    j["steady_low_ns"] = cycles_to_time(r.profile.steady_low, cpu).ns;
    j["steady_high_ns"] = cycles_to_time(r.profile.steady_high, cpu).ns;
    return j.dump(2);
}

std::string fsm_to_json(const FsmConfig& cfg) {
    json legs = json::array();
    for (const ExecWindow& leg : cfg.control_legs) {
        legs.push_back({{"must_wait_ns", leg.must_wait.ns},
                        {"can_wait_ns", leg.can_wait.ns}});
    }
    json j;
    j["legs"] = legs;
    j["must_wait_c_ns"] = cfg.must_wait_c().ns;
    j["can_wait_c_ns"] = cfg.can_wait_c().ns;
    j["must_wait_i_ns"] = cfg.must_wait_i.ns;
    j["can_wait_i_ns"] = cfg.can_wait_i.ns;
    j["must_wait_p_ns"] = cfg.must_wait_p.ns;
    j["can_wait_p_ns"] = cfg.can_wait_p.ns;
    j["worst_case_detection_latency_ns"] = worst_case_detection_latency(cfg).ns;
    return j.dump(2);
}

ProfileResult profile_and_derive(const Scenario& scenario,
                                 std::int64_t iterations,
                                 const std::filesystem::path& out_dir) {
    ProfileResult result = profile_and_derive(scenario, iterations);
    std::filesystem::create_directories(out_dir);
    std::ofstream profile(out_dir / "profile.json", std::ios::binary);
    std::ofstream fsm(out_dir / "fsm.json", std::ios::binary);
    if (!profile || !fsm) {
        throw std::runtime_error("cannot open output files in " + out_dir.string());
    }
    profile << profile_to_json(result, scenario.cpu) << '\n';
    fsm << fsm_to_json(result.fsm) << '\n';
    return result;
}

} // namespace s3sim
