#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "s3sim/simulation.hpp"

using namespace s3sim;

namespace {

std::string scenario_dir() {
#ifdef S3SIM_SCENARIO_DIR
    return S3SIM_SCENARIO_DIR;
#else
    return "scenarios";
#endif
}

Scenario load(const std::string& name) {
    return load_scenario(scenario_dir() + "/" + name);
}

struct RunOutput {
    RunReport report;
    std::string events;
    std::string trace;
};

RunOutput run(const Scenario& s) {
    std::ostringstream events;
    std::ostringstream trace;
    RunOutput out;
    out.report = run_scenario(s, events, trace);
    out.events = events.str();
    out.trace = trace.str();
    return out;
}

} // namespace

TEST_CASE("clean run: no verdicts, no switches, full iteration count") {
    const Scenario s = load("baseline_short.json");
    const RunOutput out = run(s);
    CHECK(out.report.verdict == VerdictKind::Nominal);
    CHECK_FALSE(out.report.detection_time.has_value());
    CHECK(out.report.mode_switches.empty());
    CHECK_FALSE(out.report.plant_destroyed);
    CHECK_FALSE(out.report.first_unsafe_time.has_value());
    CHECK(out.report.iteration_count == 101); // releases at 0, 20 ms, ..., 2 s
    CHECK(out.report.messages_per_iteration == 2);
    CHECK(out.report.sender_overhead_per_iteration == nanoseconds(100));
}

TEST_CASE("identical scenario and seed give byte-identical streams") {
    const Scenario s = load("baseline_short.json");
    const RunOutput a = run(s);
    const RunOutput b = run(s);
    CHECK(a.events == b.events);
    CHECK(a.trace == b.trace);
    CHECK(report_to_json(a.report) == report_to_json(b.report));

    Scenario reseeded = s;
    reseeded.seed = 2;
    const RunOutput c = run(reseeded);
    CHECK(a.events != c.events);
}

TEST_CASE("overrun is caught by the timing channel within the enforced window") {
    const Scenario s = load("overrun_detect.json");
    const RunOutput out = run(s);
    CHECK(out.report.verdict == VerdictKind::ExecTooLong);
    REQUIRE(out.report.detection_time.has_value());
    CHECK(out.report.detection_cause == SwitchCause::TimingViolation);
    REQUIRE(out.report.first_infected_start_arrival.has_value());
    REQUIRE(out.report.detection_latency.has_value());
    CHECK(out.report.detection_latency->ns == 5'700);
    CHECK_FALSE(out.report.plant_destroyed);
}

TEST_CASE("undertime trips ExecTooShort") {
    const RunOutput out = run(load("undertime.json"));
    CHECK(out.report.verdict == VerdictKind::ExecTooShort);
    CHECK(out.report.detection_cause == SwitchCause::TimingViolation);
    CHECK_FALSE(out.report.plant_destroyed);
}

TEST_CASE("period drift trips PeriodTooLong at the period window edge") {
    const Scenario s = load("period_drift.json");
    const RunOutput out = run(s);
    CHECK(out.report.verdict == VerdictKind::PeriodTooLong);
    CHECK(out.report.detection_cause == SwitchCause::TimingViolation);
    REQUIRE(out.report.trip_time.has_value());
    // The drifted start never arrives in time: the trip lands exactly at
    // anchor + MustWait_P + CanWait_P, one period after the last good start.
    const FsmConfig cfg = s.resolve_fsm();
    const std::int64_t anchor_to_trip = (cfg.must_wait_p + cfg.can_wait_p).ns;
    const std::int64_t offset =
        (out.report.trip_time->ns - anchor_to_trip) % s.control.period.ns;
    // Anchor is a StartControl arrival: release time plus channel delay.
    CHECK(offset >= s.channel.base_delay.ns);
    CHECK(offset <= (s.channel.base_delay + s.channel.jitter_bound).ns);
    CHECK_FALSE(out.report.plant_destroyed);
}

TEST_CASE("suppressed heartbeats trip IdleSilence") {
    const RunOutput out = run(load("idle_silence.json"));
    CHECK(out.report.verdict == VerdictKind::IdleSilence);
    CHECK(out.report.detection_cause == SwitchCause::TimingViolation);
    CHECK_FALSE(out.report.plant_destroyed);
}

TEST_CASE("destabilize under S3A: timing stays clean, envelope catches it") {
    const Scenario s = load("destabilize_s3a.json");
    const RunOutput out = run(s);
    CHECK(out.report.verdict == VerdictKind::Nominal);
    REQUIRE(out.report.detection_time.has_value());
    CHECK(out.report.detection_cause == SwitchCause::PhysicalEnvelope);
    CHECK_FALSE(out.report.plant_destroyed);
    REQUIRE(out.report.first_infected_release.has_value());
    const std::int64_t ticks =
        (out.report.detection_time->ns - out.report.first_infected_release->ns) /
        s.control.period.ns;
    CHECK(ticks >= 2);
    CHECK(ticks <= 10);
}

TEST_CASE("destabilize under vanilla Simplex is caught by the plant state") {
    const Scenario s = load("destabilize_vanilla.json");
    const RunOutput out = run(s);
    REQUIRE(out.report.detection_time.has_value());
    CHECK(out.report.detection_cause == SwitchCause::PhysicalEnvelope);
    CHECK_FALSE(out.report.plant_destroyed);
}

TEST_CASE("replay defeats the timing channel; the envelope still saves the plant") {
    const Scenario s = load("replay_destabilize.json");
    const RunOutput out = run(s);
    CHECK(out.report.verdict == VerdictKind::Nominal); // side channel fooled
    REQUIRE(out.report.detection_time.has_value());
    CHECK(out.report.detection_cause == SwitchCause::PhysicalEnvelope);
    CHECK_FALSE(out.report.plant_destroyed);
    // Injected traffic is visible in the log for forensics.
    CHECK(out.events.find("\"origin\":\"injected\"") != std::string::npos);
}

TEST_CASE("vanilla wiring changes only the verdict path, not the streams") {
    Scenario s3a = load("baseline_short.json");
    Scenario vanilla = s3a;
    vanilla.monitor = MonitorWiring::VanillaSimplex;
    const RunOutput a = run(s3a);
    const RunOutput b = run(vanilla);
    // No attack: identical message streams and traces either way.
    CHECK(a.trace == b.trace);
    CHECK(a.events == b.events);
}

TEST_CASE("operator reset restores complex mode; re-violation re-latches") {
    Scenario s = load("undertime.json");
    // The FSM stays tripped after the reset, so the decision module
    // re-switches immediately at the next tick with a fresh switch time.
    s.operator_reset_at = SimTime{} + milliseconds(700);
    const RunOutput out = run(s);
    REQUIRE(out.report.mode_switches.size() >= 3);
    CHECK(out.report.mode_switches[0].to == ControllerChoice::Safety);
    CHECK(out.report.mode_switches[1].to == ControllerChoice::Complex);
    CHECK(out.report.mode_switches[1].cause == SwitchCause::Operator);
    CHECK(out.report.mode_switches[2].to == ControllerChoice::Safety);
    CHECK(out.report.mode_switches[2].time > out.report.mode_switches[0].time);
}

TEST_CASE("every shipped attack scenario keeps the plant intact under S3A") {
    for (const char* name :
         {"overrun_detect.json", "undertime.json", "period_drift.json",
          "idle_silence.json", "destabilize_s3a.json",
          "replay_destabilize.json"}) {
        INFO("scenario: ", name);
        const RunOutput out = run(load(name));
        REQUIRE_FALSE(out.report.plant_destroyed);
        REQUIRE_FALSE(out.report.destroyed_time.has_value());
    }
}

TEST_CASE("envelope switches happen at the first unsafe tick") {
    const Scenario s = load("destabilize_s3a.json");
    const RunOutput out = run(s);
    REQUIRE(out.report.detection_time.has_value());
    REQUIRE(out.report.first_unsafe_time.has_value());
    CHECK(*out.report.detection_time == *out.report.first_unsafe_time);
}

TEST_CASE("a destroyed plant always has an unsafe-state time") {
    // Start with the pole far outside anything the safety controller can
    // recover: the episode must end in destruction.
    Scenario s = load("baseline_short.json");
    s.plant.initial_state = PlantState{0.0, 0.0, 1.2, 0.0};
    const RunOutput out = run(s);
    REQUIRE(out.report.plant_destroyed);
    REQUIRE(out.report.destroyed_time.has_value());
    REQUIRE(out.report.first_unsafe_time.has_value());
    CHECK(*out.report.first_unsafe_time <= *out.report.destroyed_time);
    CHECK(out.events.find("\"event\":\"destroyed\"") != std::string::npos);
}

TEST_CASE("ten thousand clean iterations produce zero violations") {
    const Scenario s = load("baseline_soundness.json");
    const RunOutput out = run(s);
    CHECK(out.report.iteration_count >= 10'000);
    CHECK(out.report.verdict == VerdictKind::Nominal);
    CHECK_FALSE(out.report.detection_time.has_value());
    CHECK(out.report.mode_switches.empty());
}

TEST_CASE("file outputs land in the requested directory") {
    const Scenario s = load("baseline_short.json");
    const auto dir = std::filesystem::temp_directory_path() / "s3sim_run_test";
    std::filesystem::remove_all(dir);
    const RunReport report = run_scenario(s, dir);
    CHECK(std::filesystem::exists(dir / "trace.csv"));
    CHECK(std::filesystem::exists(dir / "events.jsonl"));
    CHECK(std::filesystem::exists(dir / "report.json"));
    std::ifstream in(dir / "report.json");
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str().find("\"iteration_count\": 101") != std::string::npos);
    CHECK(report.iteration_count == 101);
    std::filesystem::remove_all(dir);
}
