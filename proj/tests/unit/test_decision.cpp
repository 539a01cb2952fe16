#include <doctest.h>

#include <stdexcept>

#include "s3sim/decision.hpp"

using namespace s3sim;

namespace {

const ActuationCmd kComplex{1.5};
const ActuationCmd kSafety{-0.5};

Verdict trip(VerdictKind kind, SimTime t) { return Verdict{kind, t}; }

} // namespace

TEST_CASE("nominal verdict inside the envelope passes the complex command") {
    const Decision d = decide(PlantState{}, SafetyEnvelope{}, Verdict{},
                              kComplex, kSafety, Mode{}, time_ns(100));
    CHECK(d.command.voltage_v == kComplex.voltage_v);
    CHECK(d.mode.value == ControllerChoice::Complex);
    CHECK(d.mode.cause == SwitchCause::None);
}

TEST_CASE("a timing violation switches to safety") {
    const Decision d =
        decide(PlantState{}, SafetyEnvelope{},
               trip(VerdictKind::ExecTooLong, time_ns(90)), kComplex, kSafety,
               Mode{}, time_ns(100));
    CHECK(d.command.voltage_v == kSafety.voltage_v);
    CHECK(d.mode.value == ControllerChoice::Safety);
    CHECK(d.mode.cause == SwitchCause::TimingViolation);
    CHECK(d.mode.switch_time == time_ns(100));
}

TEST_CASE("an unsafe state switches to safety even with a nominal verdict") {
    const SafetyEnvelope env;
    const PlantState outside{0, 0, env.max_abs_theta_rad + 0.01, 0};
    const Decision d = decide(outside, env, Verdict{}, kComplex, kSafety,
                              Mode{}, time_ns(200));
    CHECK(d.command.voltage_v == kSafety.voltage_v);
    CHECK(d.mode.cause == SwitchCause::PhysicalEnvelope);
}

TEST_CASE("safety mode latches and dominates") {
    const Mode latched{ControllerChoice::Safety, SwitchCause::TimingViolation,
                       time_ns(50)};
    const Decision d = decide(PlantState{}, SafetyEnvelope{}, Verdict{},
                              kComplex, kSafety, latched, time_ns(500));
    CHECK(d.command.voltage_v == kSafety.voltage_v);
    CHECK(d.mode.value == ControllerChoice::Safety);
    CHECK(d.mode.switch_time == time_ns(50)); // original switch preserved
}

TEST_CASE("operator reset returns to complex and clears the cause") {
    const Mode latched{ControllerChoice::Safety, SwitchCause::PhysicalEnvelope,
                       time_ns(50)};
    const Mode reset = operator_reset(latched, time_ns(900));
    CHECK(reset.value == ControllerChoice::Complex);
    CHECK(reset.cause == SwitchCause::None);
}

TEST_CASE("operator reset while in complex mode is a contract violation") {
    CHECK_THROWS_AS(operator_reset(Mode{}, time_ns(10)), std::logic_error);
}

TEST_CASE("re-violation after reset re-latches with a new switch time") {
    Mode mode{ControllerChoice::Safety, SwitchCause::TimingViolation, time_ns(50)};
    mode = operator_reset(mode, time_ns(100));
    const Decision d =
        decide(PlantState{}, SafetyEnvelope{},
               trip(VerdictKind::ExecTooLong, time_ns(150)), kComplex, kSafety,
               mode, time_ns(150));
    CHECK(d.mode.value == ControllerChoice::Safety);
    CHECK(d.mode.switch_time == time_ns(150));
}
