#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>

#include "s3sim/cartpole.hpp"
#include "s3sim/controller.hpp"

using namespace s3sim;

namespace {

struct LoopResult {
    double settle_s{-1.0};
    bool destroyed{false};
    PlantState final_state{};
};

// Closed-loop oracle with the exact runtime cadence: 20 ms zero-order hold,
// velocities estimated by backward difference of the sensed samples.
LoopResult closed_loop(const ControllerGains& gains, PlantState s,
                       double horizon_s, const PlantParams& p) {
    LoopResult r;
    SensorSample prev = read_sensors(s);
    const int ticks = static_cast<int>(horizon_s / 0.02);
    for (int k = 0; k < ticks; ++k) {
        const SensorSample cur = read_sensors(s);
        const ActuationCmd u =
            complex_control(cur, prev, milliseconds(20), gains, p.voltage_limit_v);
        prev = cur;
        s = step_dynamics(s, u, milliseconds(20), p);
        if (plant_destroyed(s, p)) {
            r.destroyed = true;
            return r;
        }
        if (r.settle_s < 0 && std::fabs(s.theta) < 0.01 && std::fabs(s.x) < 0.01 &&
            std::fabs(s.x_dot) < 0.05 && std::fabs(s.theta_dot) < 0.05) {
            r.settle_s = (k + 1) * 0.02;
        }
    }
    r.final_state = s;
    return r;
}

} // namespace

TEST_CASE("zero state commands zero volts") {
    const SensorSample zero{};
    CHECK(state_feedback_voltage(default_complex_gains(), zero, zero,
                                 milliseconds(20)) == 0.0);
    CHECK(complex_control(zero, zero, milliseconds(20), default_complex_gains(), 6.0)
              .voltage_v == 0.0);
    CHECK(safety_control(zero, zero, milliseconds(20), default_safety_gains(), 6.0)
              .voltage_v == 0.0);
}

TEST_CASE("the law is linear before clamping") {
    const ControllerGains g = default_complex_gains();
    const SensorSample cur{0.01, 0.004};
    const SensorSample prev{0.008, 0.005};
    const double base = state_feedback_voltage(g, cur, prev, milliseconds(20));
    for (double alpha : {-2.0, 0.5, 3.0}) {
        const SensorSample cur_a{alpha * cur.x_m, alpha * cur.theta_rad};
        const SensorSample prev_a{alpha * prev.x_m, alpha * prev.theta_rad};
        CHECK(state_feedback_voltage(g, cur_a, prev_a, milliseconds(20)) ==
              doctest::Approx(alpha * base).epsilon(1e-12));
    }
}

TEST_CASE("period must be positive") {
    CHECK_THROWS_AS(state_feedback_voltage(default_complex_gains(), {}, {},
                                           Duration{0}),
                    std::logic_error);
}

TEST_CASE("complex controller settles the offset start within 10 s") {
    const PlantParams p;
    const auto r = closed_loop(default_complex_gains(),
                               PlantState{0.05, 0, 0, 0}, 10.0, p);
    CHECK_FALSE(r.destroyed);
    CHECK(r.settle_s > 0.0);
    CHECK(r.settle_s <= 10.0);
}

TEST_CASE("safety controller recovers from every envelope vertex") {
    const PlantParams p;
    const SafetyEnvelope env;
    for (int mask = 0; mask < 16; ++mask) {
        const PlantState vertex{(mask & 1 ? 1.0 : -1.0) * env.max_abs_x_m,
                                (mask & 2 ? 1.0 : -1.0) * env.max_abs_x_dot,
                                (mask & 4 ? 1.0 : -1.0) * env.max_abs_theta_rad,
                                (mask & 8 ? 1.0 : -1.0) * env.max_abs_theta_dot};
        const auto r = closed_loop(default_safety_gains(), vertex, 15.0, p);
        REQUIRE_FALSE(r.destroyed);
        CHECK(std::fabs(r.final_state.x) <= 0.8 * env.max_abs_x_m);
        CHECK(std::fabs(r.final_state.theta) <= 0.8 * env.max_abs_theta_rad);
    }
}

TEST_CASE("safety controller keeps the whole 5^4 envelope grid safe") {
    const PlantParams p;
    const SafetyEnvelope env;
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            for (int c = 0; c < 5; ++c) {
                for (int d = 0; d < 5; ++d) {
                    const PlantState s0{(-1 + 0.5 * a) * env.max_abs_x_m,
                                        (-1 + 0.5 * b) * env.max_abs_x_dot,
                                        (-1 + 0.5 * c) * env.max_abs_theta_rad,
                                        (-1 + 0.5 * d) * env.max_abs_theta_dot};
                    const auto r = closed_loop(default_safety_gains(), s0, 15.0, p);
                    REQUIRE_FALSE(r.destroyed);
                }
            }
        }
    }
}

TEST_CASE("safety trades settling time for envelope size") {
    const PlantParams p;
    const PlantState start{0.05, 0, 0, 0};
    const auto fast = closed_loop(default_complex_gains(), start, 20.0, p);
    const auto slow = closed_loop(default_safety_gains(), start, 20.0, p);
    REQUIRE(fast.settle_s > 0.0);
    REQUIRE(slow.settle_s > 0.0);
    CHECK(slow.settle_s >= fast.settle_s);
}
