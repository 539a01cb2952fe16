#include "s3sim/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace s3sim {

ControllerGains default_complex_gains() {
    return ControllerGains{9.4, 12.6, 81.0, 15.4};
}

ControllerGains default_safety_gains() {
    return ControllerGains{5.3, 19.7, 138.0, 32.4};
}

double state_feedback_voltage(const ControllerGains& gains,
                              const SensorSample& current,
                              const SensorSample& previous, Duration period) {
    if (period.ns <= 0) {
        throw std::logic_error("state_feedback_voltage: period must be positive");
    }
    const double dt = period.seconds();
    const double x_dot = (current.x_m - previous.x_m) / dt;
    const double theta_dot = (current.theta_rad - previous.theta_rad) / dt;
    return -(gains.k_x * current.x_m + gains.k_x_dot * x_dot +
             gains.k_theta * current.theta_rad +
             gains.k_theta_dot * theta_dot);
}

namespace {

ActuationCmd clamped(double voltage, double limit) {
    return ActuationCmd{std::clamp(voltage, -limit, limit)};
}

} // namespace

ActuationCmd complex_control(const SensorSample& current,
                             const SensorSample& previous, Duration period,
                             const ControllerGains& gains,
                             double voltage_limit_v) {
    return clamped(state_feedback_voltage(gains, current, previous, period),
                   voltage_limit_v);
}

ActuationCmd safety_control(const SensorSample& current,
                            const SensorSample& previous, Duration period,
                            const ControllerGains& gains,
                            double voltage_limit_v) {
    return clamped(state_feedback_voltage(gains, current, previous, period),
                   voltage_limit_v);
}

} // namespace s3sim
