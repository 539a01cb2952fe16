#pragma once

#include "s3sim/cartpole.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

/// Full-state feedback gains in volts per unit state. The commanded voltage
/// is -(k_x*x + k_x_dot*x_dot + k_theta*theta + k_theta_dot*theta_dot),
/// with velocities estimated by backward difference of the sensor samples.
struct ControllerGains {
    double k_x{0.0};
    double k_x_dot{0.0};
    double k_theta{0.0};
    double k_theta_dot{0.0};
};

enum class ControllerRole { Complex, Safety };

struct ControlTaskConfig {
    Duration period{milliseconds(20)};
    ControllerGains gains;
    ControllerRole role{ControllerRole::Complex};
};

/// Aggressive gains for the performance controller. Stabilizing for the
/// default plant; verified by closed-loop simulation tests, not analysis.
ControllerGains default_complex_gains();

/// Conservative gains for the trusted fallback controller: lower bandwidth,
/// recovers from the whole safety envelope at the cost of settling time.
ControllerGains default_safety_gains();

/// Raw (unclamped) state-feedback voltage. Linear in the estimated state,
/// so scaling both samples scales the output. Pure function.
double state_feedback_voltage(const ControllerGains& gains,
                              const SensorSample& current,
                              const SensorSample& previous, Duration period);

ActuationCmd complex_control(const SensorSample& current,
                             const SensorSample& previous, Duration period,
                             const ControllerGains& gains,
                             double voltage_limit_v);

ActuationCmd safety_control(const SensorSample& current,
                            const SensorSample& previous, Duration period,
                            const ControllerGains& gains,
                            double voltage_limit_v);

} // namespace s3sim
