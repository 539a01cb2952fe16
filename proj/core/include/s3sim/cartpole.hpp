#pragma once

#include "s3sim/time.hpp"

namespace s3sim {

/// Cart-pole state. theta is the pole angle from the upright vertical in
/// radians, x the cart position in metres, positive to the right.
struct PlantState {
    double x{0.0};
    double x_dot{0.0};
    double theta{0.0};
    double theta_dot{0.0};

    bool finite() const;
};

/// Physical constants for a small linear cart-pole rig. The pole is a
/// uniform rod of length 2 * pole_half_length_m; the motor is modelled as a
/// pure force gain, with the back-EMF damping folded into cart_friction.
struct PlantParams {
    double cart_mass_kg{0.57};
    double pole_mass_kg{0.23};
    double pole_half_length_m{0.30};
    double gravity{9.81};
    double motor_gain_n_per_v{0.35};
    double cart_friction{0.5};  // N per m/s, viscous
    double pole_friction{0.0024}; // N*m per rad/s, viscous at the pivot
    double track_half_length_m{0.40};
    double voltage_limit_v{6.0};
};

struct ActuationCmd {
    double voltage_v{0.0};
};

/// Time derivative of the state at a given motor voltage (before any
/// clamping; callers clamp). Pure function.
PlantState derivatives(const PlantState& s, double voltage_v,
                       const PlantParams& p);

/// Advances the state by dt under a held (zero-order-hold) command using
/// classic RK4. Integration runs in fixed substeps plus one remainder step,
/// so the step pattern depends only on dt, never on history. The voltage is
/// clamped to +/- voltage_limit_v before integration.
PlantState step_dynamics(const PlantState& s, ActuationCmd cmd, Duration dt,
                         const PlantParams& p,
                         Duration substep = milliseconds(1));

/// Episode-terminal condition: the pole has fallen past +/- pi/2, the cart
/// has left the track, or the state is no longer finite.
bool plant_destroyed(const PlantState& s, const PlantParams& p);

/// Total mechanical energy (kinetic + potential, zero level at theta =
/// pi/2). Used by conservation checks; not part of the control path.
double total_energy(const PlantState& s, const PlantParams& p);

/// Box envelope around the operating point, strictly inside the destroyed
/// region. All bounds are closed: a state exactly on a bound is safe.
struct SafetyEnvelope {
    double max_abs_x_m{0.06};
    double max_abs_theta_rad{0.06};
    double max_abs_x_dot{0.15};
    double max_abs_theta_dot{0.35};
};

bool is_safe(const PlantState& s, const SafetyEnvelope& env);

/// Optional sensor quantization; a step of zero disables it for that axis.
/// Values round to the nearest step multiple, halves to the even multiple.
struct SensorQuantization {
    double position_step_m{0.0};
    double angle_step_rad{0.0};
};

struct SensorSample {
    double x_m{0.0};
    double theta_rad{0.0};
};

SensorSample read_sensors(const PlantState& s,
                          const SensorQuantization& q = {});

} // namespace s3sim
