#include "s3sim/cartpole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace s3sim {

namespace {

// sin/cos evaluated through |theta| so that mirrored states produce
// bit-identical mirrored derivatives regardless of libm internals.
double sym_sin(double x) {
    return x < 0.0 ? -std::sin(-x) : std::sin(x);
}

double sym_cos(double x) {
    return std::cos(std::fabs(x));
}

PlantState rk4_step(const PlantState& s, double voltage, double dt,
                    const PlantParams& p) {
    auto plus = [](const PlantState& a, const PlantState& d, double h) {
        return PlantState{a.x + h * d.x, a.x_dot + h * d.x_dot,
                          a.theta + h * d.theta,
                          a.theta_dot + h * d.theta_dot};
    };
    const PlantState k1 = derivatives(s, voltage, p);
    const PlantState k2 = derivatives(plus(s, k1, dt / 2.0), voltage, p);
    const PlantState k3 = derivatives(plus(s, k2, dt / 2.0), voltage, p);
    const PlantState k4 = derivatives(plus(s, k3, dt), voltage, p);
    const double w = dt / 6.0;
    return PlantState{
        s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        s.x_dot + w * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot),
        s.theta + w * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
        s.theta_dot + w * (k1.theta_dot + 2.0 * k2.theta_dot +
                           2.0 * k3.theta_dot + k4.theta_dot)};
}

double quantize(double value, double step) {
    if (step <= 0.0) {
        return value;
    }
    return step * std::nearbyint(value / step);
}

} // namespace

bool PlantState::finite() const {
    return std::isfinite(x) && std::isfinite(x_dot) && std::isfinite(theta) &&
           std::isfinite(theta_dot);
}

PlantState derivatives(const PlantState& s, double voltage_v,
                       const PlantParams& p) {
    const double m = p.pole_mass_kg;
    const double total = p.cart_mass_kg + m;
    const double l = p.pole_half_length_m;
    const double sin_t = sym_sin(s.theta);
    const double cos_t = sym_cos(s.theta);

    // Motor polarity: positive voltage drives the cart toward -x, which
    // tips the pole toward +theta. Keeps voltage sign aligned with the
    // direction of pole fall.
    const double force = -p.motor_gain_n_per_v * voltage_v;
    // Cart-side force terms seen by the pole pivot.
    const double pivot =
        (-force - m * l * s.theta_dot * s.theta_dot * sin_t +
         p.cart_friction * s.x_dot) /
        total;
    const double theta_dd =
        (p.gravity * sin_t + cos_t * pivot -
         p.pole_friction * s.theta_dot / (m * l)) /
        (l * (4.0 / 3.0 - m * cos_t * cos_t / total));
    const double x_dd =
        (force +
         m * l * (s.theta_dot * s.theta_dot * sin_t - theta_dd * cos_t) -
         p.cart_friction * s.x_dot) /
        total;

    return PlantState{s.x_dot, x_dd, s.theta_dot, theta_dd};
}

PlantState step_dynamics(const PlantState& s, ActuationCmd cmd, Duration dt,
                         const PlantParams& p, Duration substep) {
    if (dt.ns <= 0) {
        throw std::logic_error("step_dynamics: dt must be positive");
    }
    if (substep.ns <= 0) {
        throw std::logic_error("step_dynamics: substep must be positive");
    }
    const double voltage = std::clamp(cmd.voltage_v, -p.voltage_limit_v,
                                      p.voltage_limit_v);
    PlantState state = s;
    std::int64_t remaining = dt.ns;
    while (remaining > 0) {
        const std::int64_t slice = std::min(remaining, substep.ns);
        state = rk4_step(state, voltage, static_cast<double>(slice) * 1e-9, p);
        remaining -= slice;
    }
    return state;
}

bool plant_destroyed(const PlantState& s, const PlantParams& p) {
    if (!s.finite()) {
        return true;
    }
    return std::fabs(s.theta) >= std::numbers::pi / 2.0 ||
           std::fabs(s.x) >= p.track_half_length_m;
}

double total_energy(const PlantState& s, const PlantParams& p) {
    const double m = p.pole_mass_kg;
    const double l = p.pole_half_length_m;
    const double cos_t = sym_cos(s.theta);
    const double translational =
        0.5 * (p.cart_mass_kg + m) * s.x_dot * s.x_dot;
    const double coupling = m * l * s.x_dot * s.theta_dot * cos_t;
    // Uniform rod about its centre: I = (1/3) m l^2, hence the 2/3 factor
    // on the rotational term once the centre-of-mass motion is included.
    const double rotational = (2.0 / 3.0) * m * l * l * s.theta_dot * s.theta_dot;
    const double potential = m * p.gravity * l * cos_t;
    return translational + coupling + rotational + potential;
}

bool is_safe(const PlantState& s, const SafetyEnvelope& env) {
    return std::fabs(s.x) <= env.max_abs_x_m &&
           std::fabs(s.theta) <= env.max_abs_theta_rad &&
           std::fabs(s.x_dot) <= env.max_abs_x_dot &&
           std::fabs(s.theta_dot) <= env.max_abs_theta_dot;
}

SensorSample read_sensors(const PlantState& s, const SensorQuantization& q) {
    return SensorSample{quantize(s.x, q.position_step_m),
                        quantize(s.theta, q.angle_step_rad)};
}

} // namespace s3sim
