#include "s3sim/decision.hpp"

#include <stdexcept>

namespace s3sim {

Decision decide(const PlantState& plant, const SafetyEnvelope& env,
                const Verdict& verdict, ActuationCmd complex_cmd,
                ActuationCmd safety_cmd, Mode mode, SimTime now) {
    if (mode.value == ControllerChoice::Safety) {
        return Decision{safety_cmd, mode};
    }
    if (!verdict.nominal()) {
        return Decision{safety_cmd,
                        Mode{ControllerChoice::Safety,
                             SwitchCause::TimingViolation, now}};
    }
    if (!is_safe(plant, env)) {
        return Decision{safety_cmd,
                        Mode{ControllerChoice::Safety,
                             SwitchCause::PhysicalEnvelope, now}};
    }
    return Decision{complex_cmd, mode};
}

Mode operator_reset(Mode mode, SimTime now) {
    if (mode.value != ControllerChoice::Safety) {
        throw std::logic_error("operator_reset: not in safety mode");
    }
    (void)now;
    return Mode{ControllerChoice::Complex, SwitchCause::None, {}};
}

std::string to_string(ControllerChoice choice) {
    return choice == ControllerChoice::Complex ? "complex" : "safety";
}

std::string to_string(SwitchCause cause) {
    switch (cause) {
    case SwitchCause::None: return "none";
    case SwitchCause::PhysicalEnvelope: return "physical-envelope";
    case SwitchCause::TimingViolation: return "timing-violation";
    case SwitchCause::Operator: return "operator";
    }
    return "?";
}

} // namespace s3sim
