#pragma once

#include <string>

#include "s3sim/cartpole.hpp"
#include "s3sim/monitor.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

enum class ControllerChoice { Complex, Safety };

enum class SwitchCause { None, PhysicalEnvelope, TimingViolation, Operator };

/// Controller-selection register. Safety mode latches: once entered it
/// holds, with the first cause and switch time recorded, until an explicit
/// operator reset.
struct Mode {
    ControllerChoice value{ControllerChoice::Complex};
    SwitchCause cause{SwitchCause::None};
    SimTime switch_time{};
};

struct Decision {
    ActuationCmd command;
    Mode mode;
};

/// One arbitration step: fuses the physical-envelope check and the timing
/// verdict. Already-latched Safety mode always wins; otherwise a non-nominal
/// verdict switches (timing-violation), then an unsafe plant state
/// (physical-envelope); else the complex command passes through.
Decision decide(const PlantState& plant, const SafetyEnvelope& env,
                const Verdict& verdict, ActuationCmd complex_cmd,
                ActuationCmd safety_cmd, Mode mode, SimTime now);

/// Returns to Complex mode. Requires Safety mode (throws std::logic_error
/// otherwise); scenario scripting, not an FSM transition.
Mode operator_reset(Mode mode, SimTime now);

std::string to_string(ControllerChoice choice);
std::string to_string(SwitchCause cause);

} // namespace s3sim
