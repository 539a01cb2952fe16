#include "s3sim/attack.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace s3sim {

Cycles apply_overrun(Cycles base, std::int64_t bound,
                     Cycles per_iteration_cost) {
    if (bound < 0 || per_iteration_cost < 0) {
        throw std::invalid_argument("apply_overrun: negative parameter");
    }
    return base + bound * per_iteration_cost;
}

Cycles apply_undertime(Cycles base, double shrink_factor) {
    if (shrink_factor <= 0.0 || shrink_factor >= 1.0) {
        throw std::invalid_argument("apply_undertime: factor must be in (0,1)");
    }
    const auto scaled =
        static_cast<Cycles>(std::llround(static_cast<double>(base) * shrink_factor));
    return std::max<Cycles>(scaled, 1);
}

ActuationCmd destabilize_command(double theta_rad, double voltage_limit_v) {
    return ActuationCmd{theta_rad >= 0.0 ? voltage_limit_v : -voltage_limit_v};
}

std::string to_string(AttackKind kind) {
    switch (kind) {
    case AttackKind::None: return "none";
    case AttackKind::Overrun: return "overrun";
    case AttackKind::Undertime: return "undertime";
    case AttackKind::PeriodDrift: return "period_drift";
    case AttackKind::IdleSilence: return "idle_silence";
    case AttackKind::Destabilize: return "destabilize";
    case AttackKind::Replay: return "replay";
    }
    return "?";
}

} // namespace s3sim
