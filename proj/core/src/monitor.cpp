#include "s3sim/monitor.hpp"

#include <algorithm>
#include <stdexcept>

namespace s3sim {

void FsmConfig::validate() const {
    if (control_legs.empty()) {
        throw std::invalid_argument("FsmConfig: need at least one control leg");
    }
    Duration exec_total{0};
    for (const ExecWindow& leg : control_legs) {
        if (leg.must_wait.ns < 0 || leg.can_wait.ns < 0) {
            throw std::invalid_argument("FsmConfig: negative control window");
        }
        exec_total += leg.must_wait + leg.can_wait;
    }
    if (must_wait_i.ns < 0 || can_wait_i.ns < 0 || must_wait_p.ns < 0 ||
        can_wait_p.ns < 0) {
        throw std::invalid_argument("FsmConfig: negative window value");
    }
    if (must_wait_p + can_wait_p < exec_total) {
        throw std::invalid_argument(
            "FsmConfig: period window cannot contain one control job");
    }
}

FsmConfig single_leg_config(Duration must_wait_c, Duration can_wait_c,
                            Duration must_wait_i, Duration can_wait_i,
                            Duration must_wait_p, Duration can_wait_p) {
    FsmConfig cfg;
    cfg.control_legs = {ExecWindow{must_wait_c, can_wait_c}};
    cfg.must_wait_i = must_wait_i;
    cfg.can_wait_i = can_wait_i;
    cfg.must_wait_p = must_wait_p;
    cfg.can_wait_p = can_wait_p;
    cfg.validate();
    return cfg;
}

namespace {

// The message that legally terminates the given control leg.
MessageKind leg_terminator(const FsmConfig& cfg, std::size_t leg) {
    return leg + 1 < cfg.control_legs.size() ? MessageKind::Checkpoint
                                             : MessageKind::EndControl;
}

MonitorState tripped(MonitorState s, VerdictKind kind, SimTime at) {
    s.location = Location::Tripped;
    s.clk_c.reset();
    s.clk_i.reset();
    s.clk_p.reset();
    s.period_min.reset();
    s.verdict = Verdict{kind, at};
    return s;
}

// Entry into C1 for leg 0 on a StartControl arrival: arms the control and
// period clocks relative to the arrival.
MonitorState enter_job(MonitorState s, SimTime arrival, const FsmConfig& cfg) {
    s.location = Location::C1;
    s.leg = 0;
    s.clk_c = arrival + cfg.control_legs[0].must_wait;
    s.clk_i.reset();
    s.period_min = arrival + cfg.must_wait_p;
    s.clk_p = arrival + cfg.must_wait_p + cfg.can_wait_p;
    return s;
}

} // namespace

std::pair<MonitorState, Verdict> on_message(MonitorState state,
                                            MessageKind kind, SimTime arrival,
                                            const FsmConfig& cfg) {
    if (arrival < state.last_event) {
        throw std::logic_error("monitor: message arrivals out of order");
    }
    state.last_event = arrival;

    if (state.location == Location::Tripped) {
        return {state, state.verdict}; // absorbing
    }

    switch (state.location) {
    case Location::Init:
        if (kind == MessageKind::StartControl) {
            state = enter_job(state, arrival, cfg);
            return {state, state.verdict};
        }
        state = tripped(state, VerdictKind::UnexpectedMessage, arrival);
        return {state, state.verdict};

    case Location::C1:
        // Any message in C1 arrives before the leg's minimum has elapsed.
        state = tripped(state,
                        kind == leg_terminator(cfg, state.leg)
                            ? VerdictKind::ExecTooShort
                            : VerdictKind::UnexpectedMessage,
                        arrival);
        return {state, state.verdict};

    case Location::C2:
        if (kind == leg_terminator(cfg, state.leg)) {
            if (kind == MessageKind::Checkpoint) {
                state.leg += 1;
                state.location = Location::C1;
                state.clk_c = arrival + cfg.control_legs[state.leg].must_wait;
            } else {
                state.location = Location::I1;
                state.leg = 0;
                state.clk_c.reset();
                state.clk_i = arrival + cfg.must_wait_i;
                state.idle_preempted = false;
            }
            return {state, state.verdict};
        }
        state = tripped(state, VerdictKind::UnexpectedMessage, arrival);
        return {state, state.verdict};

    case Location::I1:
        if (kind == MessageKind::IdleHeartbeat) {
            state = tripped(state, VerdictKind::IdleTooEarly, arrival);
        } else if (kind == MessageKind::StartControl &&
                   state.period_min && arrival < *state.period_min) {
            state = tripped(state, VerdictKind::PeriodTooShort, arrival);
        } else {
            state = tripped(state, VerdictKind::UnexpectedMessage, arrival);
        }
        return {state, state.verdict};

    case Location::I2:
        if (kind == MessageKind::IdleHeartbeat) {
            state.location = Location::I1;
            state.clk_i = arrival + cfg.must_wait_i;
            return {state, state.verdict};
        }
        if (kind == MessageKind::StartControl) {
            if (state.period_min && arrival < *state.period_min) {
                state = tripped(state, VerdictKind::PeriodTooShort, arrival);
                return {state, state.verdict};
            }
            state = enter_job(state, arrival, cfg);
            state.idle_preempted = true;
            return {state, state.verdict};
        }
        state = tripped(state, VerdictKind::UnexpectedMessage, arrival);
        return {state, state.verdict};

    case Location::Tripped:
        break;
    }
    return {state, state.verdict};
}

std::pair<MonitorState, Verdict> on_timer(MonitorState state, ClockId which,
                                          SimTime now, const FsmConfig& cfg) {
    if (now < state.last_event) {
        throw std::logic_error("monitor: timer expiries out of order");
    }

    auto armed_at = [&](const std::optional<SimTime>& deadline) {
        return deadline && *deadline == now;
    };

    switch (which) {
    case ClockId::ClkC:
        if (!armed_at(state.clk_c) ||
            (state.location != Location::C1 && state.location != Location::C2)) {
            throw std::logic_error("monitor: clk_C expiry while not armed");
        }
        state.last_event = now;
        if (state.location == Location::C1) {
            // Minimum elapsed; the leg's terminator is now legal.
            state.location = Location::C2;
            state.clk_c = now + cfg.control_legs[state.leg].can_wait;
        } else {
            state = tripped(state, VerdictKind::ExecTooLong, now);
        }
        return {state, state.verdict};

    case ClockId::ClkI:
        if (!armed_at(state.clk_i) ||
            (state.location != Location::I1 && state.location != Location::I2)) {
            throw std::logic_error("monitor: clk_I expiry while not armed");
        }
        state.last_event = now;
        if (state.location == Location::I1) {
            state.location = Location::I2;
            state.clk_i = now + cfg.can_wait_i;
        } else {
            state = tripped(state, VerdictKind::IdleSilence, now);
        }
        return {state, state.verdict};

    case ClockId::ClkP:
        if (!armed_at(state.clk_p) || state.location == Location::Tripped ||
            state.location == Location::Init) {
            throw std::logic_error("monitor: clk_P expiry while not armed");
        }
        state.last_event = now;
        state = tripped(state, VerdictKind::PeriodTooLong, now);
        return {state, state.verdict};
    }
    throw std::logic_error("monitor: unknown clock");
}

Duration worst_case_detection_latency(const FsmConfig& cfg) {
    Duration worst{0};
    for (const ExecWindow& leg : cfg.control_legs) {
        worst = std::max(worst, leg.must_wait + leg.can_wait);
    }
    return worst;
}

std::string to_string(Location loc) {
    switch (loc) {
    case Location::Init: return "init";
    case Location::C1: return "C1";
    case Location::C2: return "C2";
    case Location::I1: return "I1";
    case Location::I2: return "I2";
    case Location::Tripped: return "tripped";
    }
    return "?";
}

std::string to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::Nominal: return "nominal";
    case VerdictKind::ExecTooLong: return "exec_too_long";
    case VerdictKind::ExecTooShort: return "exec_too_short";
    case VerdictKind::PeriodTooLong: return "period_too_long";
    case VerdictKind::PeriodTooShort: return "period_too_short";
    case VerdictKind::IdleSilence: return "idle_silence";
    case VerdictKind::IdleTooEarly: return "idle_too_early";
    case VerdictKind::UnexpectedMessage: return "unexpected_message";
    }
    return "?";
}

std::string to_string(ClockId id) {
    switch (id) {
    case ClockId::ClkC: return "clk_C";
    case ClockId::ClkI: return "clk_I";
    case ClockId::ClkP: return "clk_P";
    }
    return "?";
}

} // namespace s3sim
