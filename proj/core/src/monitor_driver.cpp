#include "s3sim/monitor_driver.hpp"

#include <utility>

namespace s3sim {

MonitorDriver::MonitorDriver(FsmConfig cfg, Sink sink)
    : cfg_(std::move(cfg)), sink_(std::move(sink)) {
    cfg_.validate();
}

std::optional<MonitorDriver::Pending> MonitorDriver::earliest_pending() const {
    std::optional<Pending> best;
    auto consider = [&](ClockId clock, const std::optional<SimTime>& due,
                        bool is_trip) {
        if (!due) {
            return;
        }
        // Earlier deadlines first; at the same instant, phase transitions
        // ahead of trips, then by fixed clock order.
        if (!best || due->ns < best->due.ns ||
            (due->ns == best->due.ns && !is_trip && best->is_trip)) {
            best = Pending{clock, *due, is_trip};
        }
    };
    consider(ClockId::ClkC, state_.clk_c, state_.location == Location::C2);
    consider(ClockId::ClkI, state_.clk_i, state_.location == Location::I2);
    consider(ClockId::ClkP, state_.clk_p, true);
    return best;
}

void MonitorDriver::apply_expiries(SimTime t, bool include_trips_at_t) {
    while (auto pending = earliest_pending()) {
        if (pending->due > t) {
            break;
        }
        if (pending->due == t && pending->is_trip && !include_trips_at_t) {
            break;
        }
        const Location from = state_.location;
        auto [next, verdict] = on_timer(state_, pending->clock, pending->due, cfg_);
        state_ = next;
        emit(pending->due, from, "timer:" + to_string(pending->clock));
        if (tripped()) {
            break;
        }
    }
}

Verdict MonitorDriver::on_arrival(SimTime t, MessageKind kind) {
    apply_expiries(t, false);
    if (!tripped()) {
        const Location from = state_.location;
        auto [next, verdict] = on_message(state_, kind, t, cfg_);
        state_ = next;
        emit(t, from, "msg:" + to_string(kind));
    }
    return state_.verdict;
}

Verdict MonitorDriver::advance_through(SimTime t) {
    apply_expiries(t, true);
    return state_.verdict;
}

std::optional<SimTime> MonitorDriver::next_deadline() const {
    auto pending = earliest_pending();
    if (!pending) {
        return std::nullopt;
    }
    return pending->due;
}

void MonitorDriver::emit(SimTime t, Location from, const std::string& trigger) {
    if (sink_) {
        sink_(Transition{t, from, state_.location, trigger, state_.verdict});
    }
}

} // namespace s3sim
