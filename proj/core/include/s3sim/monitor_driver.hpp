#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "s3sim/monitor.hpp"

namespace s3sim {

/// Orders an arrival stream and the FSM's timer expiries into a single
/// deterministic sequence. Timing windows are closed at both ends, which
/// fixes the simultaneous-event semantics: at any instant, MustWait-phase
/// expiries (C1->C2, I1->I2) apply first, then message arrivals, then
/// trip-phase expiries. A message arriving exactly at a trip deadline is
/// therefore still in-window, while a silent violation trips at exactly
/// MustWait + CanWait after its anchor.
class MonitorDriver {
public:
    struct Transition {
        SimTime time{};
        Location from{Location::Init};
        Location to{Location::Init};
        std::string trigger; // "msg:start_control", "timer:clk_C", ...
        Verdict verdict{};   // standing verdict after the transition
    };
    using Sink = std::function<void(const Transition&)>;

    explicit MonitorDriver(FsmConfig cfg, Sink sink = {});

    /// Feeds one message arrival; applies every expiry due before it (and
    /// MustWait-phase expiries due exactly at it) first.
    Verdict on_arrival(SimTime t, MessageKind kind);

    /// Applies every expiry with deadline <= t, trips included. Used by the
    /// harness to advance the monitor through message silence.
    Verdict advance_through(SimTime t);

    /// Earliest armed deadline, if any; the harness schedules its next
    /// monitor check here.
    std::optional<SimTime> next_deadline() const;

    const MonitorState& state() const { return state_; }
    const FsmConfig& config() const { return cfg_; }
    bool tripped() const { return state_.location == Location::Tripped; }
    Verdict verdict() const { return state_.verdict; }

private:
    struct Pending {
        ClockId clock;
        SimTime due;
        bool is_trip; // CanWait/period phase: expiry trips the FSM
    };

    std::optional<Pending> earliest_pending() const;
    void apply_expiries(SimTime t, bool include_trips_at_t);
    void emit(SimTime t, Location from, const std::string& trigger);

    FsmConfig cfg_;
    MonitorState state_;
    Sink sink_;
};

} // namespace s3sim
