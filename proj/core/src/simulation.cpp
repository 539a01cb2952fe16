#include "s3sim/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "s3sim/attack.hpp"
#include "s3sim/channel.hpp"
#include "s3sim/controller.hpp"
#include "s3sim/decision.hpp"
#include "s3sim/event_queue.hpp"
#include "s3sim/exec_model.hpp"
#include "s3sim/monitor_driver.hpp"

namespace s3sim {

using nlohmann::json;

namespace {

// One simulation run. Owns the event queue and every component; suppresses
// nothing on the trusted side: the monitor always runs, the wiring flag only
// decides whether its verdicts reach the decision module.
class SimulationEngine {
public:
    SimulationEngine(const Scenario& s, std::ostream& events, std::ostream& trace)
        : scenario_(s),
          fsm_(s.resolve_fsm()),
          events_(events),
          trace_(trace),
          exec_rng_(s.seed, "exec"),
          channel_(s.channel, RngStream(s.seed, "channel")),
          driver_(fsm_, [this](const MonitorDriver::Transition& t) {
              on_fsm_transition(t);
          }),
          plant_state_(s.plant.initial_state) {
        prev_sensors_ = read_sensors(plant_state_, s.plant.quantization);
        last_safety_cmd_ = safety_control(prev_sensors_, prev_sensors_,
                                          s.control.period,
                                          s.control.safety_gains,
                                          s.plant.params.voltage_limit_v);
    }

    RunReport run() {
        trace_ << "t_ns,x,x_dot,theta,theta_dot,voltage,mode\n";
        queue_.schedule(SimTime{0}, [this] { on_release(0, SimTime{0}); });
        if (scenario_.operator_reset_at) {
            queue_.schedule(*scenario_.operator_reset_at,
                            [this] { on_operator_reset(); });
        }
        queue_.run_until(SimTime{} + scenario_.horizon);
        if (!destroyed_) {
            advance_plant_to(SimTime{} + scenario_.horizon);
        }
        return finish_report();
    }

private:
    // ---- event log ------------------------------------------------------

    void log(json record) { events_ << record.dump() << '\n'; }

    void log_message(const TimingMessage& m) {
        log(json{{"type", "message"},
                 {"t_ns", m.send_time.ns},
                 {"kind", to_string(m.kind)},
                 {"send_ns", m.send_time.ns},
                 {"arrival_ns", m.arrival_time.ns},
                 {"origin", to_string(m.origin)}});
    }

    void log_attack(SimTime t, const std::string& action) {
        log(json{{"type", "attack"},
                 {"t_ns", t.ns},
                 {"kind", to_string(scenario_.attack.kind)},
                 {"action", action}});
    }

    void trace_row(SimTime t) {
        char line[192];
        std::snprintf(line, sizeof(line), "%lld,%.9g,%.9g,%.9g,%.9g,%.9g,%s\n",
                      static_cast<long long>(t.ns), plant_state_.x,
                      plant_state_.x_dot, plant_state_.theta,
                      plant_state_.theta_dot, held_voltage_,
                      to_string(mode_.value).c_str());
        trace_ << line;
    }

    // ---- plant ----------------------------------------------------------

    void advance_plant_to(SimTime t) {
        while (!destroyed_ && plant_time_ < t) {
            const Duration dt{std::min<std::int64_t>(1'000'000,
                                                     (t - plant_time_).ns)};
            plant_state_ = step_dynamics(plant_state_,
                                         ActuationCmd{held_voltage_}, dt,
                                         scenario_.plant.params, dt);
            plant_time_ += dt;
            if (plant_destroyed(plant_state_, scenario_.plant.params)) {
                destroyed_ = true;
                destroyed_time_ = plant_time_;
                if (!first_unsafe_time_) {
                    first_unsafe_time_ = plant_time_;
                }
                log(json{{"type", "plant"},
                         {"t_ns", plant_time_.ns},
                         {"event", "destroyed"}});
                queue_.stop();
            }
        }
    }

    // ---- attack helpers -------------------------------------------------

    bool attack_active(AttackKind kind, SimTime now) const {
        return scenario_.attack.kind == kind && now >= scenario_.attack.start_time;
    }

    bool sends_suppressed(SimTime now) const {
        return replay_active_ && now >= replay_anchor_;
    }

    bool heartbeats_suppressed(SimTime now) const {
        return sends_suppressed(now) || attack_active(AttackKind::IdleSilence, now);
    }

    // ---- message path ---------------------------------------------------

    void emit_message(MessageKind kind, SimTime now, MessageOrigin origin) {
        auto [cpu_resume, message] = channel_.send(kind, now, origin);
        (void)cpu_resume;
        log_message(message);
        last_logged_arrival_ = message.arrival_time;
        ++messages_sent_;
        if (origin == MessageOrigin::Legitimate &&
            scenario_.attack.kind == AttackKind::Replay) {
            recorded_sends_.emplace_back(kind, now);
            const Duration window = scenario_.attack.replay_window;
            while (!recorded_sends_.empty() &&
                   recorded_sends_.front().second + window <= now) {
                recorded_sends_.pop_front();
            }
        }
        queue_.schedule(message.arrival_time, [this, message] {
            driver_.on_arrival(message.arrival_time, message.kind);
            ensure_monitor_check();
        });
    }

    // ---- monitor scheduling ----------------------------------------------

    void ensure_monitor_check() {
        const auto deadline = driver_.next_deadline();
        if (deadline == check_deadline_) {
            return;
        }
        if (check_handle_) {
            queue_.cancel(check_handle_);
            check_handle_ = {};
        }
        check_deadline_ = deadline;
        if (deadline) {
            const SimTime due = *deadline;
            check_handle_ = queue_.schedule(due, [this, due] {
                check_handle_ = {};
                check_deadline_.reset();
                // Re-enqueued at the same instant: any message arrival due
                // now is already queued ahead, so closed-window boundaries
                // resolve message-first.
                queue_.schedule(due, [this, due] {
                    if (driver_.next_deadline() == std::optional<SimTime>{due}) {
                        driver_.advance_through(due);
                    }
                    ensure_monitor_check();
                });
            });
        }
    }

    void on_fsm_transition(const MonitorDriver::Transition& t) {
        log(json{{"type", "fsm"},
                 {"t_ns", t.time.ns},
                 {"from", to_string(t.from)},
                 {"to", to_string(t.to)},
                 {"trigger", t.trigger}});
        if (t.to == Location::Tripped && !trip_time_) {
            trip_time_ = t.verdict.detect_time;
            log(json{{"type", "verdict"},
                     {"t_ns", t.verdict.detect_time.ns},
                     {"location", to_string(t.from)},
                     {"kind", to_string(t.verdict.kind)}});
            if (scenario_.monitor == MonitorWiring::S3a) {
                switch_to_safety_now(t.verdict.detect_time);
            }
        }
    }

    // Asynchronous switch at trip time: not quantized to the actuation tick.
    void switch_to_safety_now(SimTime t) {
        if (mode_.value == ControllerChoice::Safety || destroyed_) {
            return;
        }
        advance_plant_to(t);
        if (destroyed_) {
            return;
        }
        Decision d = decide(plant_state_, scenario_.plant.envelope,
                            driver_.verdict(), ActuationCmd{held_voltage_},
                            last_safety_cmd_, mode_, t);
        apply_mode(d, t);
    }

    void apply_mode(const Decision& d, SimTime t) {
        const bool switched = d.mode.value != mode_.value;
        mode_ = d.mode;
        held_voltage_ = d.command.voltage_v;
        if (switched) {
            mode_switches_.push_back(ModeSwitch{t, d.mode.value, d.mode.cause});
            log(json{{"type", "mode"},
                     {"t_ns", t.ns},
                     {"to", to_string(d.mode.value)},
                     {"cause", to_string(d.mode.cause)}});
            trace_row(t);
        }
    }

    // ---- control task ----------------------------------------------------

    void on_release(std::int64_t iteration, SimTime release) {
        advance_plant_to(release);
        if (destroyed_) {
            return;
        }
        ++iteration_count_;

        maybe_start_replay(release);

        // Execution cost for this job, with any active perturbation.
        Cycles cycles = draw_exec_time(iteration, scenario_.exec, exec_rng_);
        bool infected = false;
        if (attack_active(AttackKind::Overrun, release)) {
            cycles = apply_overrun(cycles, scenario_.attack.loop_bound,
                                   scenario_.attack.per_iteration_cost);
            infected = true;
        } else if (attack_active(AttackKind::Undertime, release)) {
            cycles = apply_undertime(cycles, scenario_.attack.shrink_factor);
            infected = true;
        } else if (replay_active_) {
            cycles = apply_overrun(cycles, scenario_.attack.replay_loop_bound,
                                   scenario_.attack.per_iteration_cost);
            infected = true;
        }

        // Sense, control, arbitrate, actuate. Actuation applies at the
        // release instant; the execution time matters to the side channel.
        const SensorSample sensors =
            read_sensors(plant_state_, scenario_.plant.quantization);
        ActuationCmd complex_cmd = complex_control(
            sensors, prev_sensors_, scenario_.control.period,
            scenario_.control.complex_gains, scenario_.plant.params.voltage_limit_v);
        if (attack_active(AttackKind::Destabilize, release) ||
            (replay_active_ && scenario_.attack.replay_destabilize)) {
            complex_cmd = destabilize_command(sensors.theta_rad,
                                              scenario_.plant.params.voltage_limit_v);
            infected = true;
        }
        const ActuationCmd safety_cmd = safety_control(
            sensors, prev_sensors_, scenario_.control.period,
            scenario_.control.safety_gains, scenario_.plant.params.voltage_limit_v);
        prev_sensors_ = sensors;
        last_safety_cmd_ = safety_cmd;

        if (infected) {
            infected_exec_sum_ += static_cast<double>(cycles);
            ++infected_exec_count_;
            if (!first_infected_release_) {
                first_infected_release_ = release;
                log_attack(release, "first_infected_iteration");
            }
        }

        if (!is_safe(plant_state_, scenario_.plant.envelope) && !first_unsafe_time_) {
            first_unsafe_time_ = release;
        }

        const Verdict verdict = scenario_.monitor == MonitorWiring::S3a
                                    ? driver_.verdict()
                                    : Verdict{};
        Decision d = decide(plant_state_, scenario_.plant.envelope, verdict,
                            complex_cmd, safety_cmd, mode_, release);
        apply_mode(d, release);
        trace_row(release);

        schedule_job_messages(release, cycles, infected);
        schedule_heartbeats(release);

        // Next release, with any period drift after the attack start.
        Duration period = scenario_.control.period;
        if (attack_active(AttackKind::PeriodDrift, release + period)) {
            period += scenario_.attack.drift_per_period;
        }
        const SimTime next = release + period;
        if (next <= SimTime{} + scenario_.horizon && next > release) {
            queue_.schedule(next, [this, iteration, next] {
                on_release(iteration + 1, next);
            });
        }
        ensure_monitor_check();
    }

    void schedule_job_messages(SimTime release, Cycles cycles, bool infected) {
        if (sends_suppressed(release)) {
            return;
        }
        const auto legs = static_cast<std::int64_t>(scenario_.checkpoints) + 1;
        const Duration overhead = scenario_.channel.sender_overhead;

        emit_message(MessageKind::StartControl, release, MessageOrigin::Legitimate);
        if (infected && !first_infected_start_arrival_) {
            // The arrival of this job's StartControl anchors the
            // detection-latency measurement.
            first_infected_start_arrival_ = last_arrival_of_last_emit();
        }

        SimTime boundary = release + overhead;
        Cycles remaining = cycles;
        for (std::int64_t leg = 0; leg < legs; ++leg) {
            const Cycles slice = leg + 1 < legs ? cycles / legs
                                                : remaining;
            remaining -= cycles / legs;
            boundary += cycles_to_time(slice, scenario_.cpu);
            const MessageKind kind = leg + 1 < legs ? MessageKind::Checkpoint
                                                    : MessageKind::EndControl;
            queue_.schedule(boundary, [this, kind, boundary] {
                if (!sends_suppressed(boundary)) {
                    emit_message(kind, boundary, MessageOrigin::Legitimate);
                    ensure_monitor_check();
                }
            });
            boundary += overhead;
        }
    }

    SimTime last_arrival_of_last_emit() const { return last_logged_arrival_; }

    void schedule_heartbeats(SimTime release) {
        const Duration h = scenario_.idle.heartbeat_interval;
        const std::int64_t count = scenario_.control.period.ns / h.ns;
        for (std::int64_t j = 1; j < count; ++j) {
            const SimTime at = release + h * j;
            queue_.schedule(at, [this, at] {
                if (!heartbeats_suppressed(at)) {
                    emit_message(MessageKind::IdleHeartbeat, at,
                                 MessageOrigin::Legitimate);
                    ensure_monitor_check();
                } else if (!silence_logged_) {
                    silence_logged_ = true;
                    log_attack(at, "heartbeats_suppressed");
                }
            });
        }
    }

    // ---- replay ----------------------------------------------------------

    void maybe_start_replay(SimTime release) {
        if (scenario_.attack.kind != AttackKind::Replay || replay_active_ ||
            release < scenario_.attack.start_time) {
            return;
        }
        const Duration window = scenario_.attack.replay_window;
        std::vector<std::pair<MessageKind, SimTime>> recorded;
        for (const auto& [kind, at] : recorded_sends_) {
            if (at >= release - window && at < release) {
                recorded.emplace_back(kind, at);
            }
        }
        if (recorded.empty()) {
            throw std::logic_error("replay: recorded window is empty");
        }
        replay_active_ = true;
        replay_anchor_ = release;
        log_attack(release, "replay_takeover");
        for (const auto& [kind, at] : recorded) {
            schedule_replay_emission(kind, at + window);
        }
    }

    void schedule_replay_emission(MessageKind kind, SimTime at) {
        if (at > SimTime{} + scenario_.horizon) {
            return;
        }
        queue_.schedule(at, [this, kind, at] {
            emit_message(kind, at, MessageOrigin::Injected);
            ensure_monitor_check();
            // The recorded window loops seamlessly.
            schedule_replay_emission(kind, at + scenario_.attack.replay_window);
        });
    }

    // ---- operator reset ---------------------------------------------------

    void on_operator_reset() {
        const SimTime now = queue_.now();
        advance_plant_to(now);
        if (destroyed_) {
            return;
        }
        if (mode_.value != ControllerChoice::Safety) {
            log(json{{"type", "operator"}, {"t_ns", now.ns}, {"event", "reset_skipped"}});
            return;
        }
        mode_ = operator_reset(mode_, now);
        mode_switches_.push_back(ModeSwitch{now, mode_.value, SwitchCause::Operator});
        log(json{{"type", "mode"},
                 {"t_ns", now.ns},
                 {"to", to_string(mode_.value)},
                 {"cause", "operator"}});
        trace_row(now);
    }

    // ---- report ------------------------------------------------------------

    RunReport finish_report() {
        RunReport r;
        r.seed = scenario_.seed;
        r.monitor = to_string(scenario_.monitor);
        if (!mode_switches_.empty() &&
            mode_switches_.front().to == ControllerChoice::Safety) {
            r.detection_time = mode_switches_.front().time;
            r.detection_cause = mode_switches_.front().cause;
        }
        r.verdict = driver_.verdict().kind;
        r.trip_time = trip_time_;
        r.first_unsafe_time = first_unsafe_time_;
        r.plant_destroyed = destroyed_;
        r.destroyed_time = destroyed_ ? std::optional<SimTime>(destroyed_time_)
                                      : std::nullopt;
        r.iteration_count = iteration_count_;
        r.messages_sent = messages_sent_;
        r.messages_per_iteration = scenario_.checkpoints + 2;
        r.sender_overhead_per_iteration =
            scenario_.channel.sender_overhead * (scenario_.checkpoints + 2);
        r.first_infected_release = first_infected_release_;
        r.first_infected_start_arrival = first_infected_start_arrival_;
        if (r.detection_time && r.first_infected_start_arrival) {
            r.detection_latency = *r.detection_time - *r.first_infected_start_arrival;
        }
        r.mean_infected_exec_cycles =
            infected_exec_count_ > 0
                ? infected_exec_sum_ / static_cast<double>(infected_exec_count_)
                : 0.0;
        r.mode_switches = mode_switches_;
        return r;
    }

    // ---- members -----------------------------------------------------------

    Scenario scenario_;
    FsmConfig fsm_;
    std::ostream& events_;
    std::ostream& trace_;

    EventQueue queue_;
    RngStream exec_rng_;
    Channel channel_;
    MonitorDriver driver_;

    PlantState plant_state_;
    SimTime plant_time_{};
    double held_voltage_{0.0};
    SensorSample prev_sensors_{};
    ActuationCmd last_safety_cmd_{};
    Mode mode_{};

    bool destroyed_{false};
    SimTime destroyed_time_{};
    std::optional<SimTime> first_unsafe_time_{};
    std::optional<SimTime> trip_time_{};
    std::vector<ModeSwitch> mode_switches_{};

    std::int64_t iteration_count_{0};
    std::int64_t messages_sent_{0};
    SimTime last_logged_arrival_{};

    std::optional<SimTime> first_infected_release_{};
    std::optional<SimTime> first_infected_start_arrival_{};
    double infected_exec_sum_{0.0};
    std::int64_t infected_exec_count_{0};

    EventQueue::Handle check_handle_{};
    std::optional<SimTime> check_deadline_{};

    std::deque<std::pair<MessageKind, SimTime>> recorded_sends_{};
    bool replay_active_{false};
    SimTime replay_anchor_{};
    bool silence_logged_{false};
};

} // namespace

RunReport run_scenario(const Scenario& scenario, std::ostream& events,
                       std::ostream& trace) {
    scenario.validate();
    SimulationEngine engine(scenario, events, trace);
    return engine.run();
}

RunReport run_scenario(const Scenario& scenario,
                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream events(out_dir / "events.jsonl", std::ios::binary);
    std::ofstream trace(out_dir / "trace.csv", std::ios::binary);
    if (!events || !trace) {
        throw std::runtime_error("cannot open output files in " + out_dir.string());
    }
    RunReport report = run_scenario(scenario, events, trace);
    std::ofstream rep(out_dir / "report.json", std::ios::binary);
    rep << report_to_json(report) << '\n';
    return report;
}

} // namespace s3sim
