#include "s3sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace s3sim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path, msg);
}

std::string joined(const std::string& base, const char* key) {
    return base.empty() ? key : base + "." + key;
}

double get_double(const json& j, const std::string& base, const char* key,
                  double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        fail(joined(base, key), "expected a number");
    }
    return v.get<double>();
}

std::int64_t get_i64(const json& j, const std::string& base, const char* key,
                     std::int64_t fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (v.is_number_integer() || v.is_number_unsigned()) {
        return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d)) {
            return static_cast<std::int64_t>(d);
        }
    }
    fail(joined(base, key), "expected an integer");
}

std::uint64_t get_u64(const json& j, const std::string& base, const char* key,
                      std::uint64_t fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        fail(joined(base, key), "expected an unsigned integer");
    }
    return v.get<std::uint64_t>();
}

Duration get_duration(const json& j, const std::string& base, const char* key,
                      Duration fallback) {
    return Duration{get_i64(j, base, key, fallback.ns)};
}

std::pair<Cycles, Cycles> get_range(const json& j, const std::string& base,
                                    const char* key,
                                    std::pair<Cycles, Cycles> fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2) {
        fail(joined(base, key), "expected [low, high]");
    }
    return {v.at(0).get<Cycles>(), v.at(1).get<Cycles>()};
}

const json& get_object(const json& j, const std::string& base, const char* key,
                       const json& fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_object()) {
        fail(joined(base, key), "expected an object");
    }
    return v;
}

ControllerGains parse_gains(const json& j, const std::string& path,
                            ControllerGains fallback) {
    ControllerGains g = fallback;
    g.k_x = get_double(j, path, "k_x", g.k_x);
    g.k_x_dot = get_double(j, path, "k_x_dot", g.k_x_dot);
    g.k_theta = get_double(j, path, "k_theta", g.k_theta);
    g.k_theta_dot = get_double(j, path, "k_theta_dot", g.k_theta_dot);
    return g;
}

AttackKind parse_attack_kind(const std::string& s, const std::string& path) {
    if (s == "none") return AttackKind::None;
    if (s == "overrun") return AttackKind::Overrun;
    if (s == "undertime") return AttackKind::Undertime;
    if (s == "period_drift") return AttackKind::PeriodDrift;
    if (s == "idle_silence") return AttackKind::IdleSilence;
    if (s == "destabilize") return AttackKind::Destabilize;
    if (s == "replay") return AttackKind::Replay;
    fail(path, "unknown attack kind '" + s + "'");
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("<document>", e.what());
    }
    if (!j.is_object()) {
        fail("<document>", "scenario must be a JSON object");
    }

    static const json empty = json::object();
    Scenario s;
    s.seed = get_u64(j, "", "seed", s.seed);
    s.horizon = get_duration(j, "", "horizon_ns", s.horizon);

    if (j.contains("monitor")) {
        const std::string m = j.at("monitor").get<std::string>();
        if (m == "s3a") {
            s.monitor = MonitorWiring::S3a;
        } else if (m == "vanilla") {
            s.monitor = MonitorWiring::VanillaSimplex;
        } else {
            fail("monitor", "expected \"s3a\" or \"vanilla\"");
        }
    }

    {
        const json& plant = get_object(j, "", "plant", empty);
        const json& params = get_object(plant, "plant", "params", empty);
        PlantParams& p = s.plant.params;
        p.cart_mass_kg = get_double(params, "plant.params", "cart_mass_kg", p.cart_mass_kg);
        p.pole_mass_kg = get_double(params, "plant.params", "pole_mass_kg", p.pole_mass_kg);
        p.pole_half_length_m =
            get_double(params, "plant.params", "pole_half_length_m", p.pole_half_length_m);
        p.gravity = get_double(params, "plant.params", "gravity", p.gravity);
        p.motor_gain_n_per_v =
            get_double(params, "plant.params", "motor_gain_n_per_v", p.motor_gain_n_per_v);
        p.cart_friction = get_double(params, "plant.params", "cart_friction", p.cart_friction);
        p.pole_friction = get_double(params, "plant.params", "pole_friction", p.pole_friction);
        p.track_half_length_m =
            get_double(params, "plant.params", "track_half_length_m", p.track_half_length_m);
        p.voltage_limit_v =
            get_double(params, "plant.params", "voltage_limit_v", p.voltage_limit_v);

        const json& env = get_object(plant, "plant", "envelope", empty);
        SafetyEnvelope& e = s.plant.envelope;
        e.max_abs_x_m = get_double(env, "plant.envelope", "max_abs_x_m", e.max_abs_x_m);
        e.max_abs_theta_rad =
            get_double(env, "plant.envelope", "max_abs_theta_rad", e.max_abs_theta_rad);
        e.max_abs_x_dot = get_double(env, "plant.envelope", "max_abs_x_dot", e.max_abs_x_dot);
        e.max_abs_theta_dot =
            get_double(env, "plant.envelope", "max_abs_theta_dot", e.max_abs_theta_dot);

        const json& init = get_object(plant, "plant", "initial_state", empty);
        PlantState& st = s.plant.initial_state;
        st.x = get_double(init, "plant.initial_state", "x", st.x);
        st.x_dot = get_double(init, "plant.initial_state", "x_dot", st.x_dot);
        st.theta = get_double(init, "plant.initial_state", "theta", st.theta);
        st.theta_dot = get_double(init, "plant.initial_state", "theta_dot", st.theta_dot);

        const json& q = get_object(plant, "plant", "quantization", empty);
        s.plant.quantization.position_step_m =
            get_double(q, "plant.quantization", "position_step_m",
                       s.plant.quantization.position_step_m);
        s.plant.quantization.angle_step_rad =
            get_double(q, "plant.quantization", "angle_step_rad",
                       s.plant.quantization.angle_step_rad);
    }

    {
        const json& control = get_object(j, "", "control", empty);
        s.control.period = get_duration(control, "control", "period_ns", s.control.period);
        s.control.complex_gains = parse_gains(
            get_object(control, "control", "complex_gains", empty),
            "control.complex_gains", s.control.complex_gains);
        s.control.safety_gains = parse_gains(
            get_object(control, "control", "safety_gains", empty),
            "control.safety_gains", s.control.safety_gains);
    }

    {
        const json& cpu = get_object(j, "", "cpu", empty);
        s.cpu.frequency_hz = get_u64(cpu, "cpu", "frequency_hz", s.cpu.frequency_hz);
        s.cpu.message_overhead_cycles =
            get_i64(cpu, "cpu", "message_overhead_cycles", s.cpu.message_overhead_cycles);
    }

    {
        const json& exec = get_object(j, "", "exec", empty);
        ExecTimeDistribution& d = s.exec;
        d.steady_low = get_i64(exec, "exec", "steady_low_cycles", d.steady_low);
        d.steady_high = get_i64(exec, "exec", "steady_high_cycles", d.steady_high);
        d.cold_start_iterations =
            get_i64(exec, "exec", "cold_start_iterations", d.cold_start_iterations);
        d.cold_start_worst =
            get_i64(exec, "exec", "cold_start_worst_cycles", d.cold_start_worst);
        d.upper_band_probability =
            get_double(exec, "exec", "upper_band_probability", d.upper_band_probability);
        auto upper = get_range(exec, "exec", "upper_band_extra_cycles",
                               {d.upper_band_extra_low, d.upper_band_extra_high});
        d.upper_band_extra_low = upper.first;
        d.upper_band_extra_high = upper.second;
        d.spike_probability =
            get_double(exec, "exec", "spike_probability", d.spike_probability);
        auto spike = get_range(exec, "exec", "spike_extra_cycles",
                               {d.spike_extra_low, d.spike_extra_high});
        d.spike_extra_low = spike.first;
        d.spike_extra_high = spike.second;
        auto instr = get_range(exec, "exec", "instrumentation_overhead_cycles",
                               {d.instrumentation_overhead_low,
                                d.instrumentation_overhead_high});
        d.instrumentation_overhead_low = instr.first;
        d.instrumentation_overhead_high = instr.second;
    }

    {
        const json& ch = get_object(j, "", "channel", empty);
        s.channel.base_delay = get_duration(ch, "channel", "base_delay_ns", s.channel.base_delay);
        s.channel.jitter_bound =
            get_duration(ch, "channel", "jitter_bound_ns", s.channel.jitter_bound);
        s.channel.sender_overhead =
            get_duration(ch, "channel", "sender_overhead_ns", s.channel.sender_overhead);
    }

    {
        const json& idle = get_object(j, "", "idle", empty);
        s.idle.heartbeat_interval = get_duration(idle, "idle", "heartbeat_interval_ns",
                                                 s.idle.heartbeat_interval);
    }

    s.checkpoints = get_i64(j, "", "checkpoints", s.checkpoints);

    if (j.contains("fsm")) {
        const json& fsm = get_object(j, "", "fsm", empty);
        if (fsm.contains("explicit") == fsm.contains("derive")) {
            fail("fsm", "exactly one of \"explicit\" or \"derive\" required");
        }
        if (fsm.contains("explicit")) {
            const json& e = get_object(fsm, "fsm", "explicit", empty);
            FsmConfig cfg;
            if (e.contains("legs")) {
                const json& legs = e.at("legs");
                if (!legs.is_array() || legs.empty()) {
                    fail("fsm.explicit.legs", "expected a non-empty array");
                }
                for (const json& leg : legs) {
                    cfg.control_legs.push_back(ExecWindow{
                        Duration{get_i64(leg, "fsm.explicit.legs", "must_wait_ns", 0)},
                        Duration{get_i64(leg, "fsm.explicit.legs", "can_wait_ns", 0)}});
                }
            } else {
                cfg.control_legs = {ExecWindow{
                    get_duration(e, "fsm.explicit", "must_wait_c_ns", {}),
                    get_duration(e, "fsm.explicit", "can_wait_c_ns", {})}};
            }
            cfg.must_wait_i = get_duration(e, "fsm.explicit", "must_wait_i_ns", {});
            cfg.can_wait_i = get_duration(e, "fsm.explicit", "can_wait_i_ns", {});
            cfg.must_wait_p = get_duration(e, "fsm.explicit", "must_wait_p_ns", {});
            cfg.can_wait_p = get_duration(e, "fsm.explicit", "can_wait_p_ns", {});
            s.fsm.explicit_config = cfg;
        } else {
            const json& d = get_object(fsm, "fsm", "derive", empty);
            DerivationMargins m;
            m.exec_lower_guard =
                get_duration(d, "fsm.derive", "exec_lower_guard_ns", m.exec_lower_guard);
            m.exec_upper_guard =
                get_duration(d, "fsm.derive", "exec_upper_guard_ns", m.exec_upper_guard);
            m.period_margin = get_duration(d, "fsm.derive", "period_margin_ns", m.period_margin);
            m.idle_margin = get_duration(d, "fsm.derive", "idle_margin_ns", m.idle_margin);
            m.idle_heartbeat_interval = s.idle.heartbeat_interval;
            s.fsm.derive = m;
        }
    } else {
        DerivationMargins m;
        m.idle_heartbeat_interval = s.idle.heartbeat_interval;
        s.fsm.derive = m;
    }

    {
        const json& a = get_object(j, "", "attack", empty);
        AttackSpec& spec = s.attack;
        if (a.contains("kind")) {
            spec.kind = parse_attack_kind(a.at("kind").get<std::string>(), "attack.kind");
        }
        spec.start_time = SimTime{get_i64(a, "attack", "start_time_ns", spec.start_time.ns)};
        spec.loop_bound = get_i64(a, "attack", "loop_bound", spec.loop_bound);
        spec.per_iteration_cost =
            get_i64(a, "attack", "per_iteration_cost_cycles", spec.per_iteration_cost);
        spec.shrink_factor = get_double(a, "attack", "shrink_factor", spec.shrink_factor);
        spec.drift_per_period =
            get_duration(a, "attack", "drift_per_period_ns", spec.drift_per_period);
        spec.replay_window = get_duration(a, "attack", "replay_window_ns", spec.replay_window);
        if (a.contains("replay_destabilize")) {
            spec.replay_destabilize = a.at("replay_destabilize").get<bool>();
        }
        spec.replay_loop_bound =
            get_i64(a, "attack", "replay_loop_bound", spec.replay_loop_bound);
    }

    if (j.contains("operator_reset_at_ns") && !j.at("operator_reset_at_ns").is_null()) {
        s.operator_reset_at = SimTime{get_i64(j, "", "operator_reset_at_ns", 0)};
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        fail("<file>", "cannot open " + file.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

void Scenario::validate() const {
    if (horizon.ns <= 0) {
        fail("horizon_ns", "must be positive");
    }
    const PlantParams& p = plant.params;
    if (p.cart_mass_kg <= 0 || p.pole_mass_kg <= 0 || p.pole_half_length_m <= 0) {
        fail("plant.params", "masses and lengths must be strictly positive");
    }
    if (p.track_half_length_m <= 0) {
        fail("plant.params.track_half_length_m", "must be strictly positive");
    }
    if (p.voltage_limit_v <= 0) {
        fail("plant.params.voltage_limit_v", "must be strictly positive");
    }
    const SafetyEnvelope& e = plant.envelope;
    if (e.max_abs_x_m <= 0 || e.max_abs_theta_rad <= 0 || e.max_abs_x_dot <= 0 ||
        e.max_abs_theta_dot <= 0) {
        fail("plant.envelope", "bounds must be strictly positive");
    }
    if (e.max_abs_x_m >= p.track_half_length_m) {
        fail("plant.envelope.max_abs_x_m", "must be inside the track");
    }
    if (e.max_abs_theta_rad >= std::numbers::pi / 2.0) {
        fail("plant.envelope.max_abs_theta_rad", "must be inside the fallen-pole bound");
    }
    if (plant.quantization.position_step_m < 0 || plant.quantization.angle_step_rad < 0) {
        fail("plant.quantization", "steps must be >= 0");
    }
    if (control.period.ns <= 0) {
        fail("control.period_ns", "must be positive");
    }
    if (cpu.frequency_hz == 0) {
        fail("cpu.frequency_hz", "must be positive");
    }
    if (cpu.message_overhead_cycles < 0) {
        fail("cpu.message_overhead_cycles", "must be >= 0");
    }
    try {
        exec.validate();
    } catch (const std::invalid_argument& err) {
        fail("exec", err.what());
    }
    if (channel.base_delay.ns < 0 || channel.jitter_bound.ns < 0 ||
        channel.sender_overhead.ns < 0) {
        fail("channel", "delays must be >= 0");
    }
    if (idle.heartbeat_interval.ns <= 0) {
        fail("idle.heartbeat_interval_ns", "must be positive");
    }
    if (control.period.ns % idle.heartbeat_interval.ns != 0) {
        fail("idle.heartbeat_interval_ns", "must divide the control period");
    }
    if (checkpoints < 0) {
        fail("checkpoints", "must be >= 0");
    }

    // The heartbeat cadence must clear the worst possible job span, or the
    // simulated idle task would need preemption-aware heartbeat bookkeeping.
    const Cycles worst_cycles = std::max(exec.cold_start_worst,
                                         exec.steady_high + exec.upper_band_extra_high +
                                             exec.spike_extra_high) +
                                (attack.kind == AttackKind::Overrun
                                     ? attack.loop_bound * attack.per_iteration_cost
                                     : 0);
    const Duration worst_span =
        cycles_to_time(worst_cycles + (checkpoints + 2) * cpu.message_overhead_cycles, cpu);
    if (idle.heartbeat_interval.ns < 2 * worst_span.ns) {
        fail("idle.heartbeat_interval_ns",
             "must be at least twice the worst-case control job span");
    }

    if (fsm.explicit_config.has_value() == fsm.derive.has_value()) {
        fail("fsm", "exactly one of \"explicit\" or \"derive\" required");
    }
    if (fsm.explicit_config) {
        try {
            fsm.explicit_config->validate();
        } catch (const std::invalid_argument& err) {
            fail("fsm.explicit", err.what());
        }
        if (static_cast<std::int64_t>(fsm.explicit_config->control_legs.size()) !=
            checkpoints + 1) {
            fail("fsm.explicit", "number of legs must equal checkpoints + 1");
        }
    }

    if (attack.kind != AttackKind::None) {
        if (attack.start_time.ns < 0 || attack.start_time > SimTime{} + horizon) {
            fail("attack.start_time_ns", "must lie within the simulation horizon");
        }
    }
    switch (attack.kind) {
    case AttackKind::Overrun:
        if (attack.loop_bound < 1) {
            fail("attack.loop_bound", "must be >= 1");
        }
        if (attack.per_iteration_cost <= 0) {
            fail("attack.per_iteration_cost_cycles", "must be positive");
        }
        break;
    case AttackKind::Undertime:
        if (attack.shrink_factor <= 0.0 || attack.shrink_factor >= 1.0) {
            fail("attack.shrink_factor", "must be in (0, 1)");
        }
        break;
    case AttackKind::Replay:
        if (attack.replay_window.ns < control.period.ns ||
            attack.replay_window.ns % control.period.ns != 0) {
            fail("attack.replay_window_ns",
                 "must be a whole positive number of control periods");
        }
        if (attack.start_time.ns < attack.replay_window.ns) {
            fail("attack.start_time_ns",
                 "replay needs a full recorded window before it starts");
        }
        if (attack.replay_loop_bound < 0) {
            fail("attack.replay_loop_bound", "must be >= 0");
        }
        break;
    default:
        break;
    }

    if (operator_reset_at && operator_reset_at->ns < 0) {
        fail("operator_reset_at_ns", "must be >= 0");
    }
}

FsmConfig Scenario::resolve_fsm() const {
    if (fsm.explicit_config) {
        return *fsm.explicit_config;
    }
    ExecutionProfile profile;
    profile.best = exec.steady_low;
    profile.steady_low = exec.steady_low;
    profile.steady_high = exec.steady_high;
    profile.worst = exec.cold_start_worst;
    profile.instrumentation_overhead = 0;
    DerivationMargins margins = *fsm.derive;
    margins.idle_heartbeat_interval = idle.heartbeat_interval;
    return derive_fsm_params(profile, channel.jitter_bound, margins, cpu,
                             control.period,
                             static_cast<std::size_t>(checkpoints) + 1);
}

std::string to_string(MonitorWiring wiring) {
    return wiring == MonitorWiring::S3a ? "s3a" : "vanilla";
}

namespace {

json gains_to_json(const ControllerGains& g) {
    return json{{"k_x", g.k_x},
                {"k_x_dot", g.k_x_dot},
                {"k_theta", g.k_theta},
                {"k_theta_dot", g.k_theta_dot}};
}

} // namespace

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["seed"] = s.seed;
    j["horizon_ns"] = s.horizon.ns;
    j["monitor"] = to_string(s.monitor);
    j["plant"] = {
        {"params",
         {{"cart_mass_kg", s.plant.params.cart_mass_kg},
          {"pole_mass_kg", s.plant.params.pole_mass_kg},
          {"pole_half_length_m", s.plant.params.pole_half_length_m},
          {"gravity", s.plant.params.gravity},
          {"motor_gain_n_per_v", s.plant.params.motor_gain_n_per_v},
          {"cart_friction", s.plant.params.cart_friction},
          {"pole_friction", s.plant.params.pole_friction},
          {"track_half_length_m", s.plant.params.track_half_length_m},
          {"voltage_limit_v", s.plant.params.voltage_limit_v}}},
        {"envelope",
         {{"max_abs_x_m", s.plant.envelope.max_abs_x_m},
          {"max_abs_theta_rad", s.plant.envelope.max_abs_theta_rad},
          {"max_abs_x_dot", s.plant.envelope.max_abs_x_dot},
          {"max_abs_theta_dot", s.plant.envelope.max_abs_theta_dot}}},
        {"initial_state",
         {{"x", s.plant.initial_state.x},
          {"x_dot", s.plant.initial_state.x_dot},
          {"theta", s.plant.initial_state.theta},
          {"theta_dot", s.plant.initial_state.theta_dot}}},
        {"quantization",
         {{"position_step_m", s.plant.quantization.position_step_m},
          {"angle_step_rad", s.plant.quantization.angle_step_rad}}}};
    j["control"] = {{"period_ns", s.control.period.ns},
                    {"complex_gains", gains_to_json(s.control.complex_gains)},
                    {"safety_gains", gains_to_json(s.control.safety_gains)}};
    j["cpu"] = {{"frequency_hz", s.cpu.frequency_hz},
                {"message_overhead_cycles", s.cpu.message_overhead_cycles}};
    j["exec"] = {{"steady_low_cycles", s.exec.steady_low},
                 {"steady_high_cycles", s.exec.steady_high},
                 {"cold_start_iterations", s.exec.cold_start_iterations},
                 {"cold_start_worst_cycles", s.exec.cold_start_worst},
                 {"upper_band_probability", s.exec.upper_band_probability},
                 {"upper_band_extra_cycles",
                  json::array({s.exec.upper_band_extra_low, s.exec.upper_band_extra_high})},
                 {"spike_probability", s.exec.spike_probability},
                 {"spike_extra_cycles",
                  json::array({s.exec.spike_extra_low, s.exec.spike_extra_high})},
                 {"instrumentation_overhead_cycles",
                  json::array({s.exec.instrumentation_overhead_low,
                               s.exec.instrumentation_overhead_high})}};
    j["channel"] = {{"base_delay_ns", s.channel.base_delay.ns},
                    {"jitter_bound_ns", s.channel.jitter_bound.ns},
                    {"sender_overhead_ns", s.channel.sender_overhead.ns}};
    j["idle"] = {{"heartbeat_interval_ns", s.idle.heartbeat_interval.ns}};
    j["checkpoints"] = s.checkpoints;
    if (s.fsm.explicit_config) {
        const FsmConfig& cfg = *s.fsm.explicit_config;
        json legs = json::array();
        for (const ExecWindow& leg : cfg.control_legs) {
            legs.push_back({{"must_wait_ns", leg.must_wait.ns},
                            {"can_wait_ns", leg.can_wait.ns}});
        }
        j["fsm"] = {{"explicit",
                     {{"legs", legs},
                      {"must_wait_i_ns", cfg.must_wait_i.ns},
                      {"can_wait_i_ns", cfg.can_wait_i.ns},
                      {"must_wait_p_ns", cfg.must_wait_p.ns},
                      {"can_wait_p_ns", cfg.can_wait_p.ns}}}};
    } else {
        const DerivationMargins& m = *s.fsm.derive;
        j["fsm"] = {{"derive",
                     {{"exec_lower_guard_ns", m.exec_lower_guard.ns},
                      {"exec_upper_guard_ns", m.exec_upper_guard.ns},
                      {"period_margin_ns", m.period_margin.ns},
                      {"idle_margin_ns", m.idle_margin.ns}}}};
    }
    j["attack"] = {{"kind", to_string(s.attack.kind)},
                   {"start_time_ns", s.attack.start_time.ns},
                   {"loop_bound", s.attack.loop_bound},
                   {"per_iteration_cost_cycles", s.attack.per_iteration_cost},
                   {"shrink_factor", s.attack.shrink_factor},
                   {"drift_per_period_ns", s.attack.drift_per_period.ns},
                   {"replay_window_ns", s.attack.replay_window.ns},
                   {"replay_destabilize", s.attack.replay_destabilize},
                   {"replay_loop_bound", s.attack.replay_loop_bound}};
    if (s.operator_reset_at) {
        j["operator_reset_at_ns"] = s.operator_reset_at->ns;
    }
    return j.dump(2);
}

Scenario with_axis_value(const Scenario& base, const std::string& axis,
                         double value) {
    json j = json::parse(scenario_to_json(base));
    json* node = &j;
    std::string remaining = axis;
    std::string walked;
    for (;;) {
        const std::size_t dot = remaining.find('.');
        const std::string key = remaining.substr(0, dot);
        walked = walked.empty() ? key : walked + "." + key;
        if (!node->is_object() || !node->contains(key)) {
            throw ConfigError(walked, "unknown axis path");
        }
        node = &node->at(key);
        if (dot == std::string::npos) {
            break;
        }
        remaining = remaining.substr(dot + 1);
    }
    if (!node->is_number()) {
        throw ConfigError(walked, "axis does not address a numeric field");
    }
    if (node->is_number_integer() || node->is_number_unsigned()) {
        if (value != std::floor(value)) {
            throw ConfigError(walked, "axis value must be an integer");
        }
        *node = static_cast<std::int64_t>(value);
    } else {
        *node = value;
    }
    return parse_scenario(j.dump());
}

} // namespace s3sim
