#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "s3sim/attack.hpp"
#include "s3sim/cartpole.hpp"
#include "s3sim/channel.hpp"
#include "s3sim/controller.hpp"
#include "s3sim/exec_model.hpp"
#include "s3sim/monitor.hpp"

namespace s3sim {

/// Scenario-file problem, carrying the dotted path of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error("config error at " + path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct PlantConfig {
    PlantParams params{};
    SafetyEnvelope envelope{};
    PlantState initial_state{0.02, 0.0, 0.01, 0.0};
    SensorQuantization quantization{};
};

struct ControlConfig {
    Duration period{milliseconds(20)}; // 50 Hz
    ControllerGains complex_gains = default_complex_gains();
    ControllerGains safety_gains = default_safety_gains();
};

struct IdleConfig {
    Duration heartbeat_interval{milliseconds(1)};
};

enum class MonitorWiring { S3a, VanillaSimplex };

/// FSM parameters are either given outright or derived from the configured
/// execution-time distribution through the profiling path.
struct FsmSource {
    std::optional<FsmConfig> explicit_config{};
    std::optional<DerivationMargins> derive{};
};

struct Scenario {
    std::uint64_t seed{1};
    Duration horizon{seconds(2)};
    MonitorWiring monitor{MonitorWiring::S3a};
    PlantConfig plant{};
    ControlConfig control{};
    CpuModel cpu{};
    ExecTimeDistribution exec{};
    ChannelModel channel{};
    IdleConfig idle{};
    std::int64_t checkpoints{0};
    FsmSource fsm{};
    AttackSpec attack{};
    std::optional<SimTime> operator_reset_at{};

    /// Full structural validation; throws ConfigError with a field path.
    void validate() const;

    /// The FSM configuration this scenario runs with (explicit, or derived
    /// from the distribution's steady band as the profile ground truth).
    FsmConfig resolve_fsm() const;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& file);
std::string scenario_to_json(const Scenario& s);

/// Replaces one numeric field addressed by a dotted path (e.g.
/// "channel.jitter_bound_ns", "attack.loop_bound") and reparses. Throws
/// ConfigError for unknown or non-numeric paths.
Scenario with_axis_value(const Scenario& base, const std::string& axis,
                         double value);

std::string to_string(MonitorWiring wiring);

} // namespace s3sim
