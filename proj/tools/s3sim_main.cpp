// s3sim: deterministic simulator of a secure-Simplex (S3A) protected
// inverted pendulum. Subcommands:
//   run     one scenario -> trace.csv, events.jsonl, report.json
//   sweep   scenario x axis values -> sweep.csv (+ per-value run dirs)
//   profile simulated timing campaign -> profile.json, fsm.json
// Exit codes: 0 run completed, 2 configuration error, 3 plant destroyed.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s3sim/profiler.hpp"
#include "s3sim/simulation.hpp"
#include "s3sim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDestroyed = 3;

s3sim::Scenario load_with_seed(const std::string& path,
                               const std::optional<std::uint64_t>& seed) {
    s3sim::Scenario scenario = s3sim::load_scenario(path);
    if (seed) {
        scenario.seed = *seed;
    }
    return scenario;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure-Simplex inverted-pendulum simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;

    auto* run = app.add_subcommand("run", "run one scenario");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seed", seed_override, "override the scenario seed");

    std::string axis;
    std::string values_text;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    sweep->add_option("--axis", axis, "dotted numeric field path")->required();
    sweep->add_option("--values", values_text, "comma-separated values")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--seed", seed_override, "override the scenario seed");

    std::int64_t iterations = 100'000;
    auto* profile = app.add_subcommand("profile", "simulate a timing campaign");
    profile->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    profile->add_option("--iterations", iterations, "campaign iterations")
        ->check(CLI::PositiveNumber);
    profile->add_option("--out", out_dir, "output directory")->required();
    profile->add_option("--seed", seed_override, "override the scenario seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const s3sim::Scenario scenario = load_with_seed(scenario_path, seed_override);
            const s3sim::RunReport report = s3sim::run_scenario(scenario, out_dir);
            std::cout << s3sim::report_to_json(report) << '\n';
            return report.plant_destroyed ? kExitDestroyed : kExitOk;
        }
        if (sweep->parsed()) {
            const s3sim::Scenario scenario = load_with_seed(scenario_path, seed_override);
            std::vector<double> values;
            std::size_t pos = 0;
            while (pos < values_text.size()) {
                const std::size_t comma = values_text.find(',', pos);
                const std::string token = values_text.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                try {
                    values.push_back(std::stod(token));
                } catch (const std::exception&) {
                    std::cerr << "config error at --values: '" << token
                              << "' is not a number\n";
                    return kExitConfig;
                }
                if (comma == std::string::npos) {
                    break;
                }
                pos = comma + 1;
            }
            const s3sim::SweepResult result =
                s3sim::run_sweep(scenario, axis, values, out_dir);
            std::cout << s3sim::sweep_to_csv(result);
            bool destroyed = false;
            for (const s3sim::SweepRow& row : result.rows) {
                destroyed = destroyed || row.report.plant_destroyed;
            }
            return destroyed ? kExitDestroyed : kExitOk;
        }
        const s3sim::Scenario scenario = load_with_seed(scenario_path, seed_override);
        const s3sim::ProfileResult result =
            s3sim::profile_and_derive(scenario, iterations, out_dir);
        std::cout << s3sim::profile_to_json(result, scenario.cpu) << '\n';
        return kExitOk;
    } catch (const s3sim::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
