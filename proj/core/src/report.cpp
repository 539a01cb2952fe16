#include "s3sim/report.hpp"

#include <json.hpp>

namespace s3sim {

using nlohmann::json;

namespace {

json opt_time(const std::optional<SimTime>& t) {
    if (!t) {
        return nullptr;
    }
    return t->ns;
}

} // namespace

std::string report_to_json(const RunReport& r) {
    json j;
    j["seed"] = r.seed;
    j["monitor"] = r.monitor;
    j["detection_time_ns"] = opt_time(r.detection_time);
    j["detection_cause"] =
        r.detection_cause ? json(to_string(*r.detection_cause)) : json(nullptr);
    j["verdict"] = to_string(r.verdict);
    j["trip_time_ns"] = opt_time(r.trip_time);
    j["first_unsafe_time_ns"] = opt_time(r.first_unsafe_time);
    j["plant_destroyed"] = r.plant_destroyed;
    j["destroyed_time_ns"] = opt_time(r.destroyed_time);
    j["iteration_count"] = r.iteration_count;
    j["messages_sent"] = r.messages_sent;
    j["messages_per_iteration"] = r.messages_per_iteration;
    j["sender_overhead_per_iteration_ns"] = r.sender_overhead_per_iteration.ns;
    j["first_infected_release_ns"] = opt_time(r.first_infected_release);
    j["first_infected_start_arrival_ns"] = opt_time(r.first_infected_start_arrival);
    j["detection_latency_ns"] =
        r.detection_latency ? json(r.detection_latency->ns) : json(nullptr);
    j["mean_infected_exec_cycles"] = r.mean_infected_exec_cycles;
    json switches = json::array();
    for (const ModeSwitch& s : r.mode_switches) {
        switches.push_back({{"t_ns", s.time.ns},
                            {"to", to_string(s.to)},
                            {"cause", to_string(s.cause)}});
    }
    j["mode_switches"] = switches;
    return j.dump(2);
}

} // namespace s3sim
