#pragma once

#include <filesystem>
#include <iosfwd>

#include "s3sim/report.hpp"
#include "s3sim/scenario.hpp"

namespace s3sim {

/// Runs one scenario end to end, streaming the event log (JSON lines) and
/// the plant trace (CSV) to the given sinks. Deterministic: the same
/// scenario and seed produce byte-identical output streams.
RunReport run_scenario(const Scenario& scenario, std::ostream& events,
                       std::ostream& trace);

/// Same, writing trace.csv, events.jsonl and report.json into out_dir
/// (created if missing).
RunReport run_scenario(const Scenario& scenario,
                       const std::filesystem::path& out_dir);

} // namespace s3sim
