#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ploop/event_log.hpp"
#include "ploop/report.hpp"
#include "ploop/scenario.hpp"
#include "ploop/world.hpp"

namespace ploop {

struct RunResult {
    World world;  // final state
    RunReport report;

    const std::vector<LoggedEvent>& log() const { return world.log(); }
};

/// Runs ticks 1..horizon, checking the world invariants after every tick.
/// Throws Error{InvariantViolation} if the simulation breaks one.
RunResult run(const Scenario& scenario, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Writes events.jsonl, report.json, report.txt, repository.jsonl and
/// insights.txt into `dir` (created if missing).
void write_run_outputs(const RunResult& result, const std::filesystem::path& dir);

}  // namespace ploop
