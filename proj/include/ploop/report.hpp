#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ploop/event_log.hpp"
#include "ploop/types.hpp"

namespace ploop {

/// Timeline of one next-generation programme. All ticks are absolute.
struct GenerationLaunch {
    std::string family;
    int generation = 2;
    std::optional<Tick> trigger_tick;
    std::optional<Tick> design_started;
    std::optional<Tick> launched;  // BOL_Manufacture completed

    friend bool operator==(const GenerationLaunch&, const GenerationLaunch&) = default;
};

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    Tick total_ticks = 0;
    std::string repository_node;
    std::vector<GenerationLaunch> generations;
    /// Tick at which the first next generation finished manufacturing.
    std::optional<Tick> launch_time;
    /// First stored knowledge record to first DesignTrigger.
    std::optional<Tick> loop_closure_latency;
    int knowledge_total = 0;
    std::map<std::string, int> knowledge_by_mode;
    std::map<std::string, int> knowledge_by_source;
    std::map<std::string, int> knowledge_by_activity;
    std::map<std::string, int> eol_decisions;
    int design_triggers = 0;
    int dropped_messages = 0;
    int migrations = 0;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Pure function of the event log. Knowledge counts only cover records
/// stored at the repository node named in the RunStarted event.
RunReport build_report(const std::vector<LoggedEvent>& log);

std::string report_to_json(const RunReport& report);
/// Throws Error{ParseError}.
RunReport report_from_json(const std::string& text);
/// Aligned two-column table.
std::string report_to_text(const RunReport& report);

struct ComparisonSummary {
    Tick feedback_launch = 0;
    Tick baseline_launch = 0;
    Tick delta = 0;  // baseline - feedback
    bool improvement = false;
};

/// Throws Error{IncomparableRuns} when either report has no launch_time.
ComparisonSummary compare(const RunReport& feedback, const RunReport& baseline);

std::string comparison_to_text(const ComparisonSummary& summary);

}  // namespace ploop
