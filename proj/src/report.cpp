#include "ploop/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "ploop/error.hpp"

namespace ploop {

using ordered_json = nlohmann::ordered_json;

namespace {

long long to_ll(const std::string& s) {
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "expected an integer, got '" + s + "'");
    }
}

GenerationLaunch& launch_entry(std::vector<GenerationLaunch>& list, const std::string& family, int generation) {
    auto it = std::find_if(list.begin(), list.end(),
                           [&](const auto& g) { return g.family == family && g.generation == generation; });
    if (it != list.end()) return *it;
    GenerationLaunch entry;
    entry.family = family;
    entry.generation = generation;
    list.push_back(std::move(entry));
    return list.back();
}

ordered_json optional_tick(const std::optional<Tick>& t) { return t ? ordered_json(*t) : ordered_json(nullptr); }

std::optional<Tick> read_optional_tick(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<Tick>();
}

}  // namespace

RunReport build_report(const std::vector<LoggedEvent>& log) {
    RunReport report;
    std::optional<Tick> first_record;
    std::optional<Tick> first_trigger;

    for (const auto& e : log) {
        const auto d = parse_detail(e.detail);
        auto value = [&](const char* key) -> std::string {
            auto it = d.find(key);
            return it == d.end() ? std::string{} : it->second;
        };

        if (e.kind == "RunStarted") {
            report.scenario = value("scenario");
            report.seed = static_cast<std::uint64_t>(std::stoull(value("seed").empty() ? "0" : value("seed")));
            report.repository_node = value("repository");
        } else if (e.kind == "RunFinished") {
            report.total_ticks = to_ll(value("ticks"));
        } else if (e.kind == "KnowledgeStored") {
            if (!first_record) first_record = e.tick;
            if (e.node != report.repository_node) continue;
            ++report.knowledge_total;
            ++report.knowledge_by_mode[value("mode")];
            ++report.knowledge_by_source[value("source")];
            ++report.knowledge_by_activity[value("activity")];
        } else if (e.kind == "DesignTrigger") {
            if (!first_trigger) first_trigger = e.tick;
            ++report.design_triggers;
            auto& g = launch_entry(report.generations, value("family"), static_cast<int>(to_ll(value("generation"))));
            if (!g.trigger_tick) g.trigger_tick = e.tick;
        } else if (e.kind == "DesignStarted") {
            auto& g = launch_entry(report.generations, value("family"), static_cast<int>(to_ll(value("generation"))));
            g.design_started = e.tick;
        } else if (e.kind == "GenerationLaunched") {
            auto& g = launch_entry(report.generations, value("family"), static_cast<int>(to_ll(value("generation"))));
            g.launched = e.tick;
            if (!report.launch_time || e.tick < *report.launch_time) report.launch_time = e.tick;
        } else if (e.kind == "EOLDecision") {
            ++report.eol_decisions[value("decision")];
        } else if (e.kind == "MessageDropped" || e.kind == "MessageBlocked") {
            ++report.dropped_messages;
        } else if (e.kind == "MigrationCompleted") {
            ++report.migrations;
        }
    }

    if (first_record && first_trigger && *first_trigger >= *first_record)
        report.loop_closure_latency = *first_trigger - *first_record;
    std::sort(report.generations.begin(), report.generations.end(), [](const auto& a, const auto& b) {
        return std::tie(a.family, a.generation) < std::tie(b.family, b.generation);
    });
    return report;
}

std::string report_to_json(const RunReport& r) {
    ordered_json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["total_ticks"] = r.total_ticks;
    j["repository_node"] = r.repository_node;
    j["launch_time"] = optional_tick(r.launch_time);
    j["loop_closure_latency"] = optional_tick(r.loop_closure_latency);
    j["generations"] = ordered_json::array();
    for (const auto& g : r.generations) {
        ordered_json gj;
        gj["family"] = g.family;
        gj["generation"] = g.generation;
        gj["trigger_tick"] = optional_tick(g.trigger_tick);
        gj["design_started"] = optional_tick(g.design_started);
        gj["launched"] = optional_tick(g.launched);
        j["generations"].push_back(std::move(gj));
    }
    j["knowledge_total"] = r.knowledge_total;
    j["knowledge_by_mode"] = r.knowledge_by_mode;
    j["knowledge_by_source"] = r.knowledge_by_source;
    j["knowledge_by_activity"] = r.knowledge_by_activity;
    j["eol_decisions"] = r.eol_decisions;
    j["design_triggers"] = r.design_triggers;
    j["dropped_messages"] = r.dropped_messages;
    j["migrations"] = r.migrations;
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        RunReport r;
        r.scenario = j.at("scenario").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.total_ticks = j.at("total_ticks").get<Tick>();
        r.repository_node = j.at("repository_node").get<std::string>();
        r.launch_time = read_optional_tick(j, "launch_time");
        r.loop_closure_latency = read_optional_tick(j, "loop_closure_latency");
        for (const auto& gj : j.at("generations")) {
            r.generations.push_back(GenerationLaunch{.family = gj.at("family").get<std::string>(),
                                                     .generation = gj.at("generation").get<int>(),
                                                     .trigger_tick = read_optional_tick(gj, "trigger_tick"),
                                                     .design_started = read_optional_tick(gj, "design_started"),
                                                     .launched = read_optional_tick(gj, "launched")});
        }
        r.knowledge_total = j.at("knowledge_total").get<int>();
        r.knowledge_by_mode = j.at("knowledge_by_mode").get<std::map<std::string, int>>();
        r.knowledge_by_source = j.at("knowledge_by_source").get<std::map<std::string, int>>();
        r.knowledge_by_activity = j.at("knowledge_by_activity").get<std::map<std::string, int>>();
        r.eol_decisions = j.at("eol_decisions").get<std::map<std::string, int>>();
        r.design_triggers = j.at("design_triggers").get<int>();
        r.dropped_messages = j.at("dropped_messages").get<int>();
        r.migrations = j.at("migrations").get<int>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
    }
}

std::string report_to_text(const RunReport& r) {
    std::vector<std::pair<std::string, std::string>> rows;
    auto opt = [](const std::optional<Tick>& t) { return t ? std::to_string(*t) : std::string("-"); };
    rows.emplace_back("scenario", r.scenario);
    rows.emplace_back("seed", std::to_string(r.seed));
    rows.emplace_back("total ticks", std::to_string(r.total_ticks));
    rows.emplace_back("repository node", r.repository_node.empty() ? "-" : r.repository_node);
    rows.emplace_back("launch time", opt(r.launch_time));
    rows.emplace_back("loop closure latency", opt(r.loop_closure_latency));
    for (const auto& g : r.generations) {
        const auto label = "generation " + g.family + "#" + std::to_string(g.generation);
        rows.emplace_back(label, "trigger " + opt(g.trigger_tick) + ", design " + opt(g.design_started) +
                                     ", launched " + opt(g.launched));
    }
    rows.emplace_back("knowledge records", std::to_string(r.knowledge_total));
    for (const auto& [k, v] : r.knowledge_by_mode) rows.emplace_back("  mode " + k, std::to_string(v));
    for (const auto& [k, v] : r.knowledge_by_source) rows.emplace_back("  source " + k, std::to_string(v));
    for (const auto& [k, v] : r.knowledge_by_activity) rows.emplace_back("  activity " + k, std::to_string(v));
    rows.emplace_back("design triggers", std::to_string(r.design_triggers));
    for (const auto& [k, v] : r.eol_decisions) rows.emplace_back("eol " + k, std::to_string(v));
    rows.emplace_back("dropped messages", std::to_string(r.dropped_messages));
    rows.emplace_back("migrations", std::to_string(r.migrations));

    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    std::ostringstream os;
    for (const auto& [label, value] : rows)
        os << std::left << std::setw(static_cast<int>(width)) << label << "  " << value << '\n';
    return os.str();
}

ComparisonSummary compare(const RunReport& feedback, const RunReport& baseline) {
    if (!feedback.launch_time)
        throw Error(ErrorCode::IncomparableRuns, "run '" + feedback.scenario + "' never launched a next generation");
    if (!baseline.launch_time)
        throw Error(ErrorCode::IncomparableRuns, "run '" + baseline.scenario + "' never launched a next generation");
    ComparisonSummary s;
    s.feedback_launch = *feedback.launch_time;
    s.baseline_launch = *baseline.launch_time;
    s.delta = s.baseline_launch - s.feedback_launch;
    s.improvement = s.delta > 0;
    return s;
}

std::string comparison_to_text(const ComparisonSummary& s) {
    std::ostringstream os;
    os << "feedback launch  " << s.feedback_launch << '\n'
       << "baseline launch  " << s.baseline_launch << '\n'
       << "delta            " << s.delta << '\n'
       << "improvement      " << (s.improvement ? "yes" : "no") << '\n';
    return os.str();
}

}  // namespace ploop
