#include "ploop/harness.hpp"

#include <fstream>
#include <set>

#include <spdlog/spdlog.h>

#include "ploop/error.hpp"

namespace ploop {

RunResult run(const Scenario& scenario, std::optional<std::uint64_t> seed_override) {
    const auto seed = seed_override.value_or(scenario.seed);
    World world = build_world(scenario, seed);
    world.note("RunStarted", "", "", std::nullopt,
               Detail()
                   .add("scenario", scenario.name)
                   .add("seed", std::to_string(seed))
                   .add("horizon", scenario.horizon)
                   .add("repository", world.repository_node().str())
                   .add("feedback_loop", scenario.params.feedback_loop ? "true" : "false"));
    world.check_invariants();
    spdlog::info("running '{}' seed {} for {} ticks", scenario.name, seed, scenario.horizon);

    while (world.clock() < scenario.horizon) {
        world.tick();
        world.check_invariants();
    }
    world.note("RunFinished", "", "", std::nullopt, Detail().add("ticks", world.clock()));
    auto report = build_report(world.log());
    spdlog::info("finished '{}': {} events, {} knowledge records at the repository", scenario.name,
                 world.log().size(), report.knowledge_total);
    return RunResult{std::move(world), std::move(report)};
}

void write_run_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw Error(ErrorCode::ValidationError, "cannot write " + (dir / name).string());
        return out;
    };
    {
        auto out = open("events.jsonl");
        write_log(out, result.log());
    }
    open("report.json") << report_to_json(result.report);
    open("report.txt") << report_to_text(result.report);

    const auto repo_node = result.world.repository_node();
    const auto& repo = result.world.repository(repo_node);
    {
        auto out = open("repository.jsonl");
        repo.save_jsonl(out);
    }
    auto out = open("insights.txt");
    std::set<std::pair<std::string, int>> groups;
    for (const auto& r : repo.records()) groups.insert({product_family(r.product_id), r.generation});
    bool first = true;
    for (const auto& [family, generation] : groups) {
        if (!first) out << '\n';
        first = false;
        write_insight_summary(out, aggregate(repo, family, generation));
    }
}

}  // namespace ploop
