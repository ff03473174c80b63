// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "ploop/error.hpp"
#include "ploop/harness.hpp"

using namespace ploop;

namespace {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(PLOOP_FIXTURE_DIR) / name; }

const char* kFixtures[] = {"closed_loop.scn", "closed_loop_baseline.scn", "minimal.scn", "partition.scn",
                           "eol_showcase.scn"};

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------

Outcome activity_table() {
    struct Row {
        Activity a;
        ModeSet modes;
    };
    // Transcribed from the knowledge-type table of the source paper.
    const Row rows[] = {
        {Activity::UserInsight, {true, true}},          {Activity::MarketInvestigation, {false, true}},
        {Activity::IdeaConceptGeneration, {true, true}}, {Activity::ProductRequirements, {false, true}},
        {Activity::EngineeringDesign, {false, true}},   {Activity::MarketingLaunch, {true, true}},
        {Activity::Sales, {true, true}},                {Activity::Customer, {true, true}},
        {Activity::IntelligentProduct, {true, false}},
    };
    int mismatches = 0;
    for (const auto& r : rows) mismatches += !(classify_activity(r.a) == r.modes);
    return {mismatches == 0 && std::size(rows) == kAllActivities.size(),
            "9 rows, " + std::to_string(mismatches) + " mismatches"};
}

Outcome intelligence_subsets() {
    int mismatches = 0;
    for (unsigned m = 0; m < 32; ++m) {
        const bool first_three = (m & 0b00111u) == 0b00111u;
        const auto expected = m == 0b11111u ? IntelligenceLevel::Level2
                              : first_three ? IntelligenceLevel::Level1
                                            : IntelligenceLevel::NotIntelligent;
        mismatches += classify_intelligence(CapabilitySet::from_mask(m)) != expected;
    }
    return {mismatches == 0, "32 subsets, " + std::to_string(mismatches) + " mismatches"};
}

Outcome migration_conservation() {
    std::mt19937_64 rng(424242);
    WorldConfig cfg;
    cfg.latency_jitter = 2;
    World w(5, cfg);
    std::vector<NodeId> nodes;
    for (int i = 0; i < 8; ++i) nodes.push_back(w.register_node(kAllNodeKinds[static_cast<std::size_t>(i % 5)]));
    std::uniform_int_distribution<std::size_t> node(0, nodes.size() - 1);
    std::uniform_int_distribution<int> op(0, 99);

    const int operations = 20000;
    int violations = 0, next = 0;
    for (int step = 0; step < operations; ++step) {
        const int o = op(rng);
        try {
            if (o < 12) {
                std::vector<NodeId> itin;
                if (o < 4) itin = {nodes[node(rng)], nodes[node(rng)], nodes[node(rng)]};
                w.spawn_agent(make_agent(AgentId("a" + std::to_string(next++)), AgentRole::AgentImpact,
                                         nodes[node(rng)], std::nullopt, 1, itin));
            } else if (o < 55 && !w.agents().empty()) {
                auto it = w.agents().begin();
                std::advance(it, static_cast<long>(rng() % w.agents().size()));
                if (o < 45)
                    w.migrate(it->first, nodes[node(rng)]);
                else
                    w.terminate_agent(it->first);
            } else if (o < 65) {
                w.partition(nodes[node(rng)], nodes[node(rng)]);
            } else if (o < 75) {
                w.heal(nodes[node(rng)], nodes[node(rng)]);
            } else {
                w.tick();
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Partitioned && e.code() != ErrorCode::AgentInFlight) ++violations;
        }
        std::map<AgentId, int> census;
        for (const auto& [n, kind] : w.directory().entries()) {
            (void)kind;
            for (const auto& id : w.residents(n)) ++census[id];
        }
        for (const auto& [id, t] : w.in_flight()) {
            (void)t;
            ++census[id];
        }
        bool ok = census.size() == w.agents().size() && w.agents().size() == w.spawned_count() - w.terminated_count();
        for (const auto& [id, n] : census) ok = ok && n == 1 && w.agents().contains(id);
        violations += !ok;
    }
    return {violations == 0, std::to_string(operations) + " operations, " + std::to_string(violations) + " violations"};
}

Outcome determinism() {
    int differing = 0, runs = 0;
    for (const char* name : kFixtures) {
        const auto sc = load_scenario(fixture(name));
        std::ostringstream a, b;
        write_log(a, run(sc).log());
        write_log(b, run(sc).log());
        differing += a.str() != b.str();
        ++runs;
    }
    return {differing == 0, std::to_string(runs) + " fixtures run twice, " + std::to_string(differing) + " differ"};
}

Outcome routing_equivalence() {
    std::mt19937 rng(2718);
    const std::vector<std::string> segs = {"sensor", "env", "fault", "customer", "knowledge", "x", ""};
    std::uniform_int_distribution<std::size_t> seg(0, segs.size() - 1);
    std::uniform_int_distribution<int> depth(1, 3), nrules(0, 19), nsel(0, 3), nagents(0, 8), pick(0, 4), name(0, 9);
    auto key = [&] {
        std::string k = segs[seg(rng)];
        for (int d = depth(rng) - 1; d > 0; --d) k += "." + segs[seg(rng)];
        return k;
    };
    int cases = 0, mismatches = 0;
    while (cases < 12000) {
        std::vector<RouteRule> rules;
        for (int i = nrules(rng); i > 0; --i) {
            RouteRule r{key(), {}};
            if (pick(rng) < 2) r.pattern += "*";
            for (int s = nsel(rng); s > 0; --s)
                r.recipients.push_back(pick(rng) < 3 ? "role:" + std::string(to_string(kAllAgentRoles[pick(rng)]))
                                                     : "agent:g" + std::to_string(name(rng)));
            rules.push_back(r);
        }
        rules.push_back({"*", {"role:AgentKnowledge"}});
        const RoutingTable table(rules);
        std::map<AgentId, AgentRole> pool;
        for (int i = nagents(rng); i > 0; --i) pool[AgentId("g" + std::to_string(name(rng)))] = kAllAgentRoles[pick(rng)];
        std::vector<AgentEntry> agents;
        for (const auto& [id, role] : pool) agents.push_back({id, role});

        for (int k = 0; k < 24; ++k, ++cases) {
            const auto probe = key();
            const RouteRule* hit = nullptr;
            for (const auto& r : rules) {
                const bool wildcard = r.pattern.back() == '*';
                const auto stem = wildcard ? r.pattern.substr(0, r.pattern.size() - 1) : r.pattern;
                if (wildcard ? probe.rfind(stem, 0) == 0 : probe == stem) {
                    hit = &r;
                    break;
                }
            }
            std::set<AgentId> expected;
            for (const auto& sel : hit->recipients)
                for (const auto& a : agents)
                    if (sel == "role:" + std::string(to_string(a.role)) || sel == "agent:" + a.id.str())
                        expected.insert(a.id);
            mismatches += route(probe, table, agents) != std::vector<AgentId>(expected.begin(), expected.end());
        }
    }
    return {mismatches == 0, std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
}

EolDecision ladder(const std::vector<ComponentCondition>& cs, const EolPolicy& p) {
    double sum = 0, best = 0;
    bool haz = false;
    for (const auto& c : cs) {
        sum += c.condition;
        best = std::max(best, c.condition);
        haz = haz || c.hazardous;
    }
    const double mean = sum / static_cast<double>(cs.size());
    if (mean >= p.reuse_threshold) return EolDecision::ReuseRefurbish;
    if (best >= p.component_threshold) return EolDecision::ReuseComponentsDisassembly;
    if (mean >= p.reclaim_threshold) {
        const bool spread = std::any_of(cs.begin(), cs.end(), [&](const auto& c) {
            return c.condition >= p.reclaim_threshold && std::abs(c.condition - mean) > 0.2;
        });
        return spread ? EolDecision::ReclaimWithDisassembly : EolDecision::ReclaimNoDisassembly;
    }
    return haz ? EolDecision::DisposeIncineration : EolDecision::DisposeNoIncineration;
}

Outcome eol_ladder() {
    std::mt19937 rng(1001);
    std::uniform_int_distribution<int> n(1, 6);
    std::uniform_real_distribution<double> c(0.0, 1.0);
    std::bernoulli_distribution h(0.3);
    const EolPolicy policy;
    const int vectors = 2000;
    int mismatches = 0;
    for (int i = 0; i < vectors; ++i) {
        std::vector<ComponentCondition> cs(static_cast<std::size_t>(n(rng)));
        for (auto& x : cs) x = {"c", c(rng), h(rng)};
        mismatches += decide_eol(cs, policy) != ladder(cs, policy);
    }

    const auto result = run(load_scenario(fixture("eol_showcase.scn")));
    std::set<std::string> produced;
    for (const auto& e : result.log())
        if (e.kind == "EOLDecision") produced.insert(parse_detail(e.detail).at("decision"));
    int missing = 0;
    for (auto d : kAllEolDecisions) missing += !produced.contains(std::string(to_string(d)));
    return {mismatches == 0 && missing == 0, std::to_string(vectors) + " vectors, " + std::to_string(mismatches) +
                                                 " mismatches; fixture covers " + std::to_string(6 - missing) +
                                                 "/6 decisions"};
}

Outcome closed_loop_latency() {
    const auto sc = load_scenario(fixture("closed_loop.scn"));
    const auto result = run(sc);
    // Hand trace: last of five feedbacks at tick 14, two ticks home->factory.
    const Tick expected_trigger = 14 + 2;
    std::set<std::string> tacit_anywhere, at_repo;
    std::vector<Tick> triggers;
    for (const auto& e : result.log()) {
        const auto d = parse_detail(e.detail);
        if (e.kind == "KnowledgeStored") {
            if (d.at("mode") == "Tacit") tacit_anywhere.insert(d.at("record"));
            if (e.node == "factory") at_repo.insert(d.at("record"));
        }
        if (e.kind == "DesignTrigger") triggers.push_back(e.tick);
    }
    int lost = 0;
    for (const auto& id : tacit_anywhere) lost += !at_repo.contains(id);
    const bool ok = lost == 0 && !tacit_anywhere.empty() && triggers == std::vector<Tick>{expected_trigger};
    return {ok, std::to_string(tacit_anywhere.size()) + " EOL records, " + std::to_string(lost) +
                    " missing at manufacturer; trigger at " +
                    (triggers.empty() ? std::string("-") : std::to_string(triggers.front())) + " (trace " +
                    std::to_string(expected_trigger) + ")"};
}

Outcome launch_reduction() {
    const auto fb = run(load_scenario(fixture("closed_loop.scn")));
    const auto base = run(load_scenario(fixture("closed_loop_baseline.scn")));
    try {
        const auto s = compare(fb.report, base.report);
        return {s.delta > 0, "feedback " + std::to_string(s.feedback_launch) + ", baseline " +
                                 std::to_string(s.baseline_launch) + ", delta " + std::to_string(s.delta)};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

Outcome partition_safety() {
    const auto sc = load_scenario(fixture("partition.scn"));
    const auto& p = sc.partitions.at(0);
    const auto result = run(sc);
    auto severed = [&](const std::string& x, const std::string& y) {
        return (x == p.a.str() && y == p.b.str()) || (x == p.b.str() && y == p.a.str());
    };
    int crossings = 0, stopped = 0, crossings_outside = 0;
    for (const auto& e : result.log()) {
        const auto d = parse_detail(e.detail);
        std::string from, to;
        if (e.kind == "MessageSent" || e.kind == "MigrationCompleted" || e.kind == "MigrationStarted") {
            from = d.count("from") ? d.at("from") : "";
            to = d.count("to") ? d.at("to") : "";
        } else if (e.kind == "MessageDelivered") {
            from = d.at("from");
            to = e.node;
        } else if (e.kind == "MessageDropped" || e.kind == "MessageBlocked" || e.kind == "MigrationRefused") {
            stopped += e.tick >= p.from && e.tick <= p.to;
            continue;
        } else {
            continue;
        }
        if (!severed(from, to)) continue;
        if (e.tick >= p.from && e.tick <= p.to)
            ++crossings;
        else
            ++crossings_outside;
    }
    // The audit only means something if traffic tried to cross.
    const bool ok = crossings == 0 && stopped > 0 && crossings_outside > 0;
    return {ok, "window [" + std::to_string(p.from) + "," + std::to_string(p.to) + "], " + std::to_string(crossings) +
                    " crossings inside, " + std::to_string(stopped) + " stopped, " +
                    std::to_string(crossings_outside) + " outside"};
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::off);
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> body;
    };
    const Criterion criteria[] = {
        {1, "activity table fidelity", 1, activity_table},
        {2, "intelligence classification", 1, intelligence_subsets},
        {3, "migration conservation", 30, migration_conservation},
        {4, "determinism", 10, determinism},
        {5, "routing oracle equivalence", 10, routing_equivalence},
        {6, "EOL ladder", 5, eol_ladder},
        {7, "closed-loop latency", 5, closed_loop_latency},
        {8, "launch-phase reduction", 10, launch_reduction},
        {9, "partition safety", 10, partition_safety},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = out.pass && secs < c.budget_s;
        failed += !pass;
        std::printf("%s %d %s: %s [%.3f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                    secs, c.budget_s);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
