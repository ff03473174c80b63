#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ploop/knowledge.hpp"
#include "support.hpp"

using namespace ploop;

namespace {

const ProductId kPhone = mint_product_id("p1", "urn:acme");

KnowledgeRecord make_record(const ProductId& id, int gen, KnowledgeMode mode, std::string payload) {
    const bool tacit = mode == KnowledgeMode::Tacit;
    return KnowledgeRecord{.record_id = 0,
                           .product_id = id,
                           .generation = gen,
                           .activity = tacit ? Activity::IntelligentProduct : Activity::Customer,
                           .mode = mode,
                           .source = tacit ? KnowledgeSource::SelfSource : KnowledgeSource::Collective,
                           .payload = std::move(payload),
                           .created_at = 1};
}

}  // namespace

TEST_CASE("activity table, row by row") {
    // Rows as printed in the source table (misspellings included) and the
    // enumeration names they were normalised to.
    struct Row {
        const char* printed;
        Activity activity;
        bool tacit;
        bool explicit_;
    };
    const Row rows[] = {
        {"User insight", Activity::UserInsight, true, true},
        {"Market investigation", Activity::MarketInvestigation, false, true},
        {"Idea & Concept generation", Activity::IdeaConceptGeneration, true, true},
        {"Product requirements", Activity::ProductRequirements, false, true},
        {"Engennering & Design", Activity::EngineeringDesign, false, true},
        {"Merketing & Lunch", Activity::MarketingLaunch, true, true},
        {"Sales", Activity::Sales, true, true},
        {"Custommer", Activity::Customer, true, true},
        {"Product (Intelligent Product)", Activity::IntelligentProduct, true, false},
    };
    CHECK(std::size(rows) == kAllActivities.size());
    ModeSet uni;
    for (const auto& row : rows) {
        CAPTURE(row.printed);
        const auto got = classify_activity(row.activity);
        CHECK(got == ModeSet{row.tacit, row.explicit_});
        uni.tacit = uni.tacit || got.tacit;
        uni.explicit_ = uni.explicit_ || got.explicit_;
    }
    CHECK(uni == ModeSet{true, true});
    for (auto a : kAllActivities) CHECK(activity_from_string(to_string(a)) == a);
}

TEST_CASE("records must respect the activity's modes") {
    auto r = make_record(kPhone, 1, KnowledgeMode::Tacit, "x");
    r.activity = Activity::MarketInvestigation;
    CHECK_ERROR(r.validate(), ErrorCode::InvalidModeForActivity);
    KnowledgeRepository repo;
    CHECK_ERROR(repo.insert(r), ErrorCode::InvalidModeForActivity);
    CHECK(repo.size() == 0);
}

TEST_CASE("explicit ingestion") {
    KnowledgeRepository repo;
    const auto& r = repo.ingest_explicit(kPhone, 1, "battery swells", 40);
    CHECK(r.mode == KnowledgeMode::Explicit);
    CHECK(r.source == KnowledgeSource::Collective);
    CHECK(r.activity == Activity::Customer);
    CHECK(r.created_at == 40);
    CHECK(r.record_id != 0);
    CHECK_ERROR(repo.ingest_explicit(kPhone, 1, "", 41), ErrorCode::EmptyFeedback);

    std::mt19937 rng(1);
    std::uniform_int_distribution<int> n(1, 60);
    for (int round = 0; round < 20; ++round) {
        KnowledgeRepository fresh;
        const int total = n(rng);
        for (int i = 0; i < total; ++i) fresh.ingest_explicit(kPhone, 1, "note " + std::to_string(i), i);
        int explicit_count = 0;
        for (const auto& rec : fresh.records()) explicit_count += rec.mode == KnowledgeMode::Explicit;
        CHECK(explicit_count == total);
        CHECK(aggregate(fresh, "urn:acme", 1).explicit_count == total);
    }
}

TEST_CASE("tacit ingestion makes one record per category") {
    KnowledgeRepository repo;
    CHECK(repo.ingest_tacit(PeidLogSummary{}, kPhone, 1, 3).empty());

    PeidLogSummary failure_only;
    failure_only.failure = "overheat*3";
    auto one = repo.ingest_tacit(failure_only, kPhone, 1, 3);
    REQUIRE(one.size() == 1);
    CHECK(one[0].mode == KnowledgeMode::Tacit);
    CHECK(one[0].source == KnowledgeSource::SelfSource);
    CHECK(one[0].payload == "failure: overheat*3");

    const PeidLogSummary all{"hours*2", "humidity*1", "overheat*1"};
    auto three = repo.ingest_tacit(all, kPhone, 1, 4);
    REQUIRE(three.size() == 3);
    for (const auto& r : three) {
        CHECK(r.mode == KnowledgeMode::Tacit);
        CHECK(r.activity == Activity::IntelligentProduct);
    }
    CHECK(repo.size() == 4);
}

TEST_CASE("sensor summaries group by category") {
    CHECK(sensor_category("env.humidity") == "environment");
    CHECK(sensor_category("environment.uv") == "environment");
    CHECK(sensor_category("fault.overheat") == "failure");
    CHECK(sensor_category("failure.crack") == "failure");
    CHECK(sensor_category("screen_on") == "use");

    const std::vector<SensorEvent> events = {
        {"hours", 1, "h", 0}, {"fault.overheat", 1, "", 0}, {"hours", 2, "h", 1}, {"env.rh", 1, "", 1},
        {"cycles", 3, "", 2},
    };
    const auto s = summarize_events(events);
    CHECK(s.use == "hours*2 cycles*1");
    CHECK(s.environment == "env.rh*1");
    CHECK(s.failure == "fault.overheat*1");
    CHECK(summarize_events(std::vector<SensorEvent>{}).empty());
}

TEST_CASE("payload normalisation") {
    CHECK(normalize_payload("Battery SWELLS, battery 2x hot!") ==
          std::vector<std::string>{"2x", "battery", "hot", "swells"});
    CHECK(normalize_payload("42 and 7").size() == 1);
    CHECK(normalize_payload("").empty());
}

TEST_CASE("aggregate on small inputs") {
    KnowledgeRepository empty;
    const auto none = aggregate(empty, "urn:acme", 1);
    CHECK(none.record_count == 0);
    CHECK(none.top_issues.empty());

    KnowledgeRepository repo;
    for (int i = 0; i < 3; ++i) repo.insert(make_record(kPhone, 1, KnowledgeMode::Tacit, "failure: overheat"));
    repo.insert(make_record(kPhone, 1, KnowledgeMode::Explicit, "battery swells"));
    repo.insert(make_record(kPhone, 1, KnowledgeMode::Explicit, "screen dim battery"));
    const auto in = aggregate(repo, "urn:acme", 1);
    CHECK(in.record_count == 5);
    CHECK(in.tacit_count == 3);
    CHECK(in.explicit_count == 2);
    CHECK(in.top_issues == std::vector<std::string>{"failure", "overheat", "battery", "dim", "screen"});
}

TEST_CASE("aggregate agrees with a full rescan") {
    std::mt19937 rng(77);
    const std::vector<std::string> words = {"battery", "screen", "hot", "crack", "slow", "loud", "dim", "wet"};
    const std::vector<ProductId> products = {kPhone, mint_product_id("p2", "urn:acme"),
                                             mint_product_id("t1", "urn:other")};
    std::uniform_int_distribution<std::size_t> word(0, words.size() - 1), prod(0, products.size() - 1);
    std::uniform_int_distribution<int> gen(1, 2), len(1, 4);
    std::bernoulli_distribution tacit(0.5);

    KnowledgeRepository repo;
    for (int i = 0; i < 200; ++i) {
        std::string text;
        for (int k = len(rng); k > 0; --k) text += words[word(rng)] + " ";
        repo.insert(make_record(products[prod(rng)], gen(rng),
                                tacit(rng) ? KnowledgeMode::Tacit : KnowledgeMode::Explicit, text));
    }

    for (const std::string family : {"urn:acme", "urn:other", "urn:none"}) {
        for (int g = 1; g <= 2; ++g) {
            int count = 0, t = 0, e = 0;
            std::map<std::string, int> freq;
            for (const auto& r : repo.records()) {
                if (r.product_id.uri() != family || r.generation != g) continue;
                ++count;
                (r.mode == KnowledgeMode::Tacit ? t : e) += 1;
                std::set<std::string> seen;
                std::istringstream in(r.payload);
                for (std::string w; in >> w;) seen.insert(w);
                for (const auto& w : seen) ++freq[w];
            }
            std::vector<std::pair<int, std::string>> ranked;
            for (const auto& [w, n] : freq) ranked.emplace_back(-n, w);
            std::sort(ranked.begin(), ranked.end());
            std::vector<std::string> top;
            for (std::size_t i = 0; i < ranked.size() && i < kTopIssueLimit; ++i) top.push_back(ranked[i].second);

            const auto in = aggregate(repo, family, g);
            CHECK(in.record_count == count);
            CHECK(in.tacit_count == t);
            CHECK(in.explicit_count == e);
            CHECK(in.tacit_count + in.explicit_count == in.record_count);
            CHECK(in.top_issues == top);
            CHECK(repo.count(family, g) == count);
        }
    }
}

TEST_CASE("loop closure fires once per generation") {
    TriggerLedger ledger;
    DesignInsight insight;
    insight.family = "urn:acme";
    insight.generation = 1;
    insight.record_count = 4;
    CHECK_FALSE(check_loop_closure(insight, 5, ledger).has_value());
    insight.record_count = 5;
    auto t = check_loop_closure(insight, 5, ledger);
    REQUIRE(t.has_value());
    CHECK(t->generation == 2);
    CHECK(t->family == "urn:acme");

    int emitted = 1;
    for (int extra = 0; extra < 50; ++extra) {
        insight.record_count = 5 + extra;
        emitted += check_loop_closure(insight, 5, ledger).has_value();
    }
    CHECK(emitted == 1);
    insight.generation = 2;
    CHECK(check_loop_closure(insight, 5, ledger).has_value());
    CHECK_ERROR(check_loop_closure(insight, 0, ledger), ErrorCode::InvalidThreshold);
}

TEST_CASE("repository persistence round-trips") {
    KnowledgeRepository repo;
    repo.ingest_explicit(kPhone, 1, "needs \"quotes\" and\ttabs", 3);
    repo.ingest_tacit(PeidLogSummary{"hours*1", std::nullopt, "fault.x*2"}, kPhone, 2, 9);
    std::stringstream buf;
    repo.save_jsonl(buf);
    const auto back = KnowledgeRepository::load_jsonl(buf);
    CHECK(back.records() == repo.records());

    auto dup = repo.records().front();
    CHECK_ERROR(repo.insert(dup), ErrorCode::DuplicateId);

    std::istringstream bad("{\"record_id\": 1}\n");
    CHECK_ERROR(KnowledgeRepository::load_jsonl(bad), ErrorCode::ParseError);
}

TEST_CASE("insight summary is flat key=value") {
    DesignInsight in;
    in.family = "urn:acme";
    in.record_count = 2;
    in.tacit_count = 1;
    in.explicit_count = 1;
    in.top_issues = {"battery", "hot"};
    std::ostringstream out;
    write_insight_summary(out, in);
    CHECK(out.str() ==
          "family=urn:acme\ngeneration=1\nrecord_count=2\ntacit_count=1\nexplicit_count=1\ntop_issues=battery,hot\n");
}
