#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ploop/identity.hpp"
#include "support.hpp"

using namespace ploop;

namespace {

std::string random_token(std::mt19937& rng, std::size_t min_len, std::size_t max_len) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-._:/";
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s(len(rng), ' ');
    for (auto& c : s) c = alphabet[pick(rng)];
    return s;
}

}  // namespace

TEST_CASE("mint renders serial@uri") {
    CHECK(mint_product_id("0001", "urn:mfg:acme").render() == "0001@urn:mfg:acme");
    CHECK(mint_product_id("X-9", "https://acme.example/p").uri() == "https://acme.example/p");
}

TEST_CASE("mint rejects bad serials and uris") {
    CHECK_ERROR(mint_product_id("a@b", "urn:x"), ErrorCode::MalformedSerial);
    CHECK_ERROR(mint_product_id("", "urn:x"), ErrorCode::MalformedSerial);
    CHECK_ERROR(mint_product_id("1", ""), ErrorCode::MalformedURI);
    CHECK_ERROR(mint_product_id("1", "acme/parts/7"), ErrorCode::MalformedURI);
    CHECK_ERROR(mint_product_id("1", "urn:"), ErrorCode::MalformedURI);
    CHECK_ERROR(mint_product_id("1", ":nothing"), ErrorCode::MalformedURI);
    CHECK_ERROR(mint_product_id("1", "urn:has space"), ErrorCode::MalformedURI);
}

TEST_CASE("distinct pairs render to distinct strings") {
    std::mt19937 rng(11);
    std::set<std::pair<std::string, std::string>> pairs;
    while (pairs.size() < 10000)
        pairs.emplace(random_token(rng, 1, 6), "urn:" + random_token(rng, 1, 6));

    std::vector<std::string> rendered;
    for (const auto& [s, u] : pairs) {
        rendered.push_back(mint_product_id(s, u).render());
    }
    std::sort(rendered.begin(), rendered.end());
    std::size_t duplicates = 0;
    for (std::size_t i = 1; i < rendered.size(); ++i)
        if (rendered[i] == rendered[i - 1]) ++duplicates;
    CHECK(rendered.size() == 10000);
    CHECK(duplicates == 0);
}

TEST_CASE("parse is the inverse of render") {
    auto id = parse_product_id("0001@urn:mfg:acme");
    CHECK(id.serial() == "0001");
    CHECK(id.uri() == "urn:mfg:acme");

    CHECK_ERROR(parse_product_id("noseparator"), ErrorCode::Malformed);
    CHECK_ERROR(parse_product_id("a@b@urn:x"), ErrorCode::Malformed);
    CHECK_ERROR(parse_product_id("@urn:x"), ErrorCode::Malformed);
    CHECK_ERROR(parse_product_id("0001@"), ErrorCode::Malformed);
    CHECK_ERROR(parse_product_id("0001@relative/path"), ErrorCode::Malformed);

    std::mt19937 rng(5);
    for (int i = 0; i < 1000; ++i) {
        auto minted = mint_product_id(random_token(rng, 1, 12), "urn:" + random_token(rng, 1, 12));
        REQUIRE(parse_product_id(minted.render()) == minted);
    }
}

TEST_CASE("record_event appends in time order") {
    const Peid empty(mint_product_id("7", "urn:acme:phone"), CapabilitySet::all());
    auto one = record_event(empty, {"temp", 21.0, "C", 0});
    CHECK(one.event_log().size() == 1);
    CHECK(empty.event_log().empty());

    auto at5 = record_event(empty, {"temp", 1.0, "C", 5});
    CHECK_ERROR(record_event(at5, SensorEvent{"temp", 1.0, "C", 3}), ErrorCode::NonMonotonicTime);
    CHECK(at5.event_log().size() == 1);
    CHECK_ERROR(record_event(empty, SensorEvent{"temp", 1.0, "C", -1}), ErrorCode::NegativeTime);
    CHECK_NOTHROW(record_event(at5, SensorEvent{"temp", 2.0, "C", 5}));
}

TEST_CASE("100 non-decreasing events keep their order") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> step(0, 3);
    Peid peid(mint_product_id("7", "urn:acme:phone"), CapabilitySet::all());
    std::vector<SensorEvent> oracle;
    Tick t = 0;
    for (int i = 0; i < 100; ++i) {
        t += step(rng);
        SensorEvent e{"s" + std::to_string(i % 7), static_cast<double>(i), "u", t};
        const auto before = peid.event_log();
        peid = record_event(peid, e);
        oracle.push_back(e);
        REQUIRE(std::equal(before.begin(), before.end(), peid.event_log().begin()));
    }
    CHECK(peid.event_log() == oracle);
    CHECK(std::is_sorted(peid.event_log().begin(), peid.event_log().end(),
                         [](const auto& a, const auto& b) { return a.sim_time < b.sim_time; }));
}

TEST_CASE("PEID needs a unique id") {
    const auto id = mint_product_id("7", "urn:acme:phone");
    CHECK_ERROR(Peid(id, CapabilitySet{PeidCapability::Communication, PeidCapability::SelfStorage}),
                ErrorCode::MissingUniqueId);
    Peid p(id, CapabilitySet{PeidCapability::UniqueID});
    auto q = p.with_memory("feature.colour", "red");
    CHECK(p.memory().empty());
    CHECK(q.memory().at("feature.colour") == "red");
}

TEST_CASE("intelligence levels from the product definition") {
    using C = PeidCapability;
    CHECK(classify_intelligence({C::UniqueID, C::Communication, C::SelfStorage}) == IntelligenceLevel::Level1);
    CHECK(classify_intelligence(CapabilitySet::all()) == IntelligenceLevel::Level2);
    CHECK(classify_intelligence({C::Communication, C::SelfStorage}) == IntelligenceLevel::NotIntelligent);
}

TEST_CASE("classification over every capability subset") {
    auto has = [](unsigned mask, PeidCapability c) {
        return std::find(kAllCapabilities.begin(), kAllCapabilities.end(), c) != kAllCapabilities.end() &&
               ((mask >> static_cast<unsigned>(c)) & 1u);
    };
    auto oracle = [&](unsigned mask) {
        bool all = true;
        for (auto c : kAllCapabilities) all = all && has(mask, c);
        if (all) return IntelligenceLevel::Level2;
        if (has(mask, PeidCapability::UniqueID) && has(mask, PeidCapability::Communication) &&
            has(mask, PeidCapability::SelfStorage))
            return IntelligenceLevel::Level1;
        return IntelligenceLevel::NotIntelligent;
    };
    int level2 = 0;
    for (unsigned m = 0; m < 32; ++m) {
        const auto got = classify_intelligence(CapabilitySet::from_mask(m));
        CHECK(got == oracle(m));
        if (got == IntelligenceLevel::Level2) ++level2;
        // adding any capability never lowers the level
        for (auto c : kAllCapabilities) {
            auto bigger = CapabilitySet::from_mask(m);
            bigger.insert(c);
            CHECK(static_cast<int>(classify_intelligence(bigger)) >= static_cast<int>(got));
        }
    }
    CHECK(level2 == 1);
}

TEST_CASE("capability names round-trip") {
    for (auto c : kAllCapabilities) CHECK(capability_from_string(to_string(c)) == c);
    CHECK_FALSE(capability_from_string("Telepathy").has_value());
    CHECK(CapabilitySet::all().size() == 5);
    CHECK(CapabilitySet::all().includes(CapabilitySet{PeidCapability::DecisionMaking}));
}
