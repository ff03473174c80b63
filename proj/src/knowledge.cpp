#include "ploop/knowledge.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "ploop/error.hpp"

namespace ploop {

std::string_view to_string(KnowledgeMode mode) { return mode == KnowledgeMode::Tacit ? "Tacit" : "Explicit"; }

std::string_view to_string(KnowledgeSource source) {
    return source == KnowledgeSource::SelfSource ? "SelfSource" : "Collective";
}

std::string_view to_string(Activity activity) {
    switch (activity) {
        case Activity::UserInsight: return "UserInsight";
        case Activity::MarketInvestigation: return "MarketInvestigation";
        case Activity::IdeaConceptGeneration: return "IdeaConceptGeneration";
        case Activity::ProductRequirements: return "ProductRequirements";
        case Activity::EngineeringDesign: return "EngineeringDesign";
        case Activity::MarketingLaunch: return "MarketingLaunch";
        case Activity::Sales: return "Sales";
        case Activity::Customer: return "Customer";
        case Activity::IntelligentProduct: return "IntelligentProduct";
    }
    return "?";
}

std::optional<KnowledgeMode> knowledge_mode_from_string(std::string_view name) {
    if (name == "Tacit") return KnowledgeMode::Tacit;
    if (name == "Explicit") return KnowledgeMode::Explicit;
    return std::nullopt;
}

std::optional<KnowledgeSource> knowledge_source_from_string(std::string_view name) {
    if (name == "SelfSource") return KnowledgeSource::SelfSource;
    if (name == "Collective") return KnowledgeSource::Collective;
    return std::nullopt;
}

std::optional<Activity> activity_from_string(std::string_view name) {
    for (auto a : kAllActivities)
        if (to_string(a) == name) return a;
    return std::nullopt;
}

ModeSet classify_activity(Activity activity) {
    switch (activity) {
        case Activity::MarketInvestigation:
        case Activity::ProductRequirements:
        case Activity::EngineeringDesign: return {.tacit = false, .explicit_ = true};
        case Activity::IntelligentProduct: return {.tacit = true, .explicit_ = false};
        case Activity::UserInsight:
        case Activity::IdeaConceptGeneration:
        case Activity::MarketingLaunch:
        case Activity::Sales:
        case Activity::Customer: return {.tacit = true, .explicit_ = true};
    }
    return {};
}

void KnowledgeRecord::validate() const {
    if (!classify_activity(activity).contains(mode))
        throw Error(ErrorCode::InvalidModeForActivity,
                    std::string(to_string(mode)) + " knowledge cannot come from " + std::string(to_string(activity)));
    if (generation < 1) throw Error(ErrorCode::ValidationError, "generation must be positive");
    if (created_at < 0) throw Error(ErrorCode::NegativeTime, "record created before tick 0");
}

std::string_view sensor_category(std::string_view sensor) {
    auto starts = [&](std::string_view p) { return sensor.substr(0, p.size()) == p; };
    if (starts("env.") || starts("environment.")) return "environment";
    if (starts("fault.") || starts("failure.")) return "failure";
    return "use";
}

PeidLogSummary summarize_events(std::span<const SensorEvent> events) {
    // (category, sensor) -> count, keeping first-seen order per category
    std::map<std::string_view, std::vector<std::pair<std::string, int>>> tallies;
    for (const auto& e : events) {
        auto& list = tallies[sensor_category(e.sensor)];
        auto it = std::find_if(list.begin(), list.end(), [&](const auto& p) { return p.first == e.sensor; });
        if (it == list.end())
            list.emplace_back(e.sensor, 1);
        else
            ++it->second;
    }
    auto render = [&](std::string_view category) -> std::optional<std::string> {
        auto it = tallies.find(category);
        if (it == tallies.end()) return std::nullopt;
        std::string out;
        for (const auto& [sensor, n] : it->second) {
            if (!out.empty()) out += ' ';
            out += sensor + "*" + std::to_string(n);
        }
        return out;
    };
    return {.use = render("use"), .environment = render("environment"), .failure = render("failure")};
}

std::vector<std::string> normalize_payload(std::string_view text) {
    std::set<std::string> words;
    std::string current;
    bool has_alpha = false;
    auto flush = [&] {
        if (!current.empty() && has_alpha) words.insert(current);
        current.clear();
        has_alpha = false;
    };
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
            has_alpha = has_alpha || std::isalpha(c);
        } else {
            flush();
        }
    }
    flush();
    return {words.begin(), words.end()};
}

const KnowledgeRecord& KnowledgeRepository::insert(KnowledgeRecord record) {
    record.validate();
    if (record.record_id == 0) {
        while (ids_.contains(next_id_)) ++next_id_;
        record.record_id = next_id_++;
    } else if (ids_.contains(record.record_id)) {
        throw Error(ErrorCode::DuplicateId, "record " + std::to_string(record.record_id) + " already stored");
    }
    ids_.insert(record.record_id);
    ++counts_[{product_family(record.product_id), record.generation}];
    records_.push_back(std::move(record));
    return records_.back();
}

const KnowledgeRecord& KnowledgeRepository::ingest_explicit(const ProductId& product_id, int generation,
                                                            std::string_view feedback_text, Tick tick) {
    if (feedback_text.empty()) throw Error(ErrorCode::EmptyFeedback, "customer feedback text is empty");
    return insert(KnowledgeRecord{.record_id = 0,
                                  .product_id = product_id,
                                  .generation = generation,
                                  .activity = Activity::Customer,
                                  .mode = KnowledgeMode::Explicit,
                                  .source = KnowledgeSource::Collective,
                                  .payload = std::string(feedback_text),
                                  .created_at = tick});
}

std::vector<KnowledgeRecord> KnowledgeRepository::ingest_tacit(const PeidLogSummary& summary,
                                                               const ProductId& product_id, int generation,
                                                               Tick tick) {
    std::vector<KnowledgeRecord> out;
    auto add = [&](const std::optional<std::string>& text, std::string_view category) {
        if (!text) return;
        out.push_back(insert(KnowledgeRecord{.record_id = 0,
                                             .product_id = product_id,
                                             .generation = generation,
                                             .activity = Activity::IntelligentProduct,
                                             .mode = KnowledgeMode::Tacit,
                                             .source = KnowledgeSource::SelfSource,
                                             .payload = std::string(category) + ": " + *text,
                                             .created_at = tick}));
    };
    add(summary.use, "use");
    add(summary.environment, "environment");
    add(summary.failure, "failure");
    return out;
}

int KnowledgeRepository::count(const std::string& family, int generation) const {
    auto it = counts_.find({family, generation});
    return it == counts_.end() ? 0 : it->second;
}

namespace {

nlohmann::ordered_json record_to_json(const KnowledgeRecord& r) {
    nlohmann::ordered_json j;
    j["record_id"] = r.record_id;
    j["product_id"] = r.product_id.render();
    j["generation"] = r.generation;
    j["activity"] = to_string(r.activity);
    j["mode"] = to_string(r.mode);
    j["source"] = to_string(r.source);
    j["payload"] = r.payload;
    j["created_at"] = r.created_at;
    return j;
}

template <class T>
T require(const std::optional<T>& v, const std::string& what) {
    if (!v) throw Error(ErrorCode::ParseError, "unknown " + what);
    return *v;
}

}  // namespace

void KnowledgeRepository::save_jsonl(std::ostream& out) const {
    for (const auto& r : records_) out << record_to_json(r).dump() << '\n';
}

KnowledgeRepository KnowledgeRepository::load_jsonl(std::istream& in) {
    KnowledgeRepository repo;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            repo.insert(KnowledgeRecord{
                .record_id = j.at("record_id").get<std::uint64_t>(),
                .product_id = parse_product_id(j.at("product_id").get<std::string>()),
                .generation = j.at("generation").get<int>(),
                .activity = require(activity_from_string(j.at("activity").get<std::string>()), "activity"),
                .mode = require(knowledge_mode_from_string(j.at("mode").get<std::string>()), "mode"),
                .source = require(knowledge_source_from_string(j.at("source").get<std::string>()), "source"),
                .payload = j.at("payload").get<std::string>(),
                .created_at = j.at("created_at").get<Tick>()});
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return repo;
}

DesignInsight aggregate(const KnowledgeRepository& repo, const std::string& family, int generation,
                        std::span<const KnowledgeRecord> pending) {
    DesignInsight insight;
    insight.family = family;
    insight.generation = generation;
    std::map<std::string, int> frequency;
    auto visit = [&](const KnowledgeRecord& r) {
        if (r.generation != generation || product_family(r.product_id) != family) return;
        ++insight.record_count;
        if (r.mode == KnowledgeMode::Tacit)
            ++insight.tacit_count;
        else
            ++insight.explicit_count;
        for (auto& word : normalize_payload(r.payload)) ++frequency[word];
    };
    for (const auto& r : repo.records()) visit(r);
    for (const auto& r : pending) visit(r);

    std::vector<std::pair<std::string, int>> ranked(frequency.begin(), frequency.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < ranked.size() && i < kTopIssueLimit; ++i)
        insight.top_issues.push_back(ranked[i].first);
    return insight;
}

void write_insight_summary(std::ostream& out, const DesignInsight& insight) {
    out << "family=" << insight.family << '\n'
        << "generation=" << insight.generation << '\n'
        << "record_count=" << insight.record_count << '\n'
        << "tacit_count=" << insight.tacit_count << '\n'
        << "explicit_count=" << insight.explicit_count << '\n'
        << "top_issues=";
    for (std::size_t i = 0; i < insight.top_issues.size(); ++i)
        out << (i ? "," : "") << insight.top_issues[i];
    out << '\n';
}

std::optional<DesignTrigger> check_loop_closure(const DesignInsight& insight, int threshold,
                                                TriggerLedger& ledger) {
    if (threshold < 1) throw Error(ErrorCode::InvalidThreshold, "trigger threshold must be >= 1");
    if (insight.record_count < threshold) return std::nullopt;
    if (!ledger.issued_.insert({insight.family, insight.generation}).second) return std::nullopt;
    return DesignTrigger{.family = insight.family,
                         .generation = insight.generation + 1,
                         .record_count = insight.record_count,
                         .top_issues = insight.top_issues};
}

}  // namespace ploop
