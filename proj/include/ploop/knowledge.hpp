#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ploop/identity.hpp"
#include "ploop/types.hpp"

namespace ploop {

enum class KnowledgeMode { Tacit, Explicit };
enum class KnowledgeSource { SelfSource, Collective };

enum class Activity {
    UserInsight,
    MarketInvestigation,
    IdeaConceptGeneration,
    ProductRequirements,
    EngineeringDesign,
    MarketingLaunch,
    Sales,
    Customer,
    IntelligentProduct,
};

inline constexpr std::array<Activity, 9> kAllActivities = {
    Activity::UserInsight,        Activity::MarketInvestigation, Activity::IdeaConceptGeneration,
    Activity::ProductRequirements, Activity::EngineeringDesign,  Activity::MarketingLaunch,
    Activity::Sales,              Activity::Customer,            Activity::IntelligentProduct,
};

std::string_view to_string(KnowledgeMode mode);
std::string_view to_string(KnowledgeSource source);
std::string_view to_string(Activity activity);
std::optional<KnowledgeMode> knowledge_mode_from_string(std::string_view name);
std::optional<KnowledgeSource> knowledge_source_from_string(std::string_view name);
std::optional<Activity> activity_from_string(std::string_view name);

struct ModeSet {
    bool tacit = false;
    bool explicit_ = false;

    bool contains(KnowledgeMode m) const { return m == KnowledgeMode::Tacit ? tacit : explicit_; }
    friend bool operator==(const ModeSet&, const ModeSet&) = default;
};

/// Which knowledge modes each innovation activity produces.
ModeSet classify_activity(Activity activity);

/// Products sharing an information source URI form one family.
inline const std::string& product_family(const ProductId& id) { return id.uri(); }

struct KnowledgeRecord {
    std::uint64_t record_id = 0;  // 0 until a repository (or the world) assigns one
    ProductId product_id;
    int generation = 1;
    Activity activity = Activity::IntelligentProduct;
    KnowledgeMode mode = KnowledgeMode::Tacit;
    KnowledgeSource source = KnowledgeSource::SelfSource;
    std::string payload;
    Tick created_at = 0;

    /// Throws Error{InvalidModeForActivity} or Error{ValidationError}.
    void validate() const;

    friend bool operator==(const KnowledgeRecord&, const KnowledgeRecord&) = default;
};

/// Automatically collected usage data grouped by category. Each present
/// category becomes one tacit record.
struct PeidLogSummary {
    std::optional<std::string> use;
    std::optional<std::string> environment;
    std::optional<std::string> failure;

    bool empty() const { return !use && !environment && !failure; }
};

/// Category of a sensor name: `env.*`/`environment.*` is environment,
/// `fault.*`/`failure.*` is failure, anything else is use.
std::string_view sensor_category(std::string_view sensor);

/// Summarises events into "name×count" tokens per category, in order of
/// first appearance.
PeidLogSummary summarize_events(std::span<const SensorEvent> events);

struct DesignInsight {
    std::string family;
    int generation = 1;
    int record_count = 0;
    int tacit_count = 0;
    int explicit_count = 0;
    std::vector<std::string> top_issues;

    friend bool operator==(const DesignInsight&, const DesignInsight&) = default;
};

/// Request to start designing the next generation of a product family.
struct DesignTrigger {
    std::string family;
    int generation = 2;  // the generation to be designed
    int record_count = 0;
    std::vector<std::string> top_issues;

    friend bool operator==(const DesignTrigger&, const DesignTrigger&) = default;
};

/// Lowercase alphanumeric words of `text`, deduplicated and sorted.
std::vector<std::string> normalize_payload(std::string_view text);

inline constexpr std::size_t kTopIssueLimit = 5;

class KnowledgeRepository {
public:
    /// Validates, assigns a record_id when the record has none, and appends.
    const KnowledgeRecord& insert(KnowledgeRecord record);

    /// Throws Error{EmptyFeedback}.
    const KnowledgeRecord& ingest_explicit(const ProductId& product_id, int generation,
                                           std::string_view feedback_text, Tick tick);

    std::vector<KnowledgeRecord> ingest_tacit(const PeidLogSummary& summary, const ProductId& product_id,
                                              int generation, Tick tick);

    const std::vector<KnowledgeRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    int count(const std::string& family, int generation) const;
    bool contains(std::uint64_t record_id) const { return ids_.contains(record_id); }

    /// Append-only JSON-lines persistence, one record per line.
    void save_jsonl(std::ostream& out) const;
    static KnowledgeRepository load_jsonl(std::istream& in);

private:
    std::vector<KnowledgeRecord> records_;
    std::map<std::pair<std::string, int>, int> counts_;
    std::set<std::uint64_t> ids_;
    std::uint64_t next_id_ = 1;
};

/// Counts and ranked issues for one family generation. `pending` records
/// are counted as if already stored.
DesignInsight aggregate(const KnowledgeRepository& repo, const std::string& family, int generation,
                        std::span<const KnowledgeRecord> pending = {});

/// Flat `key=value` lines describing an insight.
void write_insight_summary(std::ostream& out, const DesignInsight& insight);

/// Remembers which (family, generation) pairs already produced a trigger.
class TriggerLedger {
public:
    bool issued(const std::string& family, int generation) const {
        return issued_.contains({family, generation});
    }
    std::size_t size() const { return issued_.size(); }

    friend std::optional<DesignTrigger> check_loop_closure(const DesignInsight& insight, int threshold,
                                                           TriggerLedger& ledger);
    friend bool operator==(const TriggerLedger&, const TriggerLedger&) = default;

private:
    std::set<std::pair<std::string, int>> issued_;
};

/// Returns a trigger for generation+1 the first time record_count reaches
/// `threshold`. Throws Error{InvalidThreshold} when threshold < 1.
std::optional<DesignTrigger> check_loop_closure(const DesignInsight& insight, int threshold,
                                                TriggerLedger& ledger);

}  // namespace ploop
