#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ploop {

/// Product phase. Use is folded into the end of life, so MOL only covers
/// distribution.
enum class LifecyclePhase {
    BOL_Design,
    BOL_Manufacture,
    MOL_Distribution,
    EOL_Use,
    EOL_Service,
    EOL_Recovery,
    EOL_Disposed,
};

enum class LifecycleEvent {
    DesignComplete,
    Manufactured,
    Shipped,
    Delivered,
    FaultReported,
    Repaired,
    RetirementRequested,
    DispositionExecuted,
};

inline constexpr std::array<LifecyclePhase, 7> kAllPhases = {
    LifecyclePhase::BOL_Design,   LifecyclePhase::BOL_Manufacture, LifecyclePhase::MOL_Distribution,
    LifecyclePhase::EOL_Use,      LifecyclePhase::EOL_Service,     LifecyclePhase::EOL_Recovery,
    LifecyclePhase::EOL_Disposed,
};

inline constexpr std::array<LifecycleEvent, 8> kAllLifecycleEvents = {
    LifecycleEvent::DesignComplete, LifecycleEvent::Manufactured,        LifecycleEvent::Shipped,
    LifecycleEvent::Delivered,      LifecycleEvent::FaultReported,       LifecycleEvent::Repaired,
    LifecycleEvent::RetirementRequested, LifecycleEvent::DispositionExecuted,
};

std::string_view to_string(LifecyclePhase phase);
std::string_view to_string(LifecycleEvent event);
std::optional<LifecyclePhase> phase_from_string(std::string_view name);
std::optional<LifecycleEvent> lifecycle_event_from_string(std::string_view name);

/// Reporting rank: Design < Manufacture < Distribution < Use < {Service, Recovery, Disposed}.
int phase_rank(LifecyclePhase phase);

LifecyclePhase initial_state();

/// The successor phase, or nullopt when the pair is not in the transition table.
std::optional<LifecyclePhase> try_advance(LifecyclePhase phase, LifecycleEvent event);

/// Throws Error{IllegalTransition}.
LifecyclePhase advance(LifecyclePhase phase, LifecycleEvent event);

struct ComponentCondition {
    std::string component;
    double condition = 0.0;  // 0 = scrap, 1 = as new
    bool hazardous = false;

    friend bool operator==(const ComponentCondition&, const ComponentCondition&) = default;
};

enum class EolDecision {
    ReuseRefurbish,
    ReuseComponentsDisassembly,
    ReclaimNoDisassembly,
    ReclaimWithDisassembly,
    DisposeNoIncineration,
    DisposeIncineration,
};

inline constexpr std::array<EolDecision, 6> kAllEolDecisions = {
    EolDecision::ReuseRefurbish,       EolDecision::ReuseComponentsDisassembly,
    EolDecision::ReclaimNoDisassembly, EolDecision::ReclaimWithDisassembly,
    EolDecision::DisposeNoIncineration, EolDecision::DisposeIncineration,
};

std::string_view to_string(EolDecision decision);
std::optional<EolDecision> eol_decision_from_string(std::string_view name);

/// Preference tier: 3 reuse product, 2 reuse components, 1 reclaim, 0 dispose.
int eol_tier(EolDecision decision);

/// Thresholds for the disposition ladder; reclaim <= component <= reuse.
struct EolPolicy {
    double reuse_threshold = 0.8;
    double component_threshold = 0.6;
    double reclaim_threshold = 0.3;

    /// Throws Error{InvalidPolicy}.
    void validate() const;

    friend bool operator==(const EolPolicy&, const EolPolicy&) = default;
};

/// Spread (distance from the mean condition) above which reclamation
/// separates components first.
inline constexpr double kDisassemblySpread = 0.2;

/// Threshold ladder over component condition scores.
/// Throws Error{EmptyConditions}, Error{InvalidCondition}, Error{InvalidPolicy}.
EolDecision decide_eol(std::span<const ComponentCondition> conditions, const EolPolicy& policy);

}  // namespace ploop
