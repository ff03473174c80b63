#include "ploop/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ploop/error.hpp"

namespace ploop {

std::string_view to_string(LifecyclePhase phase) {
    switch (phase) {
        case LifecyclePhase::BOL_Design: return "BOL_Design";
        case LifecyclePhase::BOL_Manufacture: return "BOL_Manufacture";
        case LifecyclePhase::MOL_Distribution: return "MOL_Distribution";
        case LifecyclePhase::EOL_Use: return "EOL_Use";
        case LifecyclePhase::EOL_Service: return "EOL_Service";
        case LifecyclePhase::EOL_Recovery: return "EOL_Recovery";
        case LifecyclePhase::EOL_Disposed: return "EOL_Disposed";
    }
    return "?";
}

std::string_view to_string(LifecycleEvent event) {
    switch (event) {
        case LifecycleEvent::DesignComplete: return "DesignComplete";
        case LifecycleEvent::Manufactured: return "Manufactured";
        case LifecycleEvent::Shipped: return "Shipped";
        case LifecycleEvent::Delivered: return "Delivered";
        case LifecycleEvent::FaultReported: return "FaultReported";
        case LifecycleEvent::Repaired: return "Repaired";
        case LifecycleEvent::RetirementRequested: return "RetirementRequested";
        case LifecycleEvent::DispositionExecuted: return "DispositionExecuted";
    }
    return "?";
}

std::optional<LifecyclePhase> phase_from_string(std::string_view name) {
    for (auto p : kAllPhases)
        if (to_string(p) == name) return p;
    return std::nullopt;
}

std::optional<LifecycleEvent> lifecycle_event_from_string(std::string_view name) {
    for (auto e : kAllLifecycleEvents)
        if (to_string(e) == name) return e;
    return std::nullopt;
}

int phase_rank(LifecyclePhase phase) {
    switch (phase) {
        case LifecyclePhase::BOL_Design: return 0;
        case LifecyclePhase::BOL_Manufacture: return 1;
        case LifecyclePhase::MOL_Distribution: return 2;
        case LifecyclePhase::EOL_Use: return 3;
        case LifecyclePhase::EOL_Service:
        case LifecyclePhase::EOL_Recovery:
        case LifecyclePhase::EOL_Disposed: return 4;
    }
    return -1;
}

LifecyclePhase initial_state() { return LifecyclePhase::BOL_Design; }

std::optional<LifecyclePhase> try_advance(LifecyclePhase phase, LifecycleEvent event) {
    using P = LifecyclePhase;
    using E = LifecycleEvent;
    switch (phase) {
        case P::BOL_Design:
            if (event == E::DesignComplete) return P::BOL_Manufacture;
            break;
        case P::BOL_Manufacture:
            if (event == E::Manufactured) return P::MOL_Distribution;
            break;
        case P::MOL_Distribution:
            if (event == E::Delivered) return P::EOL_Use;
            break;
        case P::EOL_Use:
            if (event == E::FaultReported) return P::EOL_Service;
            if (event == E::RetirementRequested) return P::EOL_Recovery;
            break;
        case P::EOL_Service:
            if (event == E::Repaired) return P::EOL_Use;
            break;
        case P::EOL_Recovery:
            if (event == E::DispositionExecuted) return P::EOL_Disposed;
            break;
        case P::EOL_Disposed:
            break;
    }
    return std::nullopt;
}

LifecyclePhase advance(LifecyclePhase phase, LifecycleEvent event) {
    if (auto next = try_advance(phase, event)) return *next;
    throw Error(ErrorCode::IllegalTransition,
                std::string(to_string(phase)) + " + " + std::string(to_string(event)));
}

std::string_view to_string(EolDecision decision) {
    switch (decision) {
        case EolDecision::ReuseRefurbish: return "ReuseRefurbish";
        case EolDecision::ReuseComponentsDisassembly: return "ReuseComponentsDisassembly";
        case EolDecision::ReclaimNoDisassembly: return "ReclaimNoDisassembly";
        case EolDecision::ReclaimWithDisassembly: return "ReclaimWithDisassembly";
        case EolDecision::DisposeNoIncineration: return "DisposeNoIncineration";
        case EolDecision::DisposeIncineration: return "DisposeIncineration";
    }
    return "?";
}

std::optional<EolDecision> eol_decision_from_string(std::string_view name) {
    for (auto d : kAllEolDecisions)
        if (to_string(d) == name) return d;
    return std::nullopt;
}

int eol_tier(EolDecision decision) {
    switch (decision) {
        case EolDecision::ReuseRefurbish: return 3;
        case EolDecision::ReuseComponentsDisassembly: return 2;
        case EolDecision::ReclaimNoDisassembly:
        case EolDecision::ReclaimWithDisassembly: return 1;
        case EolDecision::DisposeNoIncineration:
        case EolDecision::DisposeIncineration: return 0;
    }
    return -1;
}

void EolPolicy::validate() const {
    const bool ordered = 0.0 <= reclaim_threshold && reclaim_threshold <= component_threshold &&
                         component_threshold <= reuse_threshold && reuse_threshold <= 1.0;
    if (!ordered)
        throw Error(ErrorCode::InvalidPolicy, "thresholds must satisfy 0 <= reclaim <= component <= reuse <= 1");
}

EolDecision decide_eol(std::span<const ComponentCondition> conditions, const EolPolicy& policy) {
    if (conditions.empty()) throw Error(ErrorCode::EmptyConditions, "no component conditions");
    policy.validate();
    for (const auto& c : conditions)
        if (!(c.condition >= 0.0 && c.condition <= 1.0))
            throw Error(ErrorCode::InvalidCondition, "component '" + c.component + "' outside [0,1]");

    const double sum = std::accumulate(conditions.begin(), conditions.end(), 0.0,
                                       [](double acc, const ComponentCondition& c) { return acc + c.condition; });
    const double mean = sum / static_cast<double>(conditions.size());
    const double best =
        std::max_element(conditions.begin(), conditions.end(), [](const auto& a, const auto& b) {
            return a.condition < b.condition;
        })->condition;

    if (mean >= policy.reuse_threshold) return EolDecision::ReuseRefurbish;
    if (best >= policy.component_threshold) return EolDecision::ReuseComponentsDisassembly;
    if (mean >= policy.reclaim_threshold) {
        const bool spread = std::any_of(conditions.begin(), conditions.end(), [&](const ComponentCondition& c) {
            return c.condition >= policy.reclaim_threshold && std::abs(c.condition - mean) > kDisassemblySpread;
        });
        return spread ? EolDecision::ReclaimWithDisassembly : EolDecision::ReclaimNoDisassembly;
    }
    const bool hazardous =
        std::any_of(conditions.begin(), conditions.end(), [](const ComponentCondition& c) { return c.hazardous; });
    return hazardous ? EolDecision::DisposeIncineration : EolDecision::DisposeNoIncineration;
}

}  // namespace ploop
