#include "ploop/routing.hpp"

#include <algorithm>

#include "ploop/error.hpp"

namespace ploop {

bool pattern_matches(std::string_view pattern, std::string_view key) {
    if (!pattern.empty() && pattern.back() == '*') {
        const auto prefix = pattern.substr(0, pattern.size() - 1);
        return key.substr(0, prefix.size()) == prefix;
    }
    return pattern == key;
}

RoutingTable::RoutingTable(std::vector<RouteRule> rules) : rules_(std::move(rules)) {
    if (rules_.empty() || rules_.back().pattern != "*")
        throw Error(ErrorCode::MissingCatchAll, "routing table must end with a '*' rule");
}

const RouteRule& RoutingTable::match(std::string_view key) const {
    for (const auto& rule : rules_)
        if (pattern_matches(rule.pattern, key)) return rule;
    return rules_.back();
}

std::vector<AgentId> route(std::string_view routing_key, const RoutingTable& table,
                           std::span<const AgentEntry> directory) {
    const auto& rule = table.match(routing_key);
    std::vector<AgentId> out;
    for (const auto& selector : rule.recipients) {
        const std::string_view sel = selector;
        if (sel.starts_with("role:")) {
            const auto role = agent_role_from_string(sel.substr(5));
            if (!role) continue;
            for (const auto& entry : directory)
                if (entry.role == *role) out.push_back(entry.id);
        } else if (sel.starts_with("agent:")) {
            const auto name = sel.substr(6);
            for (const auto& entry : directory)
                if (entry.id.str() == name) out.push_back(entry.id);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ploop
