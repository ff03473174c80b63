#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ploop/agents.hpp"
#include "ploop/types.hpp"

namespace ploop {

/// One routing rule. `pattern` is an exact key, a prefix ending in '*',
/// or the lone catch-all "*". Recipients are `role:<AgentRole>` or
/// `agent:<id>` selectors.
struct RouteRule {
    std::string pattern;
    std::vector<std::string> recipients;

    friend bool operator==(const RouteRule&, const RouteRule&) = default;
};

bool pattern_matches(std::string_view pattern, std::string_view key);

/// Ordered first-match table. Construction requires the last rule to be
/// the catch-all; throws Error{MissingCatchAll}.
class RoutingTable {
public:
    explicit RoutingTable(std::vector<RouteRule> rules);

    const std::vector<RouteRule>& rules() const noexcept { return rules_; }
    const RouteRule& match(std::string_view key) const;

private:
    std::vector<RouteRule> rules_;
};

/// A live agent visible to the router.
struct AgentEntry {
    AgentId id;
    AgentRole role;
};

/// Expands the first matching rule against `directory`. Unknown selectors
/// contribute nothing; the result is ascending and duplicate-free.
std::vector<AgentId> route(std::string_view routing_key, const RoutingTable& table,
                           std::span<const AgentEntry> directory);

}  // namespace ploop
