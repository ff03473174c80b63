#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ploop/agents.hpp"
#include "ploop/identity.hpp"
#include "ploop/lifecycle.hpp"
#include "ploop/node.hpp"
#include "ploop/routing.hpp"
#include "ploop/world.hpp"

namespace ploop {

inline constexpr int kScenarioFormat = 1;

struct NodeDecl {
    NodeId id;
    NodeKind kind = NodeKind::Manufacturer;
};

struct AgentDecl {
    AgentId id;
    AgentRole role = AgentRole::AgentProduct;
    NodeId home;
    std::vector<NodeId> itinerary;
    std::optional<ProductId> product;
    int generation = 1;
    CapabilitySet capabilities = CapabilitySet::all();  // PEID of the bound product
    LifecyclePhase phase = LifecyclePhase::EOL_Use;     // starting phase of the bound product
};

struct LatencyDecl {
    NodeId a;
    NodeId b;
    Tick ticks = 1;
};

struct PartitionDecl {
    NodeId a;
    NodeId b;
    Tick from = 1;
    Tick to = 1;
};

struct ScenarioParams {
    int trigger_threshold = 10;
    EolPolicy eol_policy;
    bool feedback_loop = true;
    Tick design_ticks = 20;
    Tick manufacture_ticks = 10;
    Tick default_latency = 1;
    Tick latency_jitter = 0;
    std::optional<NodeId> repository_node;
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 0;
    Tick horizon = 1;
    std::vector<NodeDecl> nodes;
    std::vector<AgentDecl> agents;
    std::vector<RouteRule> routing;
    std::vector<LatencyDecl> latencies;
    std::vector<PartitionDecl> partitions;
    std::vector<Stimulus> stimuli;
    ScenarioParams params;
};

/// Routing key a stimulus gets when the file does not name one.
std::string default_routing_key(const Payload& payload);

/// Parses and validates. Throws Error{ParseError} (with line and column
/// for syntax errors) or Error{ValidationError}.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Throws Error{ValidationError} describing the first problem found.
void validate_scenario(const Scenario& scenario);

/// Canonical JSON text: every field written explicitly, two-space indent,
/// trailing newline. save(parse(save(s))) == save(s).
std::string save_scenario(const Scenario& scenario);

/// Fresh world with every declaration of `scenario` applied at tick 0.
World build_world(const Scenario& scenario, std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace ploop
