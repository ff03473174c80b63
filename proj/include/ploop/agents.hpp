#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ploop/identity.hpp"
#include "ploop/knowledge.hpp"
#include "ploop/lifecycle.hpp"
#include "ploop/message.hpp"
#include "ploop/node.hpp"
#include "ploop/types.hpp"

namespace ploop {

enum class AgentRole { AgentProduct, AgentService, AgentCustomer, AgentImpact, AgentKnowledge };

inline constexpr std::array<AgentRole, 5> kAllAgentRoles = {
    AgentRole::AgentProduct, AgentRole::AgentService, AgentRole::AgentCustomer, AgentRole::AgentImpact,
    AgentRole::AgentKnowledge,
};

std::string_view to_string(AgentRole role);
std::optional<AgentRole> agent_role_from_string(std::string_view name);

/// Migratable agent state. Behaviour is role-resident code, so moving an
/// agent means moving this value.
struct AgentState {
    AgentId agent_id;
    AgentRole role = AgentRole::AgentProduct;
    std::optional<ProductId> product_id;  // required for AgentProduct
    int generation = 1;
    NodeId location;
    std::map<std::string, std::string> memory;
    std::vector<NodeId> itinerary;
    TriggerLedger triggers;  // AgentKnowledge only

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Builds a validated agent. Throws Error{ValidationError} when an
/// AgentProduct has no product binding.
AgentState make_agent(AgentId id, AgentRole role, NodeId home, std::optional<ProductId> product = std::nullopt,
                      int generation = 1, std::vector<NodeId> itinerary = {});

struct SendMessage {
    NodeId target;
    std::string routing_key;
    Payload payload;
};

struct EmitKnowledge {
    KnowledgeRecord record;
};

struct RequestMigration {
    NodeId target;
    friend bool operator==(const RequestMigration&, const RequestMigration&) = default;
};

struct UpdateMemory {
    std::string key;
    std::string value;
    friend bool operator==(const UpdateMemory&, const UpdateMemory&) = default;
};

struct NoEffect {
    friend bool operator==(const NoEffect&, const NoEffect&) = default;
};

/// Requested side effect. Nothing changes until the runtime applies it.
using Effect = std::variant<SendMessage, EmitKnowledge, RequestMigration, UpdateMemory, NoEffect>;

/// Scenario-wide knobs agents consult.
struct AgentParams {
    int trigger_threshold = 10;
    EolPolicy eol_policy;
    bool feedback_loop = true;
};

/// What an agent may observe about the node it is running on.
struct NodeContext {
    NodeId node;
    NodeKind kind = NodeKind::Manufacturer;
    Tick now = 0;
    const NodeDirectory& directory;
    const KnowledgeRepository& repository;  // the node-local repository
    const AgentParams& params;
};

struct HandleResult {
    AgentState state;
    std::vector<Effect> effects;
};

/// Role dispatch. Pure: the inputs are never modified.
/// Throws Error{UnhandledMessage} when the role has no rule for the payload.
HandleResult handle(const AgentState& agent, const Message& message, const NodeContext& ctx);

/// RequestMigration toward the itinerary head, or NoEffect when there is
/// nowhere else to go. Throws Error{UnknownNode}.
Effect plan_migration(const AgentState& agent, const NodeDirectory& directory);

}  // namespace ploop
