#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ploop/agents.hpp"
#include "ploop/event_log.hpp"
#include "ploop/identity.hpp"
#include "ploop/knowledge.hpp"
#include "ploop/lifecycle.hpp"
#include "ploop/message.hpp"
#include "ploop/node.hpp"
#include "ploop/routing.hpp"
#include "ploop/types.hpp"

namespace ploop {

struct WorldConfig {
    AgentParams params;
    Tick default_latency = 1;
    Tick latency_jitter = 0;  // extra 0..jitter ticks drawn from the seeded generator
    Tick design_ticks = 20;
    Tick manufacture_ticks = 10;
    std::optional<NodeId> repository_node;  // defaults to the first Manufacturer
};

/// Externally scheduled input (sensor batch, feedback, fault, retirement)
/// arriving at a node.
struct Stimulus {
    Tick tick = 1;
    NodeId node;
    std::string routing_key;
    Payload payload;
};

/// Physical product tracked by the simulation.
struct ProductInstance {
    Peid peid;
    int generation = 1;
    LifecyclePhase phase = LifecyclePhase::EOL_Use;
};

/// Next-generation design/manufacture programme started by a DesignTrigger.
struct DesignProgram {
    std::string family;
    int generation = 2;
    NodeId node;
    LifecyclePhase phase = LifecyclePhase::BOL_Design;
    Tick started_at = 0;
};

struct Transfer {
    NodeId from;
    NodeId to;
    Tick depart_at = 0;
    Tick arrive_at = 0;
};

enum class MigrationStatus { Started, Refused, NoOp };

/// Single-threaded discrete-event world: node registry, router, migration
/// protocol, knowledge repositories and product lifecycles. Copyable; two
/// copies evolve independently.
class World {
public:
    explicit World(std::uint64_t seed = 0, WorldConfig config = {});

    // -- topology ---------------------------------------------------------
    NodeId register_node(NodeKind kind);
    /// Throws Error{DuplicateId}.
    NodeId register_node(NodeKind kind, NodeId id);
    const NodeDirectory& directory() const noexcept { return directory_; }

    /// Symmetric per-pair latency, at least one tick. Throws
    /// Error{UnknownNode} or Error{InvalidLatency}.
    void set_latency(const NodeId& a, const NodeId& b, Tick ticks);
    Tick latency(const NodeId& a, const NodeId& b) const;

    void set_routing(RoutingTable table) { routing_ = std::move(table); }
    const RoutingTable& routing() const noexcept { return routing_; }

    void partition(const NodeId& a, const NodeId& b);
    void heal(const NodeId& a, const NodeId& b);
    /// Severs the pair for every tick in [from, to].
    void schedule_partition(const NodeId& a, const NodeId& b, Tick from, Tick to);
    bool partitioned(const NodeId& a, const NodeId& b) const;

    // -- agents -----------------------------------------------------------
    /// Throws Error{UnknownNode} or Error{DuplicateId}.
    const AgentState& spawn_agent(AgentState agent);
    /// Throws Error{UnknownAgent}.
    void terminate_agent(const AgentId& id);
    /// Starts the remove / in-flight / insert protocol. Throws
    /// Error{UnknownAgent}, Error{UnknownNode}, Error{AgentInFlight} or
    /// Error{Partitioned}; a refused migration leaves the agent in place.
    void migrate(const AgentId& id, const NodeId& target);

    const AgentState* find_agent(const AgentId& id) const;
    const std::map<AgentId, AgentState>& agents() const noexcept { return agents_; }
    const std::set<AgentId>& residents(const NodeId& node) const;
    const std::map<AgentId, Transfer>& in_flight() const noexcept { return in_flight_; }
    std::size_t spawned_count() const noexcept { return spawned_; }
    std::size_t terminated_count() const noexcept { return terminated_; }

    // -- products and knowledge -------------------------------------------
    /// Throws Error{DuplicateId}.
    void add_product(ProductInstance product);
    const ProductInstance* find_product(const ProductId& id) const;
    const KnowledgeRepository& repository(const NodeId& node) const;
    NodeId repository_node() const;
    const std::map<std::pair<std::string, int>, DesignProgram>& programs() const noexcept { return programs_; }

    // -- scheduling -------------------------------------------------------
    /// Queues an external input for delivery at `stimulus.tick` (> clock).
    /// Throws Error{UnknownNode} or Error{ValidationError}.
    void schedule_stimulus(Stimulus stimulus);

    /// Advances the clock by one and processes everything due at the new
    /// tick. Returns the events logged during this tick.
    std::vector<LoggedEvent> tick();

    Tick clock() const noexcept { return clock_; }
    const std::vector<LoggedEvent>& log() const noexcept { return log_; }
    std::size_t pending_messages() const noexcept { return pending_.size(); }

    /// Appends an event stamped with the current clock.
    void note(std::string kind, std::string node, std::string agent, std::optional<MessageId> msg_id,
              std::string detail);

    /// Residency census and clock checks. Throws Error{InvariantViolation}.
    void check_invariants() const;

private:
    using NodePair = std::pair<NodeId, NodeId>;
    static NodePair ordered(const NodeId& a, const NodeId& b);

    void require_node(const NodeId& id) const;
    MigrationStatus try_migrate(const AgentId& id, const NodeId& target);
    void apply_partition_schedule();
    void apply_stimuli();
    void deliver_due_messages();
    void deliver(const Message& message);
    bool consume_at_node(const Message& message);
    void complete_migrations();
    void fire_timers();
    void plan_migrations();
    void apply_effects(const AgentId& id, std::vector<Effect> effects);
    void send(const NodeId& origin, const NodeId& destination, std::string sender, std::string agent,
              std::string routing_key, Payload payload);
    void store_knowledge(const AgentId& id, KnowledgeRecord record);
    void advance_product(const ProductId& id, LifecycleEvent event, const NodeId& where);
    void start_program(const DesignTrigger& trigger, const NodeId& where);

    WorldConfig config_;
    std::mt19937_64 rng_;
    Tick clock_ = 0;
    std::uint64_t next_node_ = 1;
    MessageId next_msg_ = 1;
    std::uint64_t next_record_ = 1;

    NodeDirectory directory_;
    std::map<NodeId, std::set<AgentId>> residents_;
    std::map<NodeId, KnowledgeRepository> repositories_;
    std::map<NodePair, Tick> latencies_;
    std::set<NodePair> manual_partitions_;
    struct ScheduledPartition {
        NodePair pair;
        Tick from = 0;
        Tick to = 0;
    };
    std::vector<ScheduledPartition> partition_schedule_;
    std::set<NodePair> active_scheduled_;
    RoutingTable routing_;

    std::map<AgentId, AgentState> agents_;
    std::map<AgentId, Transfer> in_flight_;
    std::size_t spawned_ = 0;
    std::size_t terminated_ = 0;

    std::map<ProductId, ProductInstance> products_;
    std::map<std::pair<std::string, int>, DesignProgram> programs_;
    TriggerLedger retirement_triggers_;
    struct Timer {
        std::pair<std::string, int> program;
        LifecycleEvent event;
    };
    std::multimap<Tick, Timer> timers_;

    std::multimap<Tick, Stimulus> stimuli_;
    std::map<std::pair<Tick, MessageId>, Message> pending_;

    std::vector<LoggedEvent> log_;
};

}  // namespace ploop
