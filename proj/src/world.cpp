#include "ploop/world.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include <spdlog/spdlog.h>

#include "ploop/error.hpp"

namespace ploop {

namespace {

const std::set<AgentId> kNoResidents;
const KnowledgeRepository kEmptyRepository;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string program_key(const std::string& family, int generation) {
    return family + "#" + std::to_string(generation);
}

}  // namespace

World::World(std::uint64_t seed, WorldConfig config)
    : config_(std::move(config)), rng_(seed), routing_(std::vector<RouteRule>{{"*", {}}}) {
    if (config_.default_latency < 1) throw Error(ErrorCode::InvalidLatency, "default latency must be >= 1");
    if (config_.latency_jitter < 0) throw Error(ErrorCode::InvalidLatency, "latency jitter must be >= 0");
}

World::NodePair World::ordered(const NodeId& a, const NodeId& b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }

void World::require_node(const NodeId& id) const {
    if (!directory_.contains(id)) throw Error(ErrorCode::UnknownNode, "node '" + id.str() + "' is not registered");
}

void World::note(std::string kind, std::string node, std::string agent, std::optional<MessageId> msg_id,
                 std::string detail) {
    log_.push_back(LoggedEvent{.tick = clock_,
                               .kind = std::move(kind),
                               .node = std::move(node),
                               .agent = std::move(agent),
                               .msg_id = msg_id,
                               .detail = std::move(detail)});
    spdlog::debug("{}", to_json_line(log_.back()));
}

// ---------------------------------------------------------------------------
// topology

NodeId World::register_node(NodeKind kind) {
    NodeId id;
    do {
        char buf[32];
        std::snprintf(buf, sizeof buf, "node-%06llu", static_cast<unsigned long long>(next_node_++));
        id = NodeId(buf);
    } while (directory_.contains(id));
    return register_node(kind, id);
}

NodeId World::register_node(NodeKind kind, NodeId id) {
    if (id.empty()) throw Error(ErrorCode::ValidationError, "node id is empty");
    if (directory_.contains(id)) throw Error(ErrorCode::DuplicateId, "node '" + id.str() + "' already registered");
    directory_.add(id, kind);
    residents_[id];
    repositories_[id];
    note("NodeRegistered", id.str(), "", std::nullopt, Detail().add("kind", to_string(kind)));
    return id;
}

void World::set_latency(const NodeId& a, const NodeId& b, Tick ticks) {
    require_node(a);
    require_node(b);
    if (ticks < 1) throw Error(ErrorCode::InvalidLatency, "latency between nodes must be >= 1 tick");
    latencies_[ordered(a, b)] = ticks;
}

Tick World::latency(const NodeId& a, const NodeId& b) const {
    auto it = latencies_.find(ordered(a, b));
    return it == latencies_.end() ? config_.default_latency : it->second;
}

void World::partition(const NodeId& a, const NodeId& b) {
    require_node(a);
    require_node(b);
    if (manual_partitions_.insert(ordered(a, b)).second)
        note("PartitionStarted", a.str(), "", std::nullopt, Detail().add("a", a.str()).add("b", b.str()));
}

void World::heal(const NodeId& a, const NodeId& b) {
    if (manual_partitions_.erase(ordered(a, b)))
        note("PartitionHealed", a.str(), "", std::nullopt, Detail().add("a", a.str()).add("b", b.str()));
}

void World::schedule_partition(const NodeId& a, const NodeId& b, Tick from, Tick to) {
    require_node(a);
    require_node(b);
    if (from > to) throw Error(ErrorCode::ValidationError, "partition range ends before it starts");
    partition_schedule_.push_back({ordered(a, b), from, to});
}

bool World::partitioned(const NodeId& a, const NodeId& b) const {
    if (a == b) return false;
    const auto key = ordered(a, b);
    return manual_partitions_.contains(key) || active_scheduled_.contains(key);
}

// ---------------------------------------------------------------------------
// agents

const AgentState& World::spawn_agent(AgentState agent) {
    require_node(agent.location);
    if (agents_.contains(agent.agent_id))
        throw Error(ErrorCode::DuplicateId, "agent '" + agent.agent_id.str() + "' already exists");
    if (agent.role == AgentRole::AgentProduct && !agent.product_id)
        throw Error(ErrorCode::ValidationError, "AgentProduct '" + agent.agent_id.str() + "' needs a product binding");
    const auto id = agent.agent_id;
    residents_[agent.location].insert(id);
    ++spawned_;
    Detail detail;
    detail.add("role", to_string(agent.role));
    if (agent.product_id) detail.add("product", agent.product_id->render());
    note("AgentSpawned", agent.location.str(), id.str(), std::nullopt, detail);
    return agents_.emplace(id, std::move(agent)).first->second;
}

void World::terminate_agent(const AgentId& id) {
    auto it = agents_.find(id);
    if (it == agents_.end()) throw Error(ErrorCode::UnknownAgent, "agent '" + id.str() + "' is not live");
    if (in_flight_.erase(id) == 0) residents_[it->second.location].erase(id);
    note("AgentTerminated", it->second.location.str(), id.str(), std::nullopt, "");
    agents_.erase(it);
    ++terminated_;
}

const AgentState* World::find_agent(const AgentId& id) const {
    auto it = agents_.find(id);
    return it == agents_.end() ? nullptr : &it->second;
}

const std::set<AgentId>& World::residents(const NodeId& node) const {
    auto it = residents_.find(node);
    return it == residents_.end() ? kNoResidents : it->second;
}

MigrationStatus World::try_migrate(const AgentId& id, const NodeId& target) {
    auto it = agents_.find(id);
    if (it == agents_.end()) throw Error(ErrorCode::UnknownAgent, "agent '" + id.str() + "' is not live");
    require_node(target);
    if (in_flight_.contains(id)) throw Error(ErrorCode::AgentInFlight, "agent '" + id.str() + "' is already moving");
    auto& agent = it->second;
    const auto source = agent.location;
    if (source == target) return MigrationStatus::NoOp;
    if (partitioned(source, target)) {
        note("MigrationRefused", source.str(), id.str(), std::nullopt,
             Detail().add("from", source.str()).add("to", target.str()).add("reason", "partition"));
        return MigrationStatus::Refused;
    }
    const Tick arrive = clock_ + latency(source, target);
    residents_[source].erase(id);
    in_flight_[id] = Transfer{.from = source, .to = target, .depart_at = clock_, .arrive_at = arrive};
    note("MigrationStarted", source.str(), id.str(), std::nullopt,
         Detail().add("from", source.str()).add("to", target.str()).add("arrive_at", arrive));
    return MigrationStatus::Started;
}

void World::migrate(const AgentId& id, const NodeId& target) {
    if (try_migrate(id, target) == MigrationStatus::Refused)
        throw Error(ErrorCode::Partitioned, "agent '" + id.str() + "' cannot reach '" + target.str() + "'");
}

// ---------------------------------------------------------------------------
// products and knowledge

void World::add_product(ProductInstance product) {
    const auto id = product.peid.product_id();
    if (products_.contains(id)) throw Error(ErrorCode::DuplicateId, "product '" + id.render() + "' already tracked");
    products_.emplace(id, std::move(product));
}

const ProductInstance* World::find_product(const ProductId& id) const {
    auto it = products_.find(id);
    return it == products_.end() ? nullptr : &it->second;
}

const KnowledgeRepository& World::repository(const NodeId& node) const {
    auto it = repositories_.find(node);
    return it == repositories_.end() ? kEmptyRepository : it->second;
}

NodeId World::repository_node() const {
    if (config_.repository_node) return *config_.repository_node;
    return directory_.first_of_kind(NodeKind::Manufacturer).value_or(NodeId{});
}

void World::advance_product(const ProductId& id, LifecycleEvent event, const NodeId& where) {
    auto it = products_.find(id);
    if (it == products_.end()) {
        note("UnknownProduct", where.str(), "", std::nullopt, Detail().add("product", id.render()));
        return;
    }
    auto& product = it->second;
    const auto from = product.phase;
    const auto next = try_advance(from, event);
    if (!next) {
        note("IllegalTransition", where.str(), "", std::nullopt,
             Detail().add("product", id.render()).add("phase", to_string(from)).add("event", to_string(event)));
        return;
    }
    product.phase = *next;
    note("PhaseChanged", where.str(), "", std::nullopt,
         Detail()
             .add("product", id.render())
             .add("event", to_string(event))
             .add("from", to_string(from))
             .add("to", to_string(*next)));
}

void World::start_program(const DesignTrigger& trigger, const NodeId& where) {
    const auto key = std::pair{trigger.family, trigger.generation};
    if (programs_.contains(key)) {
        note("DesignTriggerIgnored", where.str(), "", std::nullopt,
             Detail().add("family", trigger.family).add("generation", trigger.generation));
        return;
    }
    programs_.emplace(key, DesignProgram{.family = trigger.family,
                                         .generation = trigger.generation,
                                         .node = where,
                                         .phase = initial_state(),
                                         .started_at = clock_});
    note("DesignStarted", where.str(), "", std::nullopt,
         Detail()
             .add("family", trigger.family)
             .add("generation", trigger.generation)
             .add("phase", to_string(initial_state())));
    timers_.emplace(clock_ + config_.design_ticks, Timer{key, LifecycleEvent::DesignComplete});
    timers_.emplace(clock_ + config_.design_ticks + config_.manufacture_ticks, Timer{key, LifecycleEvent::Manufactured});
}

// ---------------------------------------------------------------------------
// scheduling

void World::schedule_stimulus(Stimulus stimulus) {
    require_node(stimulus.node);
    if (stimulus.tick <= clock_)
        throw Error(ErrorCode::ValidationError,
                    "stimulus at tick " + std::to_string(stimulus.tick) + " is not in the future");
    stimuli_.emplace(stimulus.tick, std::move(stimulus));
}

std::vector<LoggedEvent> World::tick() {
    const auto mark = log_.size();
    ++clock_;
    apply_partition_schedule();
    apply_stimuli();
    deliver_due_messages();
    complete_migrations();
    fire_timers();
    plan_migrations();
    return {log_.begin() + static_cast<std::ptrdiff_t>(mark), log_.end()};
}

void World::apply_partition_schedule() {
    std::set<NodePair> active;
    for (const auto& p : partition_schedule_)
        if (p.from <= clock_ && clock_ <= p.to) active.insert(p.pair);
    for (const auto& pair : active_scheduled_)
        if (!active.contains(pair))
            note("PartitionHealed", pair.first.str(), "", std::nullopt,
                 Detail().add("a", pair.first.str()).add("b", pair.second.str()));
    for (const auto& pair : active)
        if (!active_scheduled_.contains(pair))
            note("PartitionStarted", pair.first.str(), "", std::nullopt,
                 Detail().add("a", pair.first.str()).add("b", pair.second.str()));
    active_scheduled_ = std::move(active);
}

void World::apply_stimuli() {
    auto [first, last] = stimuli_.equal_range(clock_);
    std::vector<Stimulus> due;
    for (auto it = first; it != last; ++it) due.push_back(std::move(it->second));
    stimuli_.erase(first, last);

    for (auto& s : due) {
        note("StimulusApplied", s.node.str(), "", std::nullopt,
             Detail().add("kind", payload_kind(s.payload)).add("key", s.routing_key));

        if (auto* batch = std::get_if<SensorBatch>(&s.payload)) {
            for (auto& e : batch->events) e.sim_time = clock_;
            if (auto it = products_.find(batch->product); it != products_.end()) {
                for (const auto& e : batch->events) {
                    try {
                        it->second.peid = record_event(it->second.peid, e);
                    } catch (const Error& err) {
                        note("SensorRejected", s.node.str(), "", std::nullopt,
                             Detail().add("product", batch->product.render()).add("error", to_string(err.code())));
                    }
                }
            }
        } else if (const auto* fault = std::get_if<FaultReport>(&s.payload)) {
            advance_product(fault->product, LifecycleEvent::FaultReported, s.node);
        } else if (const auto* retire = std::get_if<RetirementNotice>(&s.payload)) {
            advance_product(retire->product, LifecycleEvent::RetirementRequested, s.node);
            // Without the feedback loop the next generation is only started
            // once a product of the current one is retired.
            if (!config_.params.feedback_loop) {
                const auto* product = find_product(retire->product);
                const int generation = product ? product->generation : 1;
                DesignInsight insight;
                insight.family = product_family(retire->product);
                insight.generation = generation;
                insight.record_count = 1;
                const auto factory = directory_.first_of_kind(NodeKind::Manufacturer);
                if (factory) {
                    if (auto trigger = check_loop_closure(insight, 1, retirement_triggers_)) {
                        note("DesignTrigger", s.node.str(), "", std::nullopt,
                             Detail()
                                 .add("family", trigger->family)
                                 .add("generation", trigger->generation)
                                 .add("records", trigger->record_count)
                                 .add("reason", "retirement"));
                        send(s.node, *factory, s.node.str(), "", "design.trigger", std::move(*trigger));
                    }
                }
            }
        }

        const MessageId id = next_msg_++;
        note("MessageSent", s.node.str(), "", id,
             Detail()
                 .add("key", s.routing_key)
                 .add("kind", payload_kind(s.payload))
                 .add("from", s.node.str())
                 .add("to", s.node.str())
                 .add("deliver_at", clock_));
        pending_.emplace(std::pair{clock_, id}, Message{.msg_id = id,
                                                        .sender = s.node.str(),
                                                        .origin = s.node,
                                                        .destination = s.node,
                                                        .routing_key = s.routing_key,
                                                        .payload = std::move(s.payload),
                                                        .sent_at = clock_,
                                                        .deliver_at = clock_});
    }
}

void World::deliver_due_messages() {
    while (!pending_.empty() && pending_.begin()->first.first <= clock_) {
        auto node = pending_.extract(pending_.begin());
        deliver(node.mapped());
    }
}

void World::deliver(const Message& message) {
    const auto& dest = message.destination;
    if (partitioned(message.origin, dest)) {
        note("MessageDropped", dest.str(), "", message.msg_id,
             Detail().add("key", message.routing_key).add("from", message.origin.str()).add("reason", "partition"));
        return;
    }
    if (consume_at_node(message)) return;

    std::vector<AgentEntry> entries;
    for (const auto& id : residents(dest)) entries.push_back({id, agents_.at(id).role});
    const auto recipients = route(message.routing_key, routing_, entries);
    if (recipients.empty()) {
        note("MessageDropped", dest.str(), "", message.msg_id,
             Detail()
                 .add("key", message.routing_key)
                 .add("from", message.origin.str())
                 .add("reason", "no_recipients"));
        return;
    }

    const auto kind = directory_.kind_of(dest).value_or(NodeKind::Manufacturer);
    for (const auto& id : recipients) {
        if (!residents(dest).contains(id)) continue;
        note("MessageDelivered", dest.str(), id.str(), message.msg_id,
             Detail()
                 .add("key", message.routing_key)
                 .add("kind", payload_kind(message.payload))
                 .add("from", message.origin.str()));
        const NodeContext ctx{.node = dest,
                              .kind = kind,
                              .now = clock_,
                              .directory = directory_,
                              .repository = repository(dest),
                              .params = config_.params};
        try {
            auto result = handle(agents_.at(id), message, ctx);
            agents_.at(id) = std::move(result.state);
            apply_effects(id, std::move(result.effects));
        } catch (const Error& err) {
            note("HandlerError", dest.str(), id.str(), message.msg_id,
                 Detail().add("error", to_string(err.code())).add("kind", payload_kind(message.payload)));
        }
    }
}

bool World::consume_at_node(const Message& message) {
    const auto& dest = message.destination;
    const auto kind = directory_.kind_of(dest);
    auto delivered = [&] {
        note("MessageDelivered", dest.str(), "", message.msg_id,
             Detail()
                 .add("key", message.routing_key)
                 .add("kind", payload_kind(message.payload))
                 .add("from", message.origin.str())
                 .add("consumer", "node"));
    };
    if (const auto* order = std::get_if<ServiceOrder>(&message.payload); order && kind == NodeKind::RepairGarage) {
        delivered();
        advance_product(order->product, LifecycleEvent::Repaired, dest);
        return true;
    }
    if (const auto* trigger = std::get_if<DesignTrigger>(&message.payload); trigger && kind == NodeKind::Manufacturer) {
        delivered();
        start_program(*trigger, dest);
        return true;
    }
    if (const auto* order = std::get_if<DispositionOrder>(&message.payload);
        order && kind == NodeKind::RecyclingEnterprise) {
        delivered();
        note("EOLDecision", dest.str(), "", message.msg_id,
             Detail().add("product", order->product.render()).add("decision", to_string(order->decision)));
        advance_product(order->product, LifecycleEvent::DispositionExecuted, dest);
        return true;
    }
    return false;
}

void World::complete_migrations() {
    std::vector<AgentId> due;
    for (const auto& [id, t] : in_flight_)
        if (t.arrive_at <= clock_) due.push_back(id);
    for (const auto& id : due) {
        auto& transfer = in_flight_.at(id);
        if (partitioned(transfer.from, transfer.to)) {
            transfer.arrive_at = clock_ + 1;
            note("MigrationDelayed", transfer.from.str(), id.str(), std::nullopt,
                 Detail().add("from", transfer.from.str()).add("to", transfer.to.str()).add("reason", "partition"));
            continue;
        }
        auto& agent = agents_.at(id);
        agent.location = transfer.to;
        if (!agent.itinerary.empty() && agent.itinerary.front() == transfer.to)
            agent.itinerary.erase(agent.itinerary.begin());
        residents_[transfer.to].insert(id);
        note("MigrationCompleted", transfer.to.str(), id.str(), std::nullopt,
             Detail().add("from", transfer.from.str()).add("to", transfer.to.str()));
        in_flight_.erase(id);
    }
}

void World::fire_timers() {
    while (!timers_.empty() && timers_.begin()->first <= clock_) {
        const auto timer = timers_.begin()->second;
        timers_.erase(timers_.begin());
        auto& program = programs_.at(timer.program);
        const auto from = program.phase;
        const auto next = try_advance(from, timer.event);
        if (!next) {
            note("IllegalTransition", program.node.str(), "", std::nullopt,
                 Detail()
                     .add("program", program_key(program.family, program.generation))
                     .add("phase", to_string(from))
                     .add("event", to_string(timer.event)));
            continue;
        }
        program.phase = *next;
        note("PhaseChanged", program.node.str(), "", std::nullopt,
             Detail()
                 .add("program", program_key(program.family, program.generation))
                 .add("event", to_string(timer.event))
                 .add("from", to_string(from))
                 .add("to", to_string(*next)));
        if (*next == LifecyclePhase::MOL_Distribution)
            note("GenerationLaunched", program.node.str(), "", std::nullopt,
                 Detail()
                     .add("family", program.family)
                     .add("generation", program.generation)
                     .add("design_started", program.started_at));
    }
}

void World::plan_migrations() {
    for (auto& [id, agent] : agents_) {
        if (in_flight_.contains(id)) continue;
        while (!agent.itinerary.empty() && agent.itinerary.front() == agent.location)
            agent.itinerary.erase(agent.itinerary.begin());
        try {
            const auto effect = plan_migration(agent, directory_);
            if (const auto* req = std::get_if<RequestMigration>(&effect)) try_migrate(id, req->target);
        } catch (const Error& err) {
            note("MigrationFailed", agent.location.str(), id.str(), std::nullopt,
                 Detail().add("error", to_string(err.code())).add("to", agent.itinerary.front().str()));
            agent.itinerary.erase(agent.itinerary.begin());
        }
    }
}

void World::apply_effects(const AgentId& id, std::vector<Effect> effects) {
    auto origin_of = [&]() -> NodeId {
        if (auto it = in_flight_.find(id); it != in_flight_.end()) return it->second.from;
        return agents_.at(id).location;
    };
    for (auto& effect : effects) {
        if (auto* send_msg = std::get_if<SendMessage>(&effect)) {
            const auto origin = origin_of();
            if (!directory_.contains(send_msg->target)) {
                note("MessageDropped", origin.str(), id.str(), std::nullopt,
                     Detail().add("key", send_msg->routing_key).add("reason", "unknown_node"));
                continue;
            }
            if (const auto* trigger = std::get_if<DesignTrigger>(&send_msg->payload))
                note("DesignTrigger", origin.str(), id.str(), std::nullopt,
                     Detail()
                         .add("family", trigger->family)
                         .add("generation", trigger->generation)
                         .add("records", trigger->record_count)
                         .add("reason", "feedback"));
            send(origin, send_msg->target, id.str(), id.str(), std::move(send_msg->routing_key),
                 std::move(send_msg->payload));
        } else if (auto* emit = std::get_if<EmitKnowledge>(&effect)) {
            store_knowledge(id, std::move(emit->record));
        } else if (const auto* req = std::get_if<RequestMigration>(&effect)) {
            try {
                try_migrate(id, req->target);
            } catch (const Error& err) {
                note("MigrationFailed", origin_of().str(), id.str(), std::nullopt,
                     Detail().add("error", to_string(err.code())).add("to", req->target.str()));
            }
        } else if (const auto* update = std::get_if<UpdateMemory>(&effect)) {
            agents_.at(id).memory[update->key] = update->value;
        }
    }
}

void World::send(const NodeId& origin, const NodeId& destination, std::string sender, std::string agent,
                 std::string routing_key, Payload payload) {
    if (partitioned(origin, destination)) {
        note("MessageBlocked", origin.str(), agent, std::nullopt,
             Detail()
                 .add("key", routing_key)
                 .add("kind", payload_kind(payload))
                 .add("from", origin.str())
                 .add("to", destination.str())
                 .add("reason", "partition"));
        return;
    }
    Tick delay = latency(origin, destination);
    if (config_.latency_jitter > 0)
        delay += static_cast<Tick>(rng_() % static_cast<std::uint64_t>(config_.latency_jitter + 1));
    const MessageId id = next_msg_++;
    const Tick deliver_at = clock_ + delay;
    note("MessageSent", origin.str(), agent, id,
         Detail()
             .add("key", routing_key)
             .add("kind", payload_kind(payload))
             .add("from", origin.str())
             .add("to", destination.str())
             .add("deliver_at", deliver_at));
    pending_.emplace(std::pair{deliver_at, id}, Message{.msg_id = id,
                                                        .sender = std::move(sender),
                                                        .origin = origin,
                                                        .destination = destination,
                                                        .routing_key = std::move(routing_key),
                                                        .payload = std::move(payload),
                                                        .sent_at = clock_,
                                                        .deliver_at = deliver_at});
}

void World::store_knowledge(const AgentId& id, KnowledgeRecord record) {
    const auto node = agents_.at(id).location;
    if (record.record_id == 0) record.record_id = next_record_++;
    try {
        const auto& stored = repositories_[node].insert(record);
        note("KnowledgeStored", node.str(), id.str(), std::nullopt,
             Detail()
                 .add("record", static_cast<long long>(stored.record_id))
                 .add("product", stored.product_id.render())
                 .add("family", product_family(stored.product_id))
                 .add("generation", stored.generation)
                 .add("activity", to_string(stored.activity))
                 .add("mode", to_string(stored.mode))
                 .add("source", to_string(stored.source)));
    } catch (const Error& err) {
        note("KnowledgeRejected", node.str(), id.str(), std::nullopt,
             Detail().add("record", static_cast<long long>(record.record_id)).add("error", to_string(err.code())));
        return;
    }
    const auto repo = repository_node();
    if (!repo.empty() && repo != node && directory_.contains(repo)) {
        const auto key = "knowledge." + lower(to_string(record.mode));
        send(node, repo, id.str(), id.str(), key, KnowledgeNotice{std::move(record)});
    }
}

// ---------------------------------------------------------------------------
// invariants

void World::check_invariants() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvariantViolation, what); };
    std::map<AgentId, int> seen;
    for (const auto& [node, ids] : residents_) {
        for (const auto& id : ids) {
            ++seen[id];
            auto it = agents_.find(id);
            if (it == agents_.end()) fail("node '" + node.str() + "' hosts dead agent '" + id.str() + "'");
            if (it->second.location != node)
                fail("agent '" + id.str() + "' resident at '" + node.str() + "' but located at '" +
                     it->second.location.str() + "'");
        }
    }
    for (const auto& [id, t] : in_flight_) ++seen[id];
    for (const auto& [id, agent] : agents_)
        if (seen[id] != 1) fail("agent '" + id.str() + "' counted " + std::to_string(seen[id]) + " times");
    if (seen.size() != agents_.size()) fail("census found agents that are not live");
    if (agents_.size() != spawned_ - terminated_) fail("live agent count differs from spawned - terminated");
    for (const auto& [key, m] : pending_)
        if (m.deliver_at < m.sent_at || m.deliver_at <= clock_ - 1) fail("message delivery time is in the past");
    if (!log_.empty() && log_.back().tick > clock_) fail("log runs ahead of the clock");
}

}  // namespace ploop
