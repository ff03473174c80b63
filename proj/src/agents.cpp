#include "ploop/agents.hpp"

#include <sstream>

#include "ploop/error.hpp"

namespace ploop {

std::string_view to_string(AgentRole role) {
    switch (role) {
        case AgentRole::AgentProduct: return "AgentProduct";
        case AgentRole::AgentService: return "AgentService";
        case AgentRole::AgentCustomer: return "AgentCustomer";
        case AgentRole::AgentImpact: return "AgentImpact";
        case AgentRole::AgentKnowledge: return "AgentKnowledge";
    }
    return "?";
}

std::optional<AgentRole> agent_role_from_string(std::string_view name) {
    for (auto r : kAllAgentRoles)
        if (to_string(r) == name) return r;
    return std::nullopt;
}

AgentState make_agent(AgentId id, AgentRole role, NodeId home, std::optional<ProductId> product, int generation,
                      std::vector<NodeId> itinerary) {
    if (id.empty()) throw Error(ErrorCode::ValidationError, "agent id is empty");
    if (role == AgentRole::AgentProduct && !product)
        throw Error(ErrorCode::ValidationError, "AgentProduct '" + id.str() + "' needs a product binding");
    if (generation < 1) throw Error(ErrorCode::ValidationError, "generation must be positive");
    return AgentState{.agent_id = std::move(id),
                      .role = role,
                      .product_id = std::move(product),
                      .generation = generation,
                      .location = std::move(home),
                      .memory = {},
                      .itinerary = std::move(itinerary),
                      .triggers = {}};
}

namespace {

std::string format_reading(const SensorEvent& e) {
    std::ostringstream os;
    os << e.value;
    if (!e.unit.empty()) os << ' ' << e.unit;
    return os.str();
}

KnowledgeRecord tacit_record(const ProductId& product, int generation, std::string payload, Tick now) {
    return KnowledgeRecord{.record_id = 0,
                           .product_id = product,
                           .generation = generation,
                           .activity = Activity::IntelligentProduct,
                           .mode = KnowledgeMode::Tacit,
                           .source = KnowledgeSource::SelfSource,
                           .payload = std::move(payload),
                           .created_at = now};
}

[[noreturn]] void unhandled(const AgentState& agent, const Message& message) {
    throw Error(ErrorCode::UnhandledMessage,
                std::string(to_string(agent.role)) + " has no rule for " + std::string(payload_kind(message.payload)));
}

bool owns(const AgentState& agent, const ProductId& product) {
    return agent.product_id && *agent.product_id == product;
}

HandleResult product_sensor_batch(const AgentState& agent, const SensorBatch& batch, const NodeContext& ctx) {
    if (!owns(agent, batch.product) || batch.events.empty()) return {agent, {}};
    std::vector<Effect> effects;
    for (const auto& e : batch.events) effects.emplace_back(UpdateMemory{"sensor." + e.sensor, format_reading(e)});

    std::size_t seen = 0;
    if (auto it = agent.memory.find("events.total"); it != agent.memory.end()) seen = std::stoul(it->second);
    effects.emplace_back(UpdateMemory{"events.total", std::to_string(seen + batch.events.size())});

    const auto summary = summarize_events(batch.events);
    auto emit = [&](const std::optional<std::string>& text, std::string_view category) {
        if (text)
            effects.emplace_back(EmitKnowledge{
                tacit_record(batch.product, agent.generation, std::string(category) + ": " + *text, ctx.now)});
    };
    emit(summary.use, "use");
    emit(summary.environment, "environment");
    emit(summary.failure, "failure");
    return {agent, std::move(effects)};
}

HandleResult product_retirement(const AgentState& agent, const RetirementNotice& notice, const NodeContext& ctx) {
    if (!owns(agent, notice.product)) return {agent, {}};
    const auto decision = decide_eol(notice.conditions, ctx.params.eol_policy);

    std::string payload = "eol: " + std::string(to_string(decision));
    for (const auto& c : notice.conditions) {
        std::ostringstream os;
        os << ' ' << c.component << '*' << c.condition;
        payload += os.str();
    }

    std::vector<Effect> effects;
    effects.emplace_back(UpdateMemory{"eol.decision", std::string(to_string(decision))});
    effects.emplace_back(EmitKnowledge{tacit_record(notice.product, agent.generation, payload, ctx.now)});
    if (auto recycler = ctx.directory.first_of_kind(NodeKind::RecyclingEnterprise)) {
        effects.emplace_back(
            SendMessage{*recycler, "eol.disposition", DispositionOrder{notice.product, decision}});
        if (*recycler != agent.location) effects.emplace_back(RequestMigration{*recycler});
    }
    return {agent, std::move(effects)};
}

HandleResult handle_product(const AgentState& agent, const Message& message, const NodeContext& ctx) {
    if (const auto* batch = std::get_if<SensorBatch>(&message.payload)) return product_sensor_batch(agent, *batch, ctx);
    if (const auto* notice = std::get_if<RetirementNotice>(&message.payload))
        return product_retirement(agent, *notice, ctx);
    unhandled(agent, message);
}

HandleResult handle_impact(const AgentState& agent, const Message& message, const NodeContext& ctx) {
    const auto* batch = std::get_if<SensorBatch>(&message.payload);
    if (!batch) unhandled(agent, message);
    if (!batch->environmental || batch->events.empty()) return {agent, {}};

    std::vector<SensorEvent> relabelled = batch->events;
    for (auto& e : relabelled)
        if (sensor_category(e.sensor) != "environment") e.sensor = "env." + e.sensor;
    const auto summary = summarize_events(relabelled);
    std::vector<Effect> effects;
    effects.emplace_back(
        EmitKnowledge{tacit_record(batch->product, agent.generation, "environment: " + *summary.environment, ctx.now)});
    return {agent, std::move(effects)};
}

HandleResult handle_customer(const AgentState& agent, const Message& message, const NodeContext& ctx) {
    const auto* feedback = std::get_if<CustomerFeedback>(&message.payload);
    if (!feedback) unhandled(agent, message);
    if (feedback->text.empty()) throw Error(ErrorCode::EmptyFeedback, "customer feedback text is empty");
    std::vector<Effect> effects;
    effects.emplace_back(EmitKnowledge{KnowledgeRecord{.record_id = 0,
                                                       .product_id = feedback->product,
                                                       .generation = agent.generation,
                                                       .activity = Activity::Customer,
                                                       .mode = KnowledgeMode::Explicit,
                                                       .source = KnowledgeSource::Collective,
                                                       .payload = feedback->text,
                                                       .created_at = ctx.now}});
    return {agent, std::move(effects)};
}

HandleResult handle_service(const AgentState& agent, const Message& message, const NodeContext& ctx) {
    const auto* fault = std::get_if<FaultReport>(&message.payload);
    if (!fault) unhandled(agent, message);
    std::vector<Effect> effects;
    if (auto garage = ctx.directory.first_of_kind(NodeKind::RepairGarage))
        effects.emplace_back(SendMessage{*garage, "service.order", ServiceOrder{fault->product, fault->description}});
    effects.emplace_back(
        EmitKnowledge{tacit_record(fault->product, agent.generation, "failure: " + fault->description, ctx.now)});
    return {agent, std::move(effects)};
}

HandleResult handle_knowledge(const AgentState& agent, const Message& message, const NodeContext& ctx) {
    const auto* notice = std::get_if<KnowledgeNotice>(&message.payload);
    if (!notice) unhandled(agent, message);
    const auto& record = notice->record;

    HandleResult result{agent, {}};
    result.effects.emplace_back(EmitKnowledge{record});
    if (!ctx.params.feedback_loop) return result;

    const auto insight =
        aggregate(ctx.repository, product_family(record.product_id), record.generation, std::span(&record, 1));
    if (auto trigger = check_loop_closure(insight, ctx.params.trigger_threshold, result.state.triggers)) {
        if (auto factory = ctx.directory.first_of_kind(NodeKind::Manufacturer))
            result.effects.emplace_back(SendMessage{*factory, "design.trigger", std::move(*trigger)});
    }
    return result;
}

}  // namespace

HandleResult handle(const AgentState& agent, const Message& message, const NodeContext& ctx) {
    switch (agent.role) {
        case AgentRole::AgentProduct: return handle_product(agent, message, ctx);
        case AgentRole::AgentImpact: return handle_impact(agent, message, ctx);
        case AgentRole::AgentCustomer: return handle_customer(agent, message, ctx);
        case AgentRole::AgentService: return handle_service(agent, message, ctx);
        case AgentRole::AgentKnowledge: return handle_knowledge(agent, message, ctx);
    }
    unhandled(agent, message);
}

Effect plan_migration(const AgentState& agent, const NodeDirectory& directory) {
    if (agent.itinerary.empty()) return NoEffect{};
    const auto& head = agent.itinerary.front();
    if (!directory.contains(head))
        throw Error(ErrorCode::UnknownNode, "itinerary of '" + agent.agent_id.str() + "' names unknown node '" +
                                                head.str() + "'");
    if (head == agent.location) return NoEffect{};
    return RequestMigration{head};
}

}  // namespace ploop
