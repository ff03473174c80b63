#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ploop/identity.hpp"
#include "ploop/knowledge.hpp"
#include "ploop/lifecycle.hpp"
#include "ploop/types.hpp"

namespace ploop {

struct SensorBatch {
    ProductId product;
    std::vector<SensorEvent> events;
    bool environmental = false;
};

struct CustomerFeedback {
    ProductId product;
    std::string text;
};

struct FaultReport {
    ProductId product;
    std::string description;
};

struct ServiceOrder {
    ProductId product;
    std::string description;
};

struct KnowledgeNotice {
    KnowledgeRecord record;
};

struct RetirementNotice {
    ProductId product;
    std::vector<ComponentCondition> conditions;
};

struct DispositionOrder {
    ProductId product;
    EolDecision decision = EolDecision::DisposeNoIncineration;
};

using Payload = std::variant<SensorBatch, CustomerFeedback, FaultReport, ServiceOrder, KnowledgeNotice,
                             DesignTrigger, RetirementNotice, DispositionOrder>;

/// Kind name used in logs: SensorBatch, CustomerFeedback, FaultReported,
/// ServiceOrder, KnowledgeRecord, DesignTrigger, Retirement, DispositionOrder.
std::string_view payload_kind(const Payload& payload);

/// Message in flight between two nodes. `sender` is the stamp of whoever
/// produced it (agent or node id).
struct Message {
    MessageId msg_id = 0;
    std::string sender;
    NodeId origin;
    NodeId destination;
    std::string routing_key;
    Payload payload;
    Tick sent_at = 0;
    Tick deliver_at = 0;
};

}  // namespace ploop
