#include "ploop/message.hpp"

namespace ploop {

std::string_view payload_kind(const Payload& payload) {
    struct Visitor {
        std::string_view operator()(const SensorBatch&) const { return "SensorBatch"; }
        std::string_view operator()(const CustomerFeedback&) const { return "CustomerFeedback"; }
        std::string_view operator()(const FaultReport&) const { return "FaultReported"; }
        std::string_view operator()(const ServiceOrder&) const { return "ServiceOrder"; }
        std::string_view operator()(const KnowledgeNotice&) const { return "KnowledgeRecord"; }
        std::string_view operator()(const DesignTrigger&) const { return "DesignTrigger"; }
        std::string_view operator()(const RetirementNotice&) const { return "Retirement"; }
        std::string_view operator()(const DispositionOrder&) const { return "DispositionOrder"; }
    };
    return std::visit(Visitor{}, payload);
}

}  // namespace ploop
