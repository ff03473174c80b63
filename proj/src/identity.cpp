#include "ploop/identity.hpp"

#include <algorithm>
#include <cctype>

#include "ploop/error.hpp"

namespace ploop {

bool is_absolute_uri(std::string_view uri) {
    const auto colon = uri.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 >= uri.size()) return false;
    if (!std::isalpha(static_cast<unsigned char>(uri[0]))) return false;
    for (std::size_t i = 1; i < colon; ++i) {
        const auto c = static_cast<unsigned char>(uri[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return std::none_of(uri.begin(), uri.end(),
                        [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

ProductId mint_product_id(std::string_view serial, std::string_view uri) {
    if (serial.empty()) throw Error(ErrorCode::MalformedSerial, "serial is empty");
    if (serial.find('@') != std::string_view::npos)
        throw Error(ErrorCode::MalformedSerial, "serial '" + std::string(serial) + "' contains '@'");
    if (uri.empty()) throw Error(ErrorCode::MalformedURI, "uri is empty");
    if (!is_absolute_uri(uri))
        throw Error(ErrorCode::MalformedURI, "uri '" + std::string(uri) + "' is not absolute");
    return ProductId(std::string(serial), std::string(uri));
}

ProductId parse_product_id(std::string_view rendered) {
    const auto at = rendered.find('@');
    if (at == std::string_view::npos)
        throw Error(ErrorCode::Malformed, "'" + std::string(rendered) + "' has no '@'");
    if (rendered.find('@', at + 1) != std::string_view::npos)
        throw Error(ErrorCode::Malformed, "'" + std::string(rendered) + "' has more than one '@'");
    try {
        return mint_product_id(rendered.substr(0, at), rendered.substr(at + 1));
    } catch (const Error& e) {
        throw Error(ErrorCode::Malformed, e.what());
    }
}

std::string_view to_string(PeidCapability cap) {
    switch (cap) {
        case PeidCapability::UniqueID: return "UniqueID";
        case PeidCapability::Communication: return "Communication";
        case PeidCapability::SelfStorage: return "SelfStorage";
        case PeidCapability::FeatureLanguage: return "FeatureLanguage";
        case PeidCapability::DecisionMaking: return "DecisionMaking";
    }
    return "?";
}

std::optional<PeidCapability> capability_from_string(std::string_view name) {
    for (auto c : kAllCapabilities)
        if (to_string(c) == name) return c;
    return std::nullopt;
}

std::string_view to_string(IntelligenceLevel level) {
    switch (level) {
        case IntelligenceLevel::NotIntelligent: return "NotIntelligent";
        case IntelligenceLevel::Level1: return "Level1";
        case IntelligenceLevel::Level2: return "Level2";
    }
    return "?";
}

IntelligenceLevel classify_intelligence(const CapabilitySet& caps) {
    static const CapabilitySet level1{PeidCapability::UniqueID, PeidCapability::Communication,
                                      PeidCapability::SelfStorage};
    if (caps.includes(CapabilitySet::all())) return IntelligenceLevel::Level2;
    if (caps.includes(level1)) return IntelligenceLevel::Level1;
    return IntelligenceLevel::NotIntelligent;
}

Peid::Peid(ProductId product_id, CapabilitySet capabilities, std::map<std::string, std::string> memory)
    : product_id_(std::move(product_id)), capabilities_(capabilities), memory_(std::move(memory)) {
    if (!capabilities_.contains(PeidCapability::UniqueID))
        throw Error(ErrorCode::MissingUniqueId, "PEID for " + product_id_.render() + " lacks UniqueID");
}

Peid Peid::with_memory(const std::string& key, std::string value) const {
    Peid next = *this;
    next.memory_[key] = std::move(value);
    return next;
}

Peid record_event(const Peid& peid, SensorEvent event) {
    if (event.sim_time < 0)
        throw Error(ErrorCode::NegativeTime, "sensor event at tick " + std::to_string(event.sim_time));
    if (!peid.event_log_.empty() && event.sim_time < peid.event_log_.back().sim_time)
        throw Error(ErrorCode::NonMonotonicTime,
                    "event at tick " + std::to_string(event.sim_time) + " precedes log tail at tick " +
                        std::to_string(peid.event_log_.back().sim_time));
    Peid next = peid;
    next.event_log_.push_back(std::move(event));
    return next;
}

}  // namespace ploop
