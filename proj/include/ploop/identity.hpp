#pragma once

#include <array>
#include <bitset>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ploop/types.hpp"

namespace ploop {

/// ID@URI product identity. The rendered form `serial@uri` is the canonical
/// representation written to every log and file.
class ProductId {
public:
    const std::string& serial() const noexcept { return serial_; }
    const std::string& uri() const noexcept { return uri_; }

    std::string render() const { return serial_ + "@" + uri_; }

    friend auto operator<=>(const ProductId&, const ProductId&) = default;
    friend bool operator==(const ProductId&, const ProductId&) = default;

private:
    ProductId(std::string serial, std::string uri) : serial_(std::move(serial)), uri_(std::move(uri)) {}

    friend ProductId mint_product_id(std::string_view serial, std::string_view uri);

    std::string serial_;
    std::string uri_;
};

/// Throws Error{MalformedSerial} or Error{MalformedURI}.
ProductId mint_product_id(std::string_view serial, std::string_view uri);

/// Inverse of ProductId::render. Throws Error{Malformed}.
ProductId parse_product_id(std::string_view rendered);

/// True when `uri` carries a scheme (`scheme:rest` with non-empty rest).
bool is_absolute_uri(std::string_view uri);

enum class PeidCapability {
    UniqueID,
    Communication,
    SelfStorage,
    FeatureLanguage,
    DecisionMaking,
};

inline constexpr std::array<PeidCapability, 5> kAllCapabilities = {
    PeidCapability::UniqueID,      PeidCapability::Communication,  PeidCapability::SelfStorage,
    PeidCapability::FeatureLanguage, PeidCapability::DecisionMaking,
};

std::string_view to_string(PeidCapability cap);
std::optional<PeidCapability> capability_from_string(std::string_view name);

/// Small value set over the five capabilities.
class CapabilitySet {
public:
    CapabilitySet() = default;
    CapabilitySet(std::initializer_list<PeidCapability> caps) {
        for (auto c : caps) insert(c);
    }

    static CapabilitySet from_mask(unsigned mask) {
        CapabilitySet s;
        s.bits_ = std::bitset<5>(mask & 0x1Fu);
        return s;
    }
    static CapabilitySet all() { return from_mask(0x1Fu); }

    void insert(PeidCapability c) { bits_.set(static_cast<std::size_t>(c)); }
    bool contains(PeidCapability c) const { return bits_.test(static_cast<std::size_t>(c)); }
    bool includes(const CapabilitySet& other) const { return (bits_ & other.bits_) == other.bits_; }
    std::size_t size() const { return bits_.count(); }
    unsigned mask() const { return static_cast<unsigned>(bits_.to_ulong()); }

    friend bool operator==(const CapabilitySet&, const CapabilitySet&) = default;

private:
    std::bitset<5> bits_;
};

enum class IntelligenceLevel { NotIntelligent, Level1, Level2 };

std::string_view to_string(IntelligenceLevel level);

/// Level2 needs all five properties, Level1 the first three (identity,
/// communication, self storage).
IntelligenceLevel classify_intelligence(const CapabilitySet& caps);

enum class IntelligenceChannel { ThroughNetwork, AtObject };
enum class IntelligenceGranularity { Item, Container };

/// Descriptive metadata only; the simulator does not branch on it.
struct IntelligenceLocation {
    IntelligenceChannel channel = IntelligenceChannel::ThroughNetwork;
    IntelligenceGranularity granularity = IntelligenceGranularity::Item;

    friend bool operator==(const IntelligenceLocation&, const IntelligenceLocation&) = default;
};

struct SensorEvent {
    std::string sensor;
    double value = 0.0;
    std::string unit;
    Tick sim_time = 0;

    friend bool operator==(const SensorEvent&, const SensorEvent&) = default;
};

/// Product embedded information device. Copy-on-update: record_event
/// returns a new PEID and leaves the argument untouched.
class Peid {
public:
    /// Throws Error{MissingUniqueId} when `capabilities` lacks UniqueID.
    Peid(ProductId product_id, CapabilitySet capabilities,
         std::map<std::string, std::string> memory = {});

    const ProductId& product_id() const noexcept { return product_id_; }
    const CapabilitySet& capabilities() const noexcept { return capabilities_; }
    const std::map<std::string, std::string>& memory() const noexcept { return memory_; }
    const std::vector<SensorEvent>& event_log() const noexcept { return event_log_; }
    IntelligenceLevel intelligence() const { return classify_intelligence(capabilities_); }

    Peid with_memory(const std::string& key, std::string value) const;

    friend Peid record_event(const Peid& peid, SensorEvent event);

private:
    ProductId product_id_;
    CapabilitySet capabilities_;
    std::map<std::string, std::string> memory_;
    std::vector<SensorEvent> event_log_;
};

/// Throws Error{NegativeTime} or Error{NonMonotonicTime}.
Peid record_event(const Peid& peid, SensorEvent event);

}  // namespace ploop
