#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace ploop {

/// Simulation time. Integer ticks, never wall-clock.
using Tick = std::int64_t;

/// String-backed identifier with its own type per domain concept so node
/// and agent ids cannot be mixed up.
template <class Tag>
class StrongId {
public:
    StrongId() = default;
    explicit StrongId(std::string value) : value_(std::move(value)) {}

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    friend auto operator<=>(const StrongId&, const StrongId&) = default;
    friend bool operator==(const StrongId&, const StrongId&) = default;

    friend std::ostream& operator<<(std::ostream& os, const StrongId& id) { return os << id.value_; }

private:
    std::string value_;
};

struct NodeIdTag {};
struct AgentIdTag {};

using NodeId = StrongId<NodeIdTag>;
using AgentId = StrongId<AgentIdTag>;

using MessageId = std::uint64_t;

}  // namespace ploop

template <class Tag>
struct std::hash<ploop::StrongId<Tag>> {
    std::size_t operator()(const ploop::StrongId<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
