#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "ploop/types.hpp"

namespace ploop {

enum class NodeKind { Manufacturer, RepairGarage, RecyclingEnterprise, CustomerSite, ProductEmbedded };

inline constexpr std::array<NodeKind, 5> kAllNodeKinds = {
    NodeKind::Manufacturer, NodeKind::RepairGarage, NodeKind::RecyclingEnterprise, NodeKind::CustomerSite,
    NodeKind::ProductEmbedded,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

/// Read-only view of the registered nodes.
class NodeDirectory {
public:
    void add(NodeId id, NodeKind kind) { nodes_.emplace(std::move(id), kind); }

    bool contains(const NodeId& id) const { return nodes_.contains(id); }
    std::optional<NodeKind> kind_of(const NodeId& id) const {
        auto it = nodes_.find(id);
        return it == nodes_.end() ? std::nullopt : std::optional(it->second);
    }
    /// Lowest id among nodes of `kind`.
    std::optional<NodeId> first_of_kind(NodeKind kind) const {
        for (const auto& [id, k] : nodes_)
            if (k == kind) return id;
        return std::nullopt;
    }
    std::size_t size() const { return nodes_.size(); }
    const std::map<NodeId, NodeKind>& entries() const { return nodes_; }

private:
    std::map<NodeId, NodeKind> nodes_;
};

}  // namespace ploop
