#include "ploop/node.hpp"

namespace ploop {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Manufacturer: return "Manufacturer";
        case NodeKind::RepairGarage: return "RepairGarage";
        case NodeKind::RecyclingEnterprise: return "RecyclingEnterprise";
        case NodeKind::CustomerSite: return "CustomerSite";
        case NodeKind::ProductEmbedded: return "ProductEmbedded";
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
    for (auto k : kAllNodeKinds)
        if (to_string(k) == name) return k;
    return std::nullopt;
}

}  // namespace ploop
