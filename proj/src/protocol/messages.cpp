#include "cnetsched/protocol/messages.hpp"

namespace cnetsched {

std::string_view to_string(StageKind kind) {
    switch (kind) {
        case StageKind::production: return "production";
        case StageKind::shared_resource: return "shared-resource";
        case StageKind::buffer: return "buffer";
        case StageKind::transport: return "transport";
    }
    return "unknown";
}

std::string_view to_string(ProposalKind kind) {
    switch (kind) {
        case ProposalKind::production: return "production";
        case ProposalKind::stay: return "stay";
        case ProposalKind::buffer: return "buffer";
        case ProposalKind::transport: return "transport";
    }
    return "unknown";
}

std::string_view variant_name(const Message& m) {
    struct Visitor {
        std::string_view operator()(const Cfp&) const { return "Cfp"; }
        std::string_view operator()(const ProposalBatch&) const { return "Proposal"; }
        std::string_view operator()(const AcceptProposal&) const { return "AcceptProposal"; }
        std::string_view operator()(const RejectProposal&) const { return "RejectProposal"; }
        std::string_view operator()(const InformDeparture&) const { return "InformDeparture"; }
        std::string_view operator()(const InformFailure&) const { return "InformFailure"; }
    };
    return std::visit(Visitor{}, m);
}

}  // namespace cnetsched
