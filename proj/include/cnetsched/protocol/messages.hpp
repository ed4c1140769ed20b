#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cnetsched/calculus/calculus.hpp"
#include "cnetsched/time/time.hpp"

namespace cnetsched {

using AgentId = std::string;
using ProposalId = std::string;

/// Time of the execution kernel (logical ticks or wall clock), not scenario time.
using KernelTime = std::chrono::microseconds;

enum class StageKind { production, shared_resource, buffer, transport };

std::string_view to_string(StageKind kind);

struct Workpiece {
    std::string order_id;
    std::string product;
    /// Site the workpiece currently sits at (empty before the first operation).
    std::string site;
    Location location;
};

/// One requested production alternative.
struct ProductionRequest {
    std::string alternative_id;
    std::string operation;
    /// Earliest start of the operation itself (unload already finished).
    TimePoint earliest_start;
    Duration unload_estimate{0};
    Duration load_estimate{0};
};

/// Entry and exit windows for buffering in front of one production proposal.
struct BufferRequest {
    /// Production proposal the buffering realizes.
    ProposalId realizes;
    BufferWindows windows;
};

/// One transport leg. The load must start within [es, ls], the unload must end within [ef, lf].
struct TransportLeg {
    std::string leg_id;
    std::string from_site;
    Location from;
    std::string to_site;
    Location to;
    StageWindows windows;
    ProposalId realizes;
    /// Leg whose proposals this leg may chain after on the same transport.
    std::optional<std::string> chains_after;
};

struct Cfp {
    StageKind kind = StageKind::production;
    Workpiece workpiece;
    std::vector<ProductionRequest> production;
    std::vector<BufferRequest> buffer;
    std::vector<TransportLeg> legs;
    KernelTime deadline{0};
};

enum class ProposalKind { production, stay, buffer, transport };

std::string_view to_string(ProposalKind kind);

struct ResourceInfo {
    AgentId id;
    std::string site;
    Location location;
};

struct Proposal {
    ProposalId id;
    ProposalKind kind = ProposalKind::production;
    /// Alternative id, buffer realizes-id or leg id this proposal answers.
    std::string request_id;
    ResourceInfo resource;
    /// Production: [S, F). Buffer: [arrival, earliest exit). Transport: [load start, unload end).
    TimeInterval slot;
    Slack slack_before = Slack::unbounded();
    Slack slack_after = Slack::unbounded();
    /// Setup placed in front of the slot (setup travel for transports).
    Duration setup{0};
    Duration op_duration{0};
    Duration load_time{0};
    Duration unload_time{0};
    Price price;
    std::optional<ProposalId> required_operation;
    std::vector<ProposalId> connected_operations;
};

/// Answer to one CFP. An empty batch is an explicit refusal.
struct ProposalBatch {
    std::vector<Proposal> proposals;
};

struct Acceptance {
    ProposalId proposal;
    /// Binding slot: production [S, F), transport [load start, unload end),
    /// buffer [unload start, load end).
    TimeInterval booked;
    /// Production: unload time of the delivering transport. Buffer: unload of the inbound leg.
    Duration actual_unload{0};
    /// Buffer: load time of the outbound leg.
    Duration actual_load{0};
    std::vector<ProposalId> dependent;
};

struct AcceptProposal {
    std::vector<Acceptance> items;
};

struct RejectProposal {
    std::vector<ProposalId> proposals;
};

struct InformDeparture {
    std::string order_id;
    TimePoint departure;
    Duration load_time{0};
    bool stay_on_machine = false;
};

struct InformFailure {
    ProposalId proposal;
    std::string reason;
};

using Message =
    std::variant<Cfp, ProposalBatch, AcceptProposal, RejectProposal, InformDeparture, InformFailure>;

std::string_view variant_name(const Message& m);

/// One delivery. Several CFPs / accepts / rejects for one receiver travel in one envelope.
struct Envelope {
    AgentId sender;
    AgentId receiver;
    std::string conversation_id;
    std::string order_id;
    int stage = 0;
    Message body;
};

}  // namespace cnetsched
