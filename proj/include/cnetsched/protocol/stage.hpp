#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cnetsched/protocol/messages.hpp"
#include "cnetsched/selector/selector.hpp"

namespace cnetsched {

enum class Phase {
    QueryDirectory,
    AwaitProduction,
    AwaitSharedResource,
    AwaitBuffer,
    AwaitTransport,
    Select,
    Commit,
    Done,
    Failed,
};

std::string_view to_string(Phase phase);

/// The committed previous production step the workpiece currently sits on.
struct PreviousCommit {
    AgentId resource;
    std::string site;
    Location location;
    TimePoint finish;
    Slack slack_after = Slack::unbounded();
};

/// Everything an order agent fixes before negotiating one stage.
struct StagePlan {
    std::string order_id;
    AgentId order_agent;
    std::string product;
    /// 1-based step index in the process plan.
    int stage = 1;
    bool last_stage = false;
    std::string operation;
    std::optional<PreviousCommit> previous;
    /// Earliest operation start of the first stage.
    TimePoint release;
    ScheduleParams params;
    /// Unload time assumed by production resources until the real transport is known.
    Duration unload_estimate{0};
    Duration load_estimate{0};
    KernelTime stage_timeout{0};
    Criterion criterion = Criterion::earliest_fulfillment;
};

struct DirectoryResult {
    std::vector<AgentId> production;
    std::vector<AgentId> buffers;
    std::vector<AgentId> transports;
};

struct DeadlineExpired {
    int token = 0;
};

using StageEvent = std::variant<DirectoryResult, Envelope, DeadlineExpired>;

struct TimerRequest {
    KernelTime at{0};
    int token = 0;
};

struct StageOutput {
    std::vector<Envelope> messages;
    std::optional<TimerRequest> timer;
    /// Dropped or rejected out-of-phase traffic, for logging.
    std::vector<std::string> violations;
};

/// Result of a stage that reached Done.
struct StageCommit {
    SelectionResult selection;
    RouteKind route = RouteKind::release;
    AgentId resource;
    std::string site;
    Location location;
    TimePoint start;
    TimePoint finish;
    Slack slack_after = Slack::unbounded();
};

struct StageNegotiation {
    StagePlan plan;
    Phase phase = Phase::QueryDirectory;
    std::vector<Phase> history{Phase::QueryDirectory};
    DirectoryResult directory;
    std::set<AgentId> awaiting;
    StageProposals received;
    std::map<ProposalId, AgentId> proposer;
    /// Production proposals for which buffering was requested.
    std::set<ProposalId> wants_buffer;
    int timer_token = 0;
    KernelTime deadline{0};
    std::optional<StageCommit> commit;
    std::string failure;
};

StageNegotiation start_stage(StagePlan plan);

/// Pure transition: same state and event always give the same successor and outputs.
std::pair<StageNegotiation, StageOutput> advance_stage(StageNegotiation state,
                                                       const StageEvent& event, KernelTime now);

}  // namespace cnetsched
