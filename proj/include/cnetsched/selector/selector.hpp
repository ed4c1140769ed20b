#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnetsched/protocol/messages.hpp"

namespace cnetsched {

class NoFeasibleCombination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// release: first stage, nothing to move. stay: the workpiece is already on the machine.
enum class RouteKind { release, stay, direct, buffered };

std::string_view to_string(RouteKind kind);

struct RouteCandidate {
    RouteKind kind = RouteKind::direct;
    std::optional<Proposal> buffer;
    /// In travel order: one leg for direct, [into buffer, out of buffer] for buffered.
    std::vector<Proposal> legs;
    /// Unload end at the production resource (the production slot start for release/stay).
    TimePoint arrival;
    /// Price of legs and buffer; the production price is added at OC level.
    Price price;

    std::vector<ProposalId> ids() const;
};

/// One production proposal plus every route that can realize it.
struct OperationCombination {
    Proposal production;
    std::vector<RouteCandidate> routes;
    std::optional<std::size_t> selected;

    const RouteCandidate& route() const { return routes.at(selected.value()); }
    /// Operation start for a route: the arrival, never before the proposed start.
    TimePoint start(const RouteCandidate& r) const;
    TimePoint fulfillment(const RouteCandidate& r) const;
    Price total_price(const RouteCandidate& r) const;
};

/// What the order agent knows about the previous production step.
struct PreviousStep {
    AgentId resource;
    TimePoint finish;
    Slack slack_after = Slack::unbounded();
};

struct StageProposals {
    std::vector<Proposal> production;
    std::vector<Proposal> buffer;
    std::vector<Proposal> transport;

    std::vector<ProposalId> all_ids() const;
};

enum class Criterion { earliest_fulfillment, lowest_price };

/// Builds one OC per production proposal with all temporally consistent routes.
/// `previous` is empty on the first stage.
std::vector<OperationCombination> build_ocs(const StageProposals& proposals,
                                            const std::optional<PreviousStep>& previous);

/// True when the legs and buffer of `route` chain consistently for `production`.
bool route_consistent(const Proposal& production, const RouteCandidate& route,
                      const std::optional<PreviousStep>& previous);

struct SelectionResult {
    OperationCombination winner;
    std::vector<ProposalId> accept;
    std::vector<ProposalId> reject;
};

/// Four-step selection: best outbound buffer leg per (buffer, production) pair, best inbound
/// leg per (previous, buffer) pair, best route per OC, best OC.
/// Throws NoFeasibleCombination when no OC has a route.
SelectionResult select(std::vector<OperationCombination> ocs, const StageProposals& received,
                       Criterion criterion = Criterion::earliest_fulfillment);

}  // namespace cnetsched
