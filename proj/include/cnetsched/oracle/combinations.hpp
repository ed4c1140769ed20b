#pragma once

#include <optional>
#include <vector>

#include "cnetsched/selector/selector.hpp"

namespace cnetsched::oracle {

struct Combination {
    ProposalId production;
    RouteKind kind = RouteKind::direct;
    std::optional<ProposalId> buffer;
    std::vector<ProposalId> legs;
    TimePoint fulfillment;
    Price price;

    /// Production id first, then legs and buffer, sorted.
    std::vector<ProposalId> ids() const;
};

struct Enumeration {
    std::vector<Combination> feasible;
    std::optional<Combination> best;

    bool contains(const std::vector<ProposalId>& ids) const;
};

/// Brute force over every (production, buffer, legs) tuple. Independent of the selector's
/// own consistency rules; shares only the request-id conventions of the stage protocol.
Enumeration enumerate_combinations(const StageProposals& proposals, const std::optional<PreviousStep>& previous,
                                   Criterion criterion = Criterion::earliest_fulfillment);

}  // namespace cnetsched::oracle
