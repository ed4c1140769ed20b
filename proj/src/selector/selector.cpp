#include "cnetsched/selector/selector.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace cnetsched {

namespace {

TimePoint unload_start(const Proposal& leg) { return leg.slot.end - leg.unload_time; }
TimePoint load_end(const Proposal& leg) { return leg.slot.start + leg.load_time; }

bool departs_in_time(const Proposal& first_leg, const std::optional<PreviousStep>& previous) {
    if (!previous) return false;
    if (first_leg.slot.start < previous->finish) return false;
    return within(first_leg.slot.start, previous->slack_after.after(previous->finish));
}

bool arrives_in_time(const Proposal& production, TimePoint arrival) {
    if (arrival < production.slot.start) return false;
    return within(arrival, production.slack_after.after(production.slot.start));
}

using Key = std::tuple<std::int64_t, std::int64_t, std::string>;

Key make_key(Criterion c, TimePoint t, Price p, std::string id) {
    const std::int64_t when = to_seconds(t);
    const std::int64_t cost = p.value.count();
    if (c == Criterion::lowest_price) return Key{cost, when, std::move(id)};
    return Key{when, cost, std::move(id)};
}

std::string join_ids(const std::vector<ProposalId>& ids) {
    std::string s;
    for (const auto& id : ids) {
        if (!s.empty()) s += ',';
        s += id;
    }
    return s;
}

}  // namespace

std::string_view to_string(RouteKind kind) {
    switch (kind) {
        case RouteKind::release: return "release";
        case RouteKind::stay: return "stay";
        case RouteKind::direct: return "direct";
        case RouteKind::buffered: return "buffered";
    }
    return "unknown";
}

std::vector<ProposalId> RouteCandidate::ids() const {
    std::vector<ProposalId> out;
    for (const auto& l : legs) out.push_back(l.id);
    if (buffer) out.push_back(buffer->id);
    return out;
}

TimePoint OperationCombination::start(const RouteCandidate& r) const {
    return std::max(production.slot.start, r.arrival);
}

TimePoint OperationCombination::fulfillment(const RouteCandidate& r) const {
    return start(r) + production.op_duration;
}

Price OperationCombination::total_price(const RouteCandidate& r) const {
    return production.price + r.price;
}

std::vector<ProposalId> StageProposals::all_ids() const {
    std::vector<ProposalId> out;
    for (const auto* group : {&production, &buffer, &transport}) {
        for (const auto& p : *group) out.push_back(p.id);
    }
    return out;
}

bool route_consistent(const Proposal& production, const RouteCandidate& route,
                      const std::optional<PreviousStep>& previous) {
    switch (route.kind) {
        case RouteKind::release:
            return !previous && route.legs.empty() && !route.buffer;
        case RouteKind::stay:
            return previous && previous->resource == production.resource.id && route.legs.empty();
        case RouteKind::direct: {
            if (route.legs.size() != 1 || route.buffer) return false;
            const auto& leg = route.legs[0];
            return departs_in_time(leg, previous) && arrives_in_time(production, leg.slot.end) &&
                   route.arrival == leg.slot.end;
        }
        case RouteKind::buffered: {
            if (route.legs.size() != 2 || !route.buffer) return false;
            const auto& a = route.legs[0];
            const auto& b = route.legs[1];
            const auto& buf = *route.buffer;
            if (!departs_in_time(a, previous)) return false;
            if (unload_start(a) < buf.slot.start) return false;
            if (b.slot.start < a.slot.end) return false;
            if (!within(load_end(b), buf.slack_after.after(buf.slot.end))) return false;
            if (!arrives_in_time(production, b.slot.end)) return false;
            if (route.arrival != b.slot.end) return false;
            if (a.resource.id == b.resource.id) return b.required_operation == a.id;
            return !b.required_operation.has_value();
        }
    }
    return false;
}

std::vector<OperationCombination> build_ocs(const StageProposals& proposals,
                                            const std::optional<PreviousStep>& previous) {
    std::vector<OperationCombination> ocs;
    for (const auto& p : proposals.production) {
        OperationCombination oc;
        oc.production = p;

        auto consider = [&](RouteCandidate r) {
            if (route_consistent(p, r, previous)) oc.routes.push_back(std::move(r));
        };

        if (!previous) {
            consider(RouteCandidate{RouteKind::release, std::nullopt, {}, p.slot.start, Price{}});
        } else if (p.kind == ProposalKind::stay) {
            consider(RouteCandidate{RouteKind::stay, std::nullopt, {}, p.slot.start, Price{}});
        } else {
            for (const auto& leg : proposals.transport) {
                if (leg.request_id != "d:" + p.id) continue;
                consider(RouteCandidate{RouteKind::direct, std::nullopt, {leg}, leg.slot.end, leg.price});
            }
            for (const auto& bp : proposals.buffer) {
                if (bp.request_id != p.id) continue;
                for (const auto& a : proposals.transport) {
                    if (a.request_id != "a:" + bp.id) continue;
                    for (const auto& b : proposals.transport) {
                        if (b.request_id != "b:" + bp.id) continue;
                        consider(RouteCandidate{RouteKind::buffered, bp, {a, b}, b.slot.end,
                                                a.price + b.price + bp.price});
                    }
                }
            }
            // Waiting on the previous machine only counts when no buffered route exists.
            const bool buffered = std::any_of(oc.routes.begin(), oc.routes.end(),
                                              [](const RouteCandidate& r) { return r.kind == RouteKind::buffered; });
            if (buffered) {
                std::erase_if(oc.routes, [](const RouteCandidate& r) { return r.kind == RouteKind::direct; });
            }
        }
        ocs.push_back(std::move(oc));
    }
    return ocs;
}

SelectionResult select(std::vector<OperationCombination> ocs, const StageProposals& received,
                       Criterion criterion) {
    std::optional<std::size_t> best_oc;
    Key best_oc_key;

    for (std::size_t oi = 0; oi < ocs.size(); ++oi) {
        auto& oc = ocs[oi];
        std::vector<std::size_t> finalists;

        // Steps 1 and 2 run per buffer proposal.
        std::map<ProposalId, std::vector<std::size_t>> by_buffer;
        for (std::size_t ri = 0; ri < oc.routes.size(); ++ri) {
            const auto& r = oc.routes[ri];
            if (r.kind == RouteKind::buffered) {
                by_buffer[r.buffer->id].push_back(ri);
            } else {
                finalists.push_back(ri);
            }
        }
        for (const auto& [bp_id, group] : by_buffer) {
            std::optional<ProposalId> best_b;
            Key best_b_key;
            for (std::size_t ri : group) {
                const auto& b = oc.routes[ri].legs[1];
                Key k = make_key(criterion, oc.fulfillment(oc.routes[ri]), b.price, b.id);
                if (!best_b || k < best_b_key) {
                    best_b = b.id;
                    best_b_key = std::move(k);
                }
            }
            std::optional<std::size_t> best_a;
            Key best_a_key;
            for (std::size_t ri : group) {
                const auto& r = oc.routes[ri];
                if (r.legs[1].id != *best_b) continue;
                const auto& a = r.legs[0];
                Key k = make_key(criterion, a.slot.end, a.price, a.id);
                if (!best_a || k < best_a_key) {
                    best_a = ri;
                    best_a_key = std::move(k);
                }
            }
            finalists.push_back(*best_a);
        }

        // Step 3: best route of this OC.
        std::optional<std::size_t> best_route;
        Key best_route_key;
        for (std::size_t ri : finalists) {
            const auto& r = oc.routes[ri];
            Key k = make_key(criterion, oc.fulfillment(r), oc.total_price(r), join_ids(r.ids()));
            if (!best_route || k < best_route_key) {
                best_route = ri;
                best_route_key = std::move(k);
            }
        }
        oc.selected = best_route;
        if (!best_route) continue;

        // Step 4: best OC.
        const auto& r = oc.route();
        Key k = make_key(criterion, oc.fulfillment(r), oc.total_price(r),
                         oc.production.id + "|" + join_ids(r.ids()));
        if (!best_oc || k < best_oc_key) {
            best_oc = oi;
            best_oc_key = std::move(k);
        }
    }

    if (!best_oc) {
        throw NoFeasibleCombination(ocs.empty() ? "no production proposal received"
                                                : "no operation combination has a feasible route");
    }

    SelectionResult result;
    result.winner = std::move(ocs[*best_oc]);
    result.accept.push_back(result.winner.production.id);
    for (const auto& id : result.winner.route().ids()) result.accept.push_back(id);
    const std::set<ProposalId> accepted(result.accept.begin(), result.accept.end());
    for (const auto& id : received.all_ids()) {
        if (!accepted.contains(id)) result.reject.push_back(id);
    }
    return result;
}

}  // namespace cnetsched
