#include "cnetsched/oracle/combinations.hpp"

#include <algorithm>
#include <tuple>

namespace cnetsched::oracle {

namespace {

bool in_window(TimePoint t, TimePoint from, Slack slack) {
    if (t < from) return false;
    return slack.is_unbounded() || t <= from + slack.value();
}

bool leaves_previous(const Proposal& leg, const PreviousStep& prev) {
    return in_window(leg.slot.start, prev.finish, prev.slack_after);
}

bool reaches_production(const Proposal& leg, const Proposal& prod) {
    return in_window(leg.slot.end, prod.slot.start, prod.slack_after);
}

bool same_transport_ok(const Proposal& a, const Proposal& b) {
    if (a.resource.id != b.resource.id) return !b.required_operation;
    return b.required_operation && *b.required_operation == a.id && b.slot.start - b.setup >= a.slot.end;
}

bool buffered_ok(const Proposal& prod, const Proposal& buf, const Proposal& a, const Proposal& b,
                 const PreviousStep& prev) {
    if (!leaves_previous(a, prev) || !reaches_production(b, prod)) return false;
    const TimePoint into_buffer = a.slot.end - a.unload_time;
    const TimePoint out_of_buffer = b.slot.start + b.load_time;
    if (into_buffer < buf.slot.start) return false;
    if (b.slot.start < a.slot.end) return false;
    if (!buf.slack_after.is_unbounded() && out_of_buffer > buf.slot.end + buf.slack_after.value()) return false;
    return same_transport_ok(a, b);
}

Combination make(const Proposal& prod, RouteKind kind, TimePoint arrival, std::vector<const Proposal*> parts,
                 const Proposal* buffer) {
    Combination c;
    c.production = prod.id;
    c.kind = kind;
    c.price = prod.price;
    for (const Proposal* p : parts) {
        c.legs.push_back(p->id);
        c.price = c.price + p->price;
    }
    if (buffer) {
        c.buffer = buffer->id;
        c.price = c.price + buffer->price;
    }
    c.fulfillment = std::max(prod.slot.start, arrival) + prod.op_duration;
    return c;
}

}  // namespace

std::vector<ProposalId> Combination::ids() const {
    std::vector<ProposalId> rest = legs;
    if (buffer) rest.push_back(*buffer);
    std::sort(rest.begin(), rest.end());
    rest.insert(rest.begin(), production);
    return rest;
}

bool Enumeration::contains(const std::vector<ProposalId>& ids) const {
    std::vector<ProposalId> want = ids;
    if (want.size() > 1) std::sort(want.begin() + 1, want.end());
    return std::any_of(feasible.begin(), feasible.end(), [&](const Combination& c) { return c.ids() == want; });
}

Enumeration enumerate_combinations(const StageProposals& in, const std::optional<PreviousStep>& previous,
                                   Criterion criterion) {
    Enumeration out;
    for (const auto& prod : in.production) {
        if (!previous) {
            out.feasible.push_back(make(prod, RouteKind::release, prod.slot.start, {}, nullptr));
            continue;
        }
        if (prod.kind == ProposalKind::stay) {
            if (prod.resource.id == previous->resource) {
                out.feasible.push_back(make(prod, RouteKind::stay, prod.slot.start, {}, nullptr));
            }
            continue;
        }
        for (const auto& leg : in.transport) {
            if (leg.request_id != "d:" + prod.id) continue;
            if (leaves_previous(leg, *previous) && reaches_production(leg, prod)) {
                out.feasible.push_back(make(prod, RouteKind::direct, leg.slot.end, {&leg}, nullptr));
            }
        }
        for (const auto& buf : in.buffer) {
            if (buf.request_id != prod.id) continue;
            for (const auto& a : in.transport) {
                if (a.request_id != "a:" + buf.id) continue;
                for (const auto& b : in.transport) {
                    if (b.request_id != "b:" + buf.id) continue;
                    if (buffered_ok(prod, buf, a, b, *previous)) {
                        out.feasible.push_back(make(prod, RouteKind::buffered, b.slot.end, {&a, &b}, &buf));
                    }
                }
            }
        }
    }

    auto key = [criterion](const Combination& c) {
        const auto when = c.fulfillment.time_since_epoch().count();
        const auto cost = c.price.value.count();
        return criterion == Criterion::lowest_price ? std::tuple(cost, when, c.ids()) : std::tuple(when, cost, c.ids());
    };
    for (const auto& c : out.feasible) {
        if (!out.best || key(c) < key(*out.best)) out.best = c;
    }
    return out;
}

}  // namespace cnetsched::oracle
