#include "cnetsched/protocol/stage.hpp"

#include <algorithm>

namespace cnetsched {

namespace {

std::string conversation(const StagePlan& plan, StageKind kind) {
    return plan.order_id + "/" + std::to_string(plan.stage) + "/" + std::string(to_string(kind));
}

Envelope envelope(const StagePlan& plan, const AgentId& to, StageKind kind, Message body) {
    return Envelope{plan.order_agent, to, conversation(plan, kind), plan.order_id, plan.stage,
                    std::move(body)};
}

Workpiece workpiece_of(const StagePlan& plan) {
    Workpiece w{plan.order_id, plan.product, {}, {}};
    if (plan.previous) {
        w.site = plan.previous->site;
        w.location = plan.previous->location;
    }
    return w;
}

std::optional<PreviousStep> previous_step(const StagePlan& plan) {
    if (!plan.previous) return std::nullopt;
    return PreviousStep{plan.previous->resource, plan.previous->finish, plan.previous->slack_after};
}

SlotCommitment commitment(const Proposal& p) {
    return SlotCommitment{p.slot.start, p.slot.end, p.slack_after};
}

void enter(StageNegotiation& s, Phase phase) {
    s.phase = phase;
    s.history.push_back(phase);
}

void arm_deadline(StageNegotiation& s, StageOutput& out, KernelTime now) {
    s.deadline = now + s.plan.stage_timeout;
    ++s.timer_token;
    out.timer = TimerRequest{s.deadline, s.timer_token};
}

void reject_all(StageNegotiation& s, StageOutput& out) {
    std::map<AgentId, std::vector<ProposalId>> by_agent;
    for (const auto& id : s.received.all_ids()) by_agent[s.proposer.at(id)].push_back(id);
    for (auto& [agent, ids] : by_agent) {
        out.messages.push_back(envelope(s.plan, agent, StageKind::production,
                                        RejectProposal{std::move(ids)}));
    }
}

void fail(StageNegotiation& s, StageOutput& out, std::string reason) {
    reject_all(s, out);
    s.failure = std::move(reason);
    s.awaiting.clear();
    enter(s, Phase::Failed);
}

void send_round(StageNegotiation& s, StageOutput& out, KernelTime now, Phase phase,
                const std::vector<AgentId>& receivers, Cfp cfp) {
    enter(s, phase);
    arm_deadline(s, out, now);
    cfp.deadline = s.deadline;
    s.awaiting = std::set<AgentId>(receivers.begin(), receivers.end());
    for (const auto& r : receivers) {
        out.messages.push_back(envelope(s.plan, r, cfp.kind, cfp));
    }
}

void commit(StageNegotiation& s, StageOutput& out, SelectionResult sel) {
    enter(s, Phase::Commit);
    const auto& plan = s.plan;
    const auto& oc = sel.winner;
    const auto& route = oc.route();
    const auto& p = oc.production;
    const TimePoint start = oc.start(route);
    const TimePoint finish = oc.fulfillment(route);

    std::map<AgentId, std::vector<ProposalId>> rejects;
    for (const auto& id : sel.reject) rejects[s.proposer.at(id)].push_back(id);
    for (auto& [agent, ids] : rejects) {
        out.messages.push_back(envelope(plan, agent, StageKind::production, RejectProposal{std::move(ids)}));
    }

    if (plan.previous) {
        InformDeparture dep{plan.order_id, {}, Duration::zero(), false};
        if (route.kind == RouteKind::stay) {
            dep.departure = start - p.setup;
            dep.stay_on_machine = true;
        } else {
            const auto& first = route.legs.front();
            dep.departure = first.slot.start + first.load_time;
            dep.load_time = first.load_time;
        }
        out.messages.push_back(envelope(plan, plan.previous->resource, StageKind::production, dep));
    }

    std::map<AgentId, AcceptProposal> accepts;
    Acceptance prod{p.id, {start, finish}, Duration::zero(), Duration::zero(), {}};
    if (!route.legs.empty()) prod.actual_unload = route.legs.back().unload_time;
    accepts[p.resource.id].items.push_back(prod);

    for (const auto& leg : route.legs) {
        Acceptance a{leg.id, leg.slot, Duration::zero(), Duration::zero(), {}};
        for (const auto& other : route.legs) {
            if (other.required_operation == leg.id) a.dependent.push_back(other.id);
            if (leg.required_operation == other.id) a.dependent.push_back(other.id);
        }
        accepts[leg.resource.id].items.push_back(std::move(a));
    }
    if (route.buffer) {
        const auto& in = route.legs[0];
        const auto& outleg = route.legs[1];
        Acceptance b{route.buffer->id,
                     {in.slot.end - in.unload_time, outleg.slot.start + outleg.load_time},
                     in.unload_time,
                     outleg.load_time,
                     {}};
        accepts[route.buffer->resource.id].items.push_back(std::move(b));
    }
    for (auto& [agent, acc] : accepts) {
        out.messages.push_back(envelope(plan, agent, StageKind::production, std::move(acc)));
    }

    if (plan.last_stage) {
        out.messages.push_back(envelope(plan, p.resource.id, StageKind::production,
                                        InformDeparture{plan.order_id, finish, Duration::zero(), false}));
    }

    StageCommit c;
    c.route = route.kind;
    c.resource = p.resource.id;
    c.site = p.resource.site;
    c.location = p.resource.location;
    c.start = start;
    c.finish = finish;
    c.slack_after = p.slack_after.consumed(start - p.slot.start);
    c.selection = std::move(sel);
    s.commit = std::move(c);
    s.awaiting.clear();
    enter(s, Phase::Done);
}

void run_selection(StageNegotiation& s, StageOutput& out) {
    enter(s, Phase::Select);
    auto ocs = build_ocs(s.received, previous_step(s.plan));
    try {
        commit(s, out, select(std::move(ocs), s.received, s.plan.criterion));
    } catch (const NoFeasibleCombination& e) {
        fail(s, out, std::string(e.what()) + " (" + std::to_string(s.received.production.size()) + " production, " +
                         std::to_string(s.received.buffer.size()) + " buffer, " +
                         std::to_string(s.received.transport.size()) + " transport proposals)");
    }
}

void transport_round(StageNegotiation& s, StageOutput& out, KernelTime now) {
    const auto& plan = s.plan;
    const auto& prev = *plan.previous;
    std::vector<TransportLeg> legs;

    for (const auto& p : s.received.production) {
        if (p.kind == ProposalKind::stay) continue;
        const SlotCommitment prod = commitment(p);
        std::vector<const Proposal*> bps;
        for (const auto& bp : s.received.buffer) {
            if (bp.request_id == p.id) bps.push_back(&bp);
        }
        if (s.wants_buffer.contains(p.id) && !bps.empty()) {
            for (const Proposal* bp : bps) {
                try {
                    const SlotCommitment buf = commitment(*bp);
                    auto into = transport_to_buffer_windows(prev.finish, prev.slack_after, buf, prod, plan.params);
                    auto outof = transport_from_buffer_windows(prev.finish, buf, prod, plan.params);
                    if (buf.start > into.es) {
                        // The buffer place frees up after F_prev: both legs shift with it.
                        into.es = buf.start;
                        into.ef = buf.start + plan.params.t_transport_min;
                        if (!within(into.es, into.ls)) continue;
                        outof.es = std::max(outof.es, into.ef + plan.params.t_buffer_min);
                        if (!within(outof.es, outof.ls)) continue;
                    }
                    legs.push_back(TransportLeg{"a:" + bp->id, prev.site, prev.location, bp->resource.site,
                                                bp->resource.location, into, bp->id, std::nullopt});
                    legs.push_back(TransportLeg{"b:" + bp->id, bp->resource.site, bp->resource.location,
                                                p.resource.site, p.resource.location, outof, p.id,
                                                "a:" + bp->id});
                } catch (const InfeasibleWindow&) {
                }
            }
        }
        try {
            const auto w = direct_transport_windows(prev.finish, prev.slack_after, prod, plan.params);
            legs.push_back(TransportLeg{"d:" + p.id, prev.site, prev.location, p.resource.site,
                                        p.resource.location, w, p.id, std::nullopt});
        } catch (const InfeasibleWindow&) {
        }
    }

    if (legs.empty() || s.directory.transports.empty()) {
        run_selection(s, out);
        return;
    }
    Cfp cfp;
    cfp.kind = StageKind::transport;
    cfp.workpiece = workpiece_of(plan);
    cfp.legs = std::move(legs);
    send_round(s, out, now, Phase::AwaitTransport, s.directory.transports, std::move(cfp));
}

void after_production(StageNegotiation& s, StageOutput& out, KernelTime now) {
    if (s.received.production.empty()) {
        fail(s, out, "no capable resource responded");
        return;
    }
    if (!s.plan.previous) {
        run_selection(s, out);
        return;
    }
    const auto& prev = *s.plan.previous;
    std::vector<BufferRequest> requests;
    for (const auto& p : s.received.production) {
        if (p.kind == ProposalKind::stay) continue;
        if (!needs_buffering(prev.finish, p.slot.start, s.plan.params.t_transport_min, s.plan.params)) {
            continue;
        }
        try {
            requests.push_back(BufferRequest{p.id, buffer_windows(prev.finish, commitment(p), s.plan.params)});
            s.wants_buffer.insert(p.id);
        } catch (const InfeasibleWindow&) {
        }
    }
    // The shared-resource round has no participants and is skipped.
    if (!requests.empty() && !s.directory.buffers.empty()) {
        Cfp cfp;
        cfp.kind = StageKind::buffer;
        cfp.workpiece = workpiece_of(s.plan);
        cfp.buffer = std::move(requests);
        send_round(s, out, now, Phase::AwaitBuffer, s.directory.buffers, std::move(cfp));
        return;
    }
    transport_round(s, out, now);
}

void close_round(StageNegotiation& s, StageOutput& out, KernelTime now) {
    s.awaiting.clear();
    switch (s.phase) {
        case Phase::AwaitProduction: after_production(s, out, now); break;
        case Phase::AwaitBuffer: transport_round(s, out, now); break;
        case Phase::AwaitTransport: run_selection(s, out); break;
        default: break;
    }
}

bool expected_kind(Phase phase, ProposalKind kind) {
    switch (phase) {
        case Phase::AwaitProduction: return kind == ProposalKind::production || kind == ProposalKind::stay;
        case Phase::AwaitBuffer: return kind == ProposalKind::buffer;
        case Phase::AwaitTransport: return kind == ProposalKind::transport;
        default: return false;
    }
}

void on_envelope(StageNegotiation& s, StageOutput& out, const Envelope& e, KernelTime now) {
    const auto* batch = std::get_if<ProposalBatch>(&e.body);
    const bool in_round = s.awaiting.contains(e.sender);
    if (batch == nullptr || !in_round) {
        out.violations.push_back(std::string(variant_name(e.body)) + " from " + e.sender + " in phase " +
                                 std::string(to_string(s.phase)) + " dropped");
        if (batch != nullptr && !batch->proposals.empty()) {
            RejectProposal r;
            for (const auto& p : batch->proposals) r.proposals.push_back(p.id);
            out.messages.push_back(envelope(s.plan, e.sender, StageKind::production, std::move(r)));
        }
        return;
    }
    s.awaiting.erase(e.sender);
    for (const auto& p : batch->proposals) {
        if (!expected_kind(s.phase, p.kind) || s.proposer.contains(p.id)) {
            out.violations.push_back("proposal " + p.id + " does not fit phase " +
                                     std::string(to_string(s.phase)));
            out.messages.push_back(envelope(s.plan, e.sender, StageKind::production, RejectProposal{{p.id}}));
            continue;
        }
        s.proposer[p.id] = e.sender;
        switch (p.kind) {
            case ProposalKind::production:
            case ProposalKind::stay: s.received.production.push_back(p); break;
            case ProposalKind::buffer: s.received.buffer.push_back(p); break;
            case ProposalKind::transport: s.received.transport.push_back(p); break;
        }
    }
    if (s.awaiting.empty()) close_round(s, out, now);
}

}  // namespace

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::QueryDirectory: return "QueryDirectory";
        case Phase::AwaitProduction: return "AwaitProduction";
        case Phase::AwaitSharedResource: return "AwaitSharedResource";
        case Phase::AwaitBuffer: return "AwaitBuffer";
        case Phase::AwaitTransport: return "AwaitTransport";
        case Phase::Select: return "Select";
        case Phase::Commit: return "Commit";
        case Phase::Done: return "Done";
        case Phase::Failed: return "Failed";
    }
    return "unknown";
}

StageNegotiation start_stage(StagePlan plan) {
    StageNegotiation s;
    s.plan = std::move(plan);
    return s;
}

std::pair<StageNegotiation, StageOutput> advance_stage(StageNegotiation s, const StageEvent& event,
                                                       KernelTime now) {
    StageOutput out;
    if (const auto* dir = std::get_if<DirectoryResult>(&event)) {
        if (s.phase != Phase::QueryDirectory) {
            out.violations.push_back("directory result outside QueryDirectory");
            return {std::move(s), std::move(out)};
        }
        s.directory = *dir;
        if (s.directory.production.empty()) {
            fail(s, out, "no resource offers operation '" + s.plan.operation + "'");
            return {std::move(s), std::move(out)};
        }
        Cfp cfp;
        cfp.kind = StageKind::production;
        cfp.workpiece = workpiece_of(s.plan);
        ProductionRequest req;
        req.alternative_id = "1";
        req.operation = s.plan.operation;
        if (s.plan.previous) {
            req.earliest_start = s.plan.previous->finish + s.plan.params.t_transport_min;
            req.unload_estimate = s.plan.unload_estimate;
        } else {
            req.earliest_start = s.plan.release;
        }
        req.load_estimate = s.plan.load_estimate;
        cfp.production.push_back(req);
        send_round(s, out, now, Phase::AwaitProduction, s.directory.production, std::move(cfp));
    } else if (const auto* env = std::get_if<Envelope>(&event)) {
        on_envelope(s, out, *env, now);
    } else if (const auto* dl = std::get_if<DeadlineExpired>(&event)) {
        const bool waiting = s.phase == Phase::AwaitProduction || s.phase == Phase::AwaitBuffer ||
                             s.phase == Phase::AwaitTransport;
        if (waiting && dl->token == s.timer_token) close_round(s, out, now);
    }
    return {std::move(s), std::move(out)};
}

}  // namespace cnetsched
