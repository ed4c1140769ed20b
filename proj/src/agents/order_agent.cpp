#include "cnetsched/agents/order_agent.hpp"

#include <map>

#include "cnetsched/agents/directory.hpp"

namespace cnetsched {

namespace {

constexpr int kTokenStride = 1 << 16;

}  // namespace

std::string_view to_string(OrderStatus status) {
    switch (status) {
        case OrderStatus::pending: return "pending";
        case OrderStatus::done: return "done";
        case OrderStatus::failed: return "failed";
    }
    return "unknown";
}

OrderAgent::OrderAgent(AgentId id, OrderPlan plan, OrderAgentConfig config)
    : Agent(std::move(id)), plan_(std::move(plan)), config_(config) {
    outcome_.order_id = plan_.order_id;
    outcome_.product = plan_.product;
}

void OrderAgent::on_start(Context& ctx) {
    outcome_.started = ctx.now();
    if (plan_.steps.empty()) {
        finish(OrderStatus::done, {}, ctx);
        return;
    }
    begin_stage(ctx);
}

void OrderAgent::begin_stage(Context& ctx) {
    StagePlan sp;
    sp.order_id = plan_.order_id;
    sp.order_agent = id();
    sp.product = plan_.product;
    sp.stage = static_cast<int>(cursor_) + 1;
    sp.last_stage = cursor_ + 1 == plan_.steps.size();
    sp.operation = plan_.steps[cursor_];
    sp.previous = previous_;
    sp.release = plan_.release;
    sp.params = config_.params;
    sp.unload_estimate = config_.unload_estimate;
    sp.load_estimate = config_.load_estimate;
    sp.stage_timeout = config_.stage_timeout;
    sp.criterion = config_.criterion;

    ++negotiation_seq_;
    active_ = start_stage(std::move(sp));
    phase_log_.emplace_back();
    auto& dir = ctx.directory();
    DirectoryResult found{dir.search(plan_.steps[cursor_]), dir.search(Directory::kBuffer),
                          dir.search(Directory::kTransport)};
    feed(found, ctx);
}

void OrderAgent::feed(const StageEvent& event, Context& ctx) {
    auto [next, out] = advance_stage(std::move(*active_), event, ctx.now());
    active_ = std::move(next);
    phase_log_.back() = active_->history;
    for (auto& m : out.messages) ctx.send(std::move(m));
    if (out.timer) {
        if (armed_) ctx.cancel_timer(*armed_);
        armed_ = negotiation_seq_ * kTokenStride + out.timer->token;
        ctx.set_timer(out.timer->at, *armed_);
    }
    for (const auto& v : out.violations) ctx.violation(id() + ": " + v);
    if (active_->phase == Phase::Done) {
        stage_done(ctx);
    } else if (active_->phase == Phase::Failed) {
        stage_failed(ctx);
    }
}

void OrderAgent::disarm(Context& ctx) {
    if (armed_) ctx.cancel_timer(*armed_);
    armed_.reset();
}

void OrderAgent::stage_done(Context& ctx) {
    const StageCommit& c = *active_->commit;
    StageRecord rec;
    rec.stage = active_->plan.stage;
    rec.operation = active_->plan.operation;
    rec.resource = c.resource;
    rec.route = c.route;
    rec.start = c.start;
    rec.finish = c.finish;
    rec.accepted = c.selection.accept;
    rec.proposals_received = active_->received.all_ids().size();
    outcome_.stages.push_back(std::move(rec));

    previous_ = PreviousCommit{c.resource, c.site, c.location, c.finish, c.slack_after};
    tail_ = Tail{c.resource, c.finish, c.selection.winner.production.id};
    disarm(ctx);
    active_.reset();
    attempts_ = 0;
    ++cursor_;
    if (cursor_ == plan_.steps.size()) {
        // The last commit already told the resource that the workpiece leaves at finish.
        tail_.reset();
        finish(OrderStatus::done, {}, ctx);
        return;
    }
    begin_stage(ctx);
}

void OrderAgent::stage_failed(Context& ctx) {
    std::string reason = active_->failure;
    disarm(ctx);
    active_.reset();
    if (++attempts_ < config_.stage_attempts) {
        begin_stage(ctx);
        return;
    }
    finish(OrderStatus::failed,
           "stage " + std::to_string(cursor_ + 1) + " (" + plan_.steps[cursor_] + "): " + reason, ctx);
}

void OrderAgent::abort_negotiation(Context& ctx) {
    if (!active_) return;
    std::map<AgentId, std::vector<ProposalId>> by_agent;
    for (const auto& pid : active_->received.all_ids()) by_agent[active_->proposer.at(pid)].push_back(pid);
    for (auto& [agent, ids] : by_agent) {
        ctx.send(Envelope{id(), agent, plan_.order_id + "/abort", plan_.order_id, active_->plan.stage,
                          RejectProposal{std::move(ids)}});
    }
    disarm(ctx);
    active_.reset();
}

void OrderAgent::finish(OrderStatus status, std::string reason, Context& ctx) {
    if (finished()) return;
    abort_negotiation(ctx);
    if (tail_) {
        ctx.send(Envelope{id(), tail_->resource, plan_.order_id + "/release", plan_.order_id,
                          static_cast<int>(cursor_), InformDeparture{plan_.order_id, tail_->finish,
                                                                     Duration::zero(), false}});
        tail_.reset();
    }
    outcome_.status = status;
    outcome_.reason = std::move(reason);
    outcome_.finished = ctx.now();
    ctx.order_finished(outcome_);
}

void OrderAgent::on_message(const Envelope& e, Context& ctx) {
    if (const auto* failure = std::get_if<InformFailure>(&e.body)) {
        if (tail_ && tail_->production == failure->proposal) tail_.reset();
        finish(OrderStatus::failed, "commit refused by " + e.sender + ": " + failure->reason, ctx);
        return;
    }
    if (active_) {
        feed(e, ctx);
        return;
    }
    // Nothing is negotiating any more: hand back whatever is still offered.
    if (const auto* batch = std::get_if<ProposalBatch>(&e.body); batch && !batch->proposals.empty()) {
        RejectProposal r;
        for (const auto& p : batch->proposals) r.proposals.push_back(p.id);
        ctx.send(Envelope{id(), e.sender, e.conversation_id, plan_.order_id, e.stage, std::move(r)});
    }
    ctx.violation(id() + ": " + std::string(variant_name(e.body)) + " from " + e.sender +
                  " after the negotiation ended");
}

void OrderAgent::on_timer(int token, Context& ctx) {
    if (!active_ || !armed_ || token != *armed_) return;
    armed_.reset();
    feed(DeadlineExpired{token % kTokenStride}, ctx);
}

}  // namespace cnetsched
