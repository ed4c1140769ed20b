#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cnetsched/protocol/stage.hpp"
#include "cnetsched/runtime/agent.hpp"

namespace cnetsched {

struct OrderPlan {
    std::string order_id;
    std::string product;
    /// Operation names, one per stage.
    std::vector<std::string> steps;
    /// Earliest start of the first operation.
    TimePoint release;
};

struct OrderAgentConfig {
    ScheduleParams params;
    Duration unload_estimate{0};
    Duration load_estimate{0};
    KernelTime stage_timeout{0};
    Criterion criterion = Criterion::earliest_fulfillment;
    /// Renegotiations of a stage that ended without any proposal or feasible combination.
    int stage_attempts = 3;
};

/// Drives one order through its stages, one StageNegotiation at a time.
class OrderAgent : public Agent {
public:
    OrderAgent(AgentId id, OrderPlan plan, OrderAgentConfig config);

    void on_start(Context& ctx) override;
    void on_message(const Envelope& e, Context& ctx) override;
    void on_timer(int token, Context& ctx) override;

    const OrderOutcome& outcome() const { return outcome_; }
    bool finished() const { return outcome_.status != OrderStatus::pending; }
    /// Phase history of every negotiation run so far, in order.
    const std::vector<std::vector<Phase>>& phase_log() const { return phase_log_; }

private:
    void begin_stage(Context& ctx);
    void feed(const StageEvent& event, Context& ctx);
    void stage_done(Context& ctx);
    void stage_failed(Context& ctx);
    void finish(OrderStatus status, std::string reason, Context& ctx);
    void abort_negotiation(Context& ctx);
    void disarm(Context& ctx);

    struct Tail {
        AgentId resource;
        TimePoint finish;
        ProposalId production;
    };

    OrderPlan plan_;
    OrderAgentConfig config_;
    OrderOutcome outcome_;
    std::optional<StageNegotiation> active_;
    std::optional<PreviousCommit> previous_;
    std::optional<Tail> tail_;
    std::size_t cursor_ = 0;
    int attempts_ = 0;
    int negotiation_seq_ = 0;
    std::optional<int> armed_;
    std::vector<std::vector<Phase>> phase_log_;
};

}  // namespace cnetsched
