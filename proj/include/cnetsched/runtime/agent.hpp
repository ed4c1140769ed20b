#pragma once

#include <string>
#include <vector>

#include "cnetsched/protocol/messages.hpp"
#include "cnetsched/selector/selector.hpp"

namespace cnetsched {

class Directory;

enum class OrderStatus { pending, done, failed };

std::string_view to_string(OrderStatus status);

struct StageRecord {
    int stage = 0;
    std::string operation;
    AgentId resource;
    RouteKind route = RouteKind::release;
    TimePoint start;
    TimePoint finish;
    std::vector<ProposalId> accepted;
    std::uint64_t proposals_received = 0;
};

struct OrderOutcome {
    std::string order_id;
    std::string product;
    OrderStatus status = OrderStatus::pending;
    std::string reason;
    KernelTime started{0};
    KernelTime finished{0};
    std::vector<StageRecord> stages;
};

/// Services the execution kernel offers to the agent it is currently running.
class Context {
public:
    virtual ~Context() = default;
    virtual KernelTime now() const = 0;
    virtual void send(Envelope e) = 0;
    /// Delivers on_timer(token) to the calling agent at `at` (or right away when already past).
    virtual void set_timer(KernelTime at, int token) = 0;
    virtual void cancel_timer(int token) = 0;
    virtual Directory& directory() = 0;
    virtual void order_finished(const OrderOutcome& outcome) = 0;
    virtual void violation(const std::string& what) = 0;
};

/// One sequential message loop. The kernel never runs two handlers of one agent at once.
class Agent {
public:
    explicit Agent(AgentId id) : id_(std::move(id)) {}
    virtual ~Agent() = default;
    Agent(const Agent&) = delete;
    Agent& operator=(const Agent&) = delete;

    const AgentId& id() const { return id_; }

    virtual void on_start(Context&) {}
    virtual void on_message(const Envelope& e, Context& ctx) = 0;
    virtual void on_timer(int, Context&) {}

private:
    AgentId id_;
};

}  // namespace cnetsched
