#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cnetsched/agents/order_agent.hpp"
#include "cnetsched/agents/resource_agents.hpp"
#include "cnetsched/harness/scenario.hpp"
#include "cnetsched/protocol/accounting.hpp"
#include "cnetsched/protocol/stage.hpp"
#include "cnetsched/runtime/agent.hpp"

namespace cnetsched {

enum class RunMode { deterministic, concurrent };

std::string_view to_string(RunMode mode);

struct RunOptions {
    RunMode mode = RunMode::deterministic;
    std::uint64_t seed = 1;
    /// Latency of one message hop (logical ticks or wall clock).
    KernelTime hop = std::chrono::milliseconds(1);
    std::optional<KernelTime> limit;
    bool record_trace = true;
};

/// Orders injected at a fixed hosting interval, products drawn from a weighted mix.
struct OrderGenerator {
    std::map<std::string, int> mix;
    int count = 0;
    std::int64_t hosting_interval_ms = 0;
    TimePoint release;
    std::uint64_t seed = 1;
};

std::vector<ScenarioOrder> generate_orders(const OrderGenerator& g);

struct RunReport {
    std::string scenario;
    RunMode mode = RunMode::deterministic;
    std::uint64_t seed = 0;
    ScheduleParams params;
    /// In arrival order.
    std::vector<OrderOutcome> orders;
    MessageCounter messages;
    std::vector<TraceRecord> trace;
    std::vector<ResourceSnapshot> resources;
    std::vector<std::string> violations;
    std::map<std::string, std::vector<std::vector<Phase>>> phases;
    KernelTime elapsed{0};

    std::size_t done() const;
    std::size_t failed() const;
    const OrderOutcome* order(const std::string& id) const;
    const ResourceSnapshot* resource(const std::string& id) const;
};

/// Order agent settings a scenario implies (estimates, timeouts).
OrderAgentConfig order_config(const Scenario& s);

/// Runs every order of the scenario (or of `orders` when given) to completion.
RunReport run(const Scenario& scenario, const RunOptions& options,
              const std::optional<std::vector<ScenarioOrder>>& orders = std::nullopt);

}  // namespace cnetsched
