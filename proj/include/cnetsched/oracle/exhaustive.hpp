#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnetsched/harness/scenario.hpp"
#include "cnetsched/oracle/occupancy.hpp"

namespace cnetsched::oracle {

class OutOfBounds : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ExhaustiveResult {
    bool feasible = false;
    /// False when the node limit stopped the search early.
    bool complete = true;
    /// Latest operation end over all orders.
    TimePoint makespan;
    std::map<std::string, TimePoint> finish;
    std::uint64_t nodes = 0;
    /// Bookings of the best schedule found, in the same shape the agents produce.
    std::vector<ResourceView> schedule;
};

/// Branch-and-bound over every stage interleaving, machine choice, route (stay, direct,
/// buffered) and left-justified placement time of a tiny scenario: at most two orders, three
/// production resources, one buffer and one transport. Blocking, capacity, setups, crane
/// travel and sequential stages follow the same rules as the agents, but the windows and the
/// buffering threshold the agents use to prune their search are not applied.
ExhaustiveResult exhaustive_schedule(const Scenario& scenario, std::uint64_t node_limit = 2'000'000);

}  // namespace cnetsched::oracle
