#pragma once

#include <set>
#include <string>
#include <vector>

#include "cnetsched/agents/resource_agents.hpp"
#include "cnetsched/oracle/occupancy.hpp"

namespace cnetsched::oracle {

std::vector<ResourceView> views_of(const std::vector<ResourceSnapshot>& resources);

/// Per order and second: the workpiece sits on at most one resource, except during a
/// handover where a transport and the resource it loads from or unloads to share the
/// same load or unload instant.
std::vector<Violation> workpiece_check(const std::vector<ResourceView>& resources);

/// Transport legs must mirror the load and unload segments of the resources at both ends,
/// and the source must stay occupied until the load has finished. Only legs of `orders` are checked.
std::vector<Violation> handover_check(const std::vector<ResourceView>& resources,
                                     const std::set<std::string>& orders);

/// Every committed booking is still present with an identical core.
std::vector<Violation> stability_check(const std::vector<ResourceSnapshot>& resources);

/// All of the above plus occupancy_check, for the orders that committed bookings.
std::vector<Violation> full_check(const std::vector<ResourceSnapshot>& resources);

}  // namespace cnetsched::oracle
