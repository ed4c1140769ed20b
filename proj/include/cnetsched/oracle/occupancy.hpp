#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cnetsched/time/booking.hpp"

namespace cnetsched::oracle {

enum class ResourceKind { production, buffer, transport };

struct ResourceView {
    std::string id;
    ResourceKind kind = ResourceKind::production;
    std::vector<BookingEntry> entries;
};

struct Violation {
    std::string resource_id;
    std::int64_t second = 0;
    std::string what;
};

/// Per-second scan over [0, horizon end). Open tails extend to the horizon end. Flags every
/// instant where a resource carries more than one booking, holds more than one workpiece, or
/// a transport booking carries more than one workpiece.
std::vector<Violation> occupancy_check(const std::vector<ResourceView>& resources);

/// Latest end of any segment (open tails count from their operation end), plus one minute.
std::int64_t horizon_seconds(const std::vector<ResourceView>& resources);

}  // namespace cnetsched::oracle
