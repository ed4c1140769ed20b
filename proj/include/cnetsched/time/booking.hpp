#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnetsched/time/time.hpp"

namespace cnetsched {

enum class SegmentKind {
    setup,
    unload,
    operation,
    load,
    travel,
    maintenance,
    buffer_hold,
    blocked_hold,
};

std::string_view to_string(SegmentKind kind);
SegmentKind segment_kind_from_string(std::string_view name);

struct Segment {
    SegmentKind kind;
    TimeInterval interval;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// One booking in a resource calendar. Carries workpiece metadata, not just intervals.
///
/// The first segment may be a setup segment; it is the only part of an entry that later
/// insertions are allowed to change (time increment on the successor). Everything from the
/// first non-setup segment up to the end of the operation (or the whole entry when it has no
/// operation segment) is the booked core and never moves once committed.
struct BookingEntry {
    std::string order_id;
    /// Production step "i", buffer "B:i", transport "T:i,i+1" / "T:i,B" / "T:B,i+1".
    std::string step_label;
    std::vector<Segment> segments;
    /// Production booking whose departure is not yet known: blocks everything after the operation.
    bool open_tail = false;
    /// State the resource must be in to start the core (product type, or pickup site for transports).
    std::string start_state;
    /// State the resource is left in (product type, or drop-off site for transports).
    std::string end_state;

    TimePoint span_start() const;
    TimePoint span_end() const;
    TimeInterval span() const { return {span_start(), span_end()}; }

    bool has_setup() const;
    Duration setup_length() const;
    /// Start of the first non-setup segment.
    TimePoint core_start() const;
    TimePoint core_end() const;
    TimeInterval core() const { return {core_start(), core_end()}; }

    const Segment* find(SegmentKind kind) const;

    /// Throws std::invalid_argument unless segments are non-empty, contiguous and ordered.
    void validate() const;

    friend bool operator==(const BookingEntry&, const BookingEntry&) = default;
};

}  // namespace cnetsched
