#include "cnetsched/time/booking.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace cnetsched {

namespace {

constexpr std::array<std::pair<SegmentKind, std::string_view>, 8> kSegmentNames{{
    {SegmentKind::setup, "setup"},
    {SegmentKind::unload, "unload"},
    {SegmentKind::operation, "operation"},
    {SegmentKind::load, "load"},
    {SegmentKind::travel, "travel"},
    {SegmentKind::maintenance, "maintenance"},
    {SegmentKind::buffer_hold, "buffer-hold"},
    {SegmentKind::blocked_hold, "blocked-hold"},
}};

}  // namespace

std::string_view to_string(SegmentKind kind) {
    for (const auto& [k, name] : kSegmentNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

SegmentKind segment_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kSegmentNames) {
        if (n == name) return k;
    }
    throw std::invalid_argument("unknown segment kind '" + std::string(name) + "'");
}

TimePoint BookingEntry::span_start() const { return segments.front().interval.start; }

TimePoint BookingEntry::span_end() const { return segments.back().interval.end; }

bool BookingEntry::has_setup() const {
    return !segments.empty() && segments.front().kind == SegmentKind::setup;
}

Duration BookingEntry::setup_length() const {
    return has_setup() ? segments.front().interval.length() : Duration::zero();
}

TimePoint BookingEntry::core_start() const {
    return has_setup() ? segments.front().interval.end : span_start();
}

TimePoint BookingEntry::core_end() const {
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        if (it->kind == SegmentKind::operation) return it->interval.end;
    }
    return span_end();
}

const Segment* BookingEntry::find(SegmentKind kind) const {
    for (const auto& s : segments) {
        if (s.kind == kind) return &s;
    }
    return nullptr;
}

void BookingEntry::validate() const {
    if (segments.empty()) {
        throw std::invalid_argument("booking " + order_id + "/" + step_label + " has no segments");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& iv = segments[i].interval;
        if (iv.start > iv.end) {
            throw std::invalid_argument("booking " + order_id + "/" + step_label +
                                        " has an inverted segment " + to_string(iv));
        }
        if (i > 0 && segments[i - 1].interval.end != iv.start) {
            throw std::invalid_argument("booking " + order_id + "/" + step_label +
                                        " has non-contiguous segments");
        }
        if (i > 0 && segments[i].kind == SegmentKind::setup) {
            throw std::invalid_argument("setup segment must come first in " + order_id + "/" +
                                        step_label);
        }
    }
}

}  // namespace cnetsched
