#include "cnetsched/oracle/occupancy.hpp"

#include <algorithm>

namespace cnetsched::oracle {

namespace {

bool carries_workpiece(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::unload:
        case SegmentKind::operation:
        case SegmentKind::load:
        case SegmentKind::travel:
        case SegmentKind::buffer_hold:
        case SegmentKind::blocked_hold:
            return true;
        case SegmentKind::setup:
        case SegmentKind::maintenance:
            return false;
    }
    return false;
}

}  // namespace

std::int64_t horizon_seconds(const std::vector<ResourceView>& resources) {
    std::int64_t h = 0;
    for (const auto& r : resources) {
        for (const auto& e : r.entries) {
            for (const auto& s : e.segments) h = std::max(h, to_seconds(s.interval.end));
        }
    }
    return h + 60;
}

std::vector<Violation> occupancy_check(const std::vector<ResourceView>& resources) {
    const std::int64_t horizon = horizon_seconds(resources);
    std::vector<Violation> out;

    for (const auto& r : resources) {
        const auto n = static_cast<std::size_t>(horizon);
        std::vector<int> bookings(n, 0);
        std::vector<int> holder(n, -1);
        std::vector<char> mixed(n, 0);
        std::vector<std::string> orders;

        auto hold = [&](std::size_t t, int order) {
            if (holder[t] < 0) {
                holder[t] = order;
            } else if (holder[t] != order) {
                mixed[t] = 1;
            }
        };

        for (const auto& e : r.entries) {
            auto it = std::find(orders.begin(), orders.end(), e.order_id);
            const int order = static_cast<int>(it - orders.begin());
            if (it == orders.end()) orders.push_back(e.order_id);

            auto clamp = [&](TimePoint p) {
                return static_cast<std::size_t>(std::clamp<std::int64_t>(to_seconds(p), 0, horizon));
            };
            for (const auto& s : e.segments) {
                for (std::size_t t = clamp(s.interval.start); t < clamp(s.interval.end); ++t) {
                    bookings[t] += 1;
                    if (carries_workpiece(s.kind)) hold(t, order);
                }
            }
            if (e.open_tail) {
                for (std::size_t t = clamp(e.span_end()); t < n; ++t) {
                    bookings[t] += 1;
                    hold(t, order);
                }
            }
        }

        bool in_overlap = false;
        bool in_mixed = false;
        for (std::size_t t = 0; t < n; ++t) {
            std::string what;
            const bool overlap = bookings[t] > 1;
            if (overlap && !in_overlap) what = std::to_string(bookings[t]) + " bookings at once";
            in_overlap = overlap;

            const bool many = mixed[t] != 0;
            if (many && !in_mixed) {
                if (!what.empty()) what += ", ";
                what += r.kind == ResourceKind::transport ? "transport carries two workpieces" : "holds two workpieces";
            }
            in_mixed = many;
            if (!what.empty()) out.push_back({r.id, static_cast<std::int64_t>(t), std::move(what)});
        }
    }
    return out;
}

}  // namespace cnetsched::oracle
