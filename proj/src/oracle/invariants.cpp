#include "cnetsched/oracle/invariants.hpp"

#include <algorithm>
#include <map>

namespace cnetsched::oracle {

namespace {

bool on_workpiece(SegmentKind kind) {
    return kind != SegmentKind::setup && kind != SegmentKind::maintenance;
}

struct Holding {
    std::size_t resource;
    SegmentKind kind;
};

const Segment* segment(const BookingEntry& e, SegmentKind kind) {
    for (const auto& s : e.segments) {
        if (s.kind == kind) return &s;
    }
    return nullptr;
}

std::string seconds_text(std::int64_t s) { return format_time(TimePoint{} + Duration(s)); }

}  // namespace

std::vector<ResourceView> views_of(const std::vector<ResourceSnapshot>& resources) {
    std::vector<ResourceView> out;
    for (const auto& r : resources) {
        ResourceKind kind = ResourceKind::production;
        if (r.type == ResourceType::buffer) kind = ResourceKind::buffer;
        if (r.type == ResourceType::transport) kind = ResourceKind::transport;
        out.push_back({r.id, kind, r.entries});
    }
    return out;
}

std::vector<Violation> workpiece_check(const std::vector<ResourceView>& resources) {
    const std::int64_t horizon = horizon_seconds(resources);
    // order -> second -> holdings
    std::map<std::string, std::map<std::int64_t, std::vector<Holding>>> where;
    for (std::size_t ri = 0; ri < resources.size(); ++ri) {
        for (const auto& e : resources[ri].entries) {
            auto& timeline = where[e.order_id];
            for (const auto& s : e.segments) {
                if (!on_workpiece(s.kind)) continue;
                for (auto t = to_seconds(s.interval.start); t < to_seconds(s.interval.end); ++t) {
                    timeline[t].push_back({ri, s.kind});
                }
            }
            if (e.open_tail) {
                for (auto t = to_seconds(e.span_end()); t < horizon; ++t) {
                    timeline[t].push_back({ri, SegmentKind::blocked_hold});
                }
            }
        }
    }

    std::vector<Violation> out;
    for (const auto& [order, timeline] : where) {
        bool reported = false;
        for (const auto& [t, hs] : timeline) {
            bool ok = hs.size() <= 1;
            if (hs.size() == 2) {
                const bool same = hs[0].kind == hs[1].kind &&
                                  (hs[0].kind == SegmentKind::load || hs[0].kind == SegmentKind::unload);
                const bool one_transport = (resources[hs[0].resource].kind == ResourceKind::transport) !=
                                           (resources[hs[1].resource].kind == ResourceKind::transport);
                ok = same && one_transport;
            }
            if (!ok && !reported) {
                out.push_back({resources[hs[0].resource].id, t,
                               "workpiece of " + order + " on " + std::to_string(hs.size()) + " resources at " +
                                   seconds_text(t)});
            }
            reported = !ok;
        }
    }
    return out;
}

std::vector<Violation> handover_check(const std::vector<ResourceView>& resources,
                                     const std::set<std::string>& orders) {
    auto is_order = [&](const std::string& id) { return orders.contains(id); };
    struct Place {
        const ResourceView* resource;
        const BookingEntry* entry;
    };
    // (order, label) -> place; production labels are "i", buffer labels "B:i".
    std::map<std::pair<std::string, std::string>, Place> places;
    for (const auto& r : resources) {
        if (r.kind == ResourceKind::transport) continue;
        for (const auto& e : r.entries) {
            if (is_order(e.order_id)) places[{e.order_id, e.step_label}] = {&r, &e};
        }
    }

    std::vector<Violation> out;
    for (const auto& r : resources) {
        if (r.kind != ResourceKind::transport) continue;
        for (const auto& e : r.entries) {
            if (!is_order(e.order_id) || e.step_label.rfind("T:", 0) != 0) continue;
            const auto comma = e.step_label.find(',');
            const std::string from = e.step_label.substr(2, comma - 2);
            const std::string to = e.step_label.substr(comma + 1);
            const Segment* load = segment(e, SegmentKind::load);
            const Segment* unload = segment(e, SegmentKind::unload);
            auto flag = [&](const std::string& what) {
                out.push_back({r.id, load ? to_seconds(load->interval.start) : 0, e.order_id + " " + e.step_label + ": " + what});
            };
            if (!load || !unload) {
                flag("leg without load or unload");
                continue;
            }
            // Stage number of the production the leg serves.
            const std::string stage = to == "B" ? std::to_string(std::stoi(from) + 1) : to;
            const std::string src_label = from == "B" ? "B:" + stage : from;
            const std::string dst_label = to == "B" ? "B:" + stage : to;

            const auto src = places.find({e.order_id, src_label});
            if (src == places.end()) {
                flag("source " + src_label + " not booked");
            } else {
                const Segment* src_load = segment(*src->second.entry, SegmentKind::load);
                if (!src_load || src_load->interval != load->interval) {
                    flag("load does not match " + src->second.resource->id);
                }
                if (src->second.entry->span_end() < load->interval.end) {
                    flag(src->second.resource->id + " released before the load ended");
                }
            }
            const auto dst = places.find({e.order_id, dst_label});
            if (dst == places.end()) {
                flag("destination " + dst_label + " not booked");
            } else {
                const Segment* dst_unload = segment(*dst->second.entry, SegmentKind::unload);
                if (!dst_unload || dst_unload->interval != unload->interval) {
                    flag("unload does not match " + dst->second.resource->id);
                }
            }
        }
    }
    return out;
}

std::vector<Violation> stability_check(const std::vector<ResourceSnapshot>& resources) {
    std::vector<Violation> out;
    for (const auto& r : resources) {
        for (const auto& c : r.committed) {
            const auto it = std::find_if(r.entries.begin(), r.entries.end(), [&](const BookingEntry& e) {
                return e.order_id == c.order_id && e.step_label == c.step_label;
            });
            if (it == r.entries.end()) {
                out.push_back({r.id, to_seconds(c.core_start()), c.order_id + " " + c.step_label + " vanished"});
            } else if (it->core() != c.core()) {
                out.push_back({r.id, to_seconds(c.core_start()),
                               c.order_id + " " + c.step_label + " core moved from " + to_string(c.core()) + " to " +
                                   to_string(it->core())});
            }
        }
    }
    return out;
}

std::vector<Violation> full_check(const std::vector<ResourceSnapshot>& resources) {
    const auto views = views_of(resources);
    std::set<std::string> orders;
    for (const auto& r : resources) {
        for (const auto& c : r.committed) orders.insert(c.order_id);
    }
    std::vector<Violation> out = occupancy_check(views);
    for (auto more : {workpiece_check(views), handover_check(views, orders), stability_check(resources)}) {
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

}  // namespace cnetsched::oracle
