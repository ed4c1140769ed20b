#include "cnetsched/agents/resource_agents.hpp"

namespace cnetsched {

BufferAgent::BufferAgent(BufferConfig config)
    : ResourceAgent(config.id, ResourceType::buffer, config.location, ResourceSchedule{},
                    config.hold_extension) {}

std::vector<ResourceAgent::Offer> BufferAgent::make_offers(const Cfp& cfp, const ResourceSchedule& view,
                                                           const std::string& order_id, int stage) {
    std::vector<Offer> out;
    for (const auto& req : cfp.buffer) {
        const auto& w = req.windows;
        for (const auto& gap : view.gaps()) {
            const TimePoint s = std::max(w.es, gap.start);
            if (!within(s, w.ls)) continue;
            const TimePoint e = std::max(w.ef, s);
            if (!within(e, w.lf)) continue;
            const UpperBound latest = view.latest_end(gap, "");
            if (!within(e, latest)) continue;

            Proposal p;
            p.id = next_proposal_id();
            p.kind = ProposalKind::buffer;
            p.request_id = req.realizes;
            p.resource = info();
            p.slot = {s, e};
            p.slack_before = Slack::finite(s - gap.start);
            p.slack_after = slack_between(e, latest);
            p.price = proposal_price(e - s, Duration::zero(), Duration::zero());

            BookingEntry r{order_id, "B:" + std::to_string(stage), {}, !latest.has_value(), "", ""};
            r.segments.push_back({SegmentKind::buffer_hold, {s, latest.value_or(e)}});
            if (r.segments.back().interval.empty()) r.segments.back().interval.end = s + seconds(1);
            out.push_back(Offer{std::move(p), std::move(r)});
            break;
        }
    }
    return out;
}

std::variant<BookingEntry, std::string> BufferAgent::booking_for(const Acceptance& item,
                                                                 const OfferHold& hold) const {
    const Proposal& offer = hold.offer;
    const TimePoint a = item.booked.start;
    const TimePoint d = item.booked.end;
    if (a < offer.slot.start || !within(d, offer.slack_after.after(offer.slot.end))) {
        return "buffering " + to_string(item.booked) + " outside offer " + to_string(offer.slot) +
               " + " + to_string(offer.slack_after);
    }
    const TimePoint hold_start = a + item.actual_unload;
    const TimePoint hold_end = d - item.actual_load;
    if (hold_start > hold_end) return "buffering " + to_string(item.booked) + " too short for unload and load";
    BookingEntry entry{hold.order_id, hold.reservation.step_label, {}, false, "", ""};
    if (item.actual_unload > Duration::zero()) entry.segments.push_back({SegmentKind::unload, {a, hold_start}});
    if (hold_end > hold_start) entry.segments.push_back({SegmentKind::buffer_hold, {hold_start, hold_end}});
    if (item.actual_load > Duration::zero()) entry.segments.push_back({SegmentKind::load, {hold_end, d}});
    if (entry.segments.empty()) return "empty buffering interval";
    return entry;
}

}  // namespace cnetsched
