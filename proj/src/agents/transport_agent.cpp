#include "cnetsched/agents/resource_agents.hpp"

#include <charconv>

namespace cnetsched {

namespace {

constexpr std::string_view kAtPrefix = "@x=";

std::string leg_label(const std::string& leg_id, int stage) {
    const std::string prev = std::to_string(stage - 1);
    const std::string next = std::to_string(stage);
    if (leg_id.rfind("a:", 0) == 0) return "T:" + prev + ",B";
    if (leg_id.rfind("b:", 0) == 0) return "T:B," + next;
    return "T:" + prev + "," + next;
}

}  // namespace

std::string initial_transport_state(std::int64_t x) { return std::string(kAtPrefix) + std::to_string(x); }

TransportAgent::TransportAgent(TransportConfig config)
    : ResourceAgent(config.id, ResourceType::transport, Location{config.initial_x, 0},
                    ResourceSchedule(initial_transport_state(config.initial_x), SetupFunction{}),
                    config.hold_extension),
      config_(std::move(config)) {
    auto x_of = [sites = config_.sites](std::string_view state) -> std::int64_t {
        if (state.substr(0, kAtPrefix.size()) == kAtPrefix) {
            std::int64_t x = 0;
            const auto digits = state.substr(kAtPrefix.size());
            std::from_chars(digits.data(), digits.data() + digits.size(), x);
            return x;
        }
        auto it = sites.find(std::string(state));
        if (it == sites.end()) throw std::invalid_argument("unknown site '" + std::string(state) + "'");
        return it->second.x;
    };
    const Speed speed = config_.geometry.speed;
    schedule_ = ResourceSchedule(initial_transport_state(config_.initial_x),
                                 [x_of, speed](std::string_view from, std::string_view to) {
                                     return travel_time(x_of(from), x_of(to), speed);
                                 });
}

BookingEntry TransportAgent::leg_entry(const std::string& order_id, const std::string& label,
                                       const std::string& from_site, const std::string& to_site,
                                       TimePoint load_start, Duration setup) const {
    const auto& g = config_.geometry;
    const Location from = config_.sites.at(from_site);
    const Location to = config_.sites.at(to_site);
    const Duration travel = travel_time(from.x, to.x, g.speed);
    BookingEntry e{order_id, label, {}, false, from_site, to_site};
    TimePoint t = load_start;
    if (setup > Duration::zero()) e.segments.push_back({SegmentKind::setup, {t - setup, t}});
    e.segments.push_back({SegmentKind::load, {t, t + g.load_time}});
    t += g.load_time;
    if (travel > Duration::zero()) {
        e.segments.push_back({SegmentKind::travel, {t, t + travel}});
        t += travel;
    }
    e.segments.push_back({SegmentKind::unload, {t, t + g.unload_time}});
    return e;
}

std::optional<ResourceAgent::Offer> TransportAgent::place(const TransportLeg& leg,
                                                          const ResourceSchedule& view,
                                                          const std::string& order_id,
                                                          const std::string& label) {
    Duration core{0};
    try {
        core = transport_duration(leg.from, leg.to, config_.geometry);
    } catch (const OutOfSegment&) {
        return std::nullopt;
    }
    const auto& w = leg.windows;
    for (const auto& gap : view.gaps()) {
        const Duration setup = view.setup(gap.predecessor_state, leg.from_site);
        const TimePoint ready = gap.start + setup;
        const TimePoint load_start = std::max({w.es, ready, w.ef - core});
        if (!within(load_start, w.ls)) continue;
        const TimePoint unload_end = load_start + core;
        if (!within(unload_end, w.lf)) continue;
        const UpperBound latest = view.latest_end(gap, leg.to_site);
        if (!within(unload_end, latest)) continue;

        Proposal p;
        p.id = next_proposal_id();
        p.kind = ProposalKind::transport;
        p.request_id = leg.leg_id;
        p.resource = info();
        p.slot = {load_start, unload_end};
        p.slack_before = Slack::finite(load_start - ready);
        p.slack_after = slack_between(unload_end, latest);
        p.setup = setup;
        p.op_duration = core;
        p.load_time = config_.geometry.load_time;
        p.unload_time = config_.geometry.unload_time;
        p.price = proposal_price(core, setup, view.time_increment(gap, leg.to_site));
        BookingEntry r = leg_entry(order_id, label, leg.from_site, leg.to_site, load_start, setup);
        return Offer{std::move(p), std::move(r)};
    }
    return std::nullopt;
}

std::vector<ResourceAgent::Offer> TransportAgent::make_offers(const Cfp& cfp, const ResourceSchedule& view,
                                                              const std::string& order_id, int stage) {
    std::vector<Offer> out;
    for (const auto& leg : cfp.legs) {
        if (!config_.sites.contains(leg.from_site) || !config_.sites.contains(leg.to_site)) continue;
        if (auto o = place(leg, view, order_id, leg_label(leg.leg_id, stage))) out.push_back(std::move(*o));
    }
    // Chained legs: a follow-up proposal that starts where this transport's own first leg ends.
    const std::size_t independent = out.size();
    for (const auto& leg : cfp.legs) {
        if (!leg.chains_after || !config_.sites.contains(leg.from_site) || !config_.sites.contains(leg.to_site)) {
            continue;
        }
        for (std::size_t i = 0; i < independent; ++i) {
            if (out[i].proposal.request_id != *leg.chains_after) continue;
            const BookingEntry first = out[i].reservation;
            const ResourceSchedule chained = view.with_reservations(std::span(&first, 1));
            if (auto o = place(leg, chained, order_id, leg_label(leg.leg_id, stage))) {
                o->proposal.required_operation = out[i].proposal.id;
                out[i].proposal.connected_operations.push_back(o->proposal.id);
                out.push_back(std::move(*o));
            }
        }
    }
    return out;
}

std::variant<BookingEntry, std::string> TransportAgent::booking_for(const Acceptance& item,
                                                                    const OfferHold& hold) const {
    if (item.booked != hold.offer.slot) {
        return "transport slot " + to_string(item.booked) + " differs from offer " + to_string(hold.offer.slot);
    }
    const auto& r = hold.reservation;
    const Duration setup = schedule_.setup_before(item.booked.start, r.start_state);
    return leg_entry(hold.order_id, r.step_label, r.start_state, r.end_state, item.booked.start, setup);
}

}  // namespace cnetsched
