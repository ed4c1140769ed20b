#include "cnetsched/agents/resource_agents.hpp"

namespace cnetsched {

namespace {

std::vector<Segment> lead_in(TimePoint start, Duration setup, Duration unload) {
    std::vector<Segment> segs;
    const TimePoint unload_start = start - unload;
    if (setup > Duration::zero()) segs.push_back({SegmentKind::setup, {unload_start - setup, unload_start}});
    if (unload > Duration::zero()) segs.push_back({SegmentKind::unload, {unload_start, start}});
    return segs;
}

}  // namespace

ProductionAgent::ProductionAgent(ProductionConfig config)
    : ResourceAgent(config.id, ResourceType::production, config.location,
                    ResourceSchedule(config.initial_state, matrix_setup(config.setup)),
                    config.hold_extension),
      config_(std::move(config)) {}

void ProductionAgent::on_cfp(const Envelope& e, const Cfp& cfp, Context& ctx) {
    const bool owner = schedule_.open_tail_of(e.order_id) != nullptr;
    if (blocked() && !owner) {
        deferred_.push_back(e);
        return;
    }
    answer(e, cfp, ctx);
}

std::vector<ResourceAgent::Offer> ProductionAgent::make_offers(const Cfp& cfp,
                                                               const ResourceSchedule& view,
                                                               const std::string& order_id,
                                                               int stage) {
    if (schedule_.open_tail_of(order_id) != nullptr) return stay_offer(cfp, order_id, stage);
    return normal_offers(cfp, view, order_id, stage, std::nullopt);
}

std::vector<ResourceAgent::Offer> ProductionAgent::normal_offers(const Cfp& cfp, const ResourceSchedule& view,
                                                                 const std::string& order_id, int stage,
                                                                 std::optional<TimePoint> skip_gap) {
    std::vector<Offer> out;
    const std::string& product = cfp.workpiece.product;
    const auto op_it = config_.op_duration.find(product);
    if (op_it == config_.op_duration.end()) return out;
    const Duration op = op_it->second;

    for (const auto& req : cfp.production) {
        if (req.operation != config_.capability) continue;
        int made = 0;
        for (const auto& gap : view.gaps()) {
            if (made == config_.offers) break;
            if (skip_gap && gap.start == *skip_gap) continue;
            const Duration setup = view.setup(gap.predecessor_state, product);
            const TimePoint ready = gap.start + setup + req.unload_estimate;
            const TimePoint s = std::max(req.earliest_start, ready);
            const TimePoint f = s + op;
            const UpperBound latest = view.latest_end(gap, product);
            if (latest && f + req.load_estimate > *latest) continue;

            Proposal p;
            p.id = next_proposal_id();
            p.kind = ProposalKind::production;
            p.request_id = req.alternative_id;
            p.resource = info();
            p.slot = {s, f};
            p.slack_before = Slack::finite(s - ready);
            p.slack_after = latest ? Slack::finite(*latest - req.load_estimate - f) : Slack::unbounded();
            p.setup = setup;
            p.op_duration = op;
            p.load_time = req.load_estimate;
            p.unload_time = req.unload_estimate;
            p.price = proposal_price(op, setup, view.time_increment(gap, product));

            BookingEntry r{order_id, std::to_string(stage), lead_in(s, setup, req.unload_estimate),
                           !latest.has_value(), product, product};
            r.segments.push_back({SegmentKind::operation, {s, f}});
            if (latest && *latest > f) r.segments.push_back({SegmentKind::blocked_hold, {f, *latest}});
            out.push_back(Offer{std::move(p), std::move(r)});
            ++made;
        }
    }
    return out;
}

std::vector<ResourceAgent::Offer> ProductionAgent::stay_offer(const Cfp& cfp,
                                                              const std::string& order_id, int stage) {
    std::vector<Offer> out;
    const std::string& product = cfp.workpiece.product;
    const auto op_it = config_.op_duration.find(product);
    if (op_it == config_.op_duration.end()) return out;
    const bool capable = std::any_of(cfp.production.begin(), cfp.production.end(),
                                     [&](const ProductionRequest& r) { return r.operation == config_.capability; });
    if (!capable) return out;
    const Duration op = op_it->second;

    const BookingEntry* tail = schedule_.open_tail_of(order_id);
    const TimePoint op_end = tail->span_end();
    ResourceSchedule closed = schedule_;
    closed.close_open_tail(order_id, op_end, Duration::zero());
    const auto others = holds_.reservations_excluding(order_id);
    const ResourceSchedule view = closed.with_reservations(others);

    for (const auto& gap : view.gaps()) {
        if (gap.start != op_end) continue;
        const Duration setup = view.setup(gap.predecessor_state, product);
        const TimePoint s = op_end + setup;
        const TimePoint f = s + op;
        const Duration load = cfp.production.front().load_estimate;
        const UpperBound latest = view.latest_end(gap, product);
        if (latest && f + load > *latest) break;

        Proposal p;
        p.id = next_proposal_id();
        p.kind = ProposalKind::stay;
        p.request_id = cfp.production.front().alternative_id;
        p.resource = info();
        p.slot = {s, f};
        p.slack_before = Slack::finite(Duration::zero());
        p.slack_after = latest ? Slack::finite(*latest - load - f) : Slack::unbounded();
        p.setup = setup;
        p.op_duration = op;
        p.load_time = load;
        p.price = proposal_price(op, setup, view.time_increment(gap, product));

        BookingEntry r{order_id, std::to_string(stage), lead_in(s, setup, Duration::zero()),
                       !latest.has_value(), product, product};
        r.segments.push_back({SegmentKind::operation, {s, f}});
        if (latest && *latest > f) r.segments.push_back({SegmentKind::blocked_hold, {f, *latest}});
        out.push_back(Offer{std::move(p), std::move(r)});
        break;
    }
    // Leaving the machine and coming back later is always an alternative.
    auto later = normal_offers(cfp, view, order_id, stage,
                               out.empty() ? std::nullopt : std::optional<TimePoint>(op_end));
    std::move(later.begin(), later.end(), std::back_inserter(out));
    return out;
}

std::variant<BookingEntry, std::string> ProductionAgent::booking_for(const Acceptance& item,
                                                                     const OfferHold& hold) const {
    const Proposal& offer = hold.offer;
    const TimePoint s = item.booked.start;
    if (s < offer.slot.start || !within(s, offer.slack_after.after(offer.slot.start))) {
        return "start " + format_time(s) + " outside offer " + to_string(offer.slot) + " + " +
               to_string(offer.slack_after);
    }
    if (item.booked.length() != offer.op_duration) {
        return "booked length " + format_duration(item.booked.length()) + " differs from operation " +
               format_duration(offer.op_duration);
    }
    const std::string& product = hold.reservation.start_state;
    const Duration setup = schedule_.setup_before(s, product);
    BookingEntry entry{hold.order_id, hold.reservation.step_label, lead_in(s, setup, item.actual_unload),
                       true, product, product};
    entry.segments.push_back({SegmentKind::operation, item.booked});
    return entry;
}

void ProductionAgent::after_accept(const Envelope& e, Context& ctx) {
    if (stay_pending_ && *stay_pending_ == e.order_id) {
        stay_pending_.reset();
        drain_deferred(ctx);
    }
}

void ProductionAgent::on_departure(const Envelope& e, const InformDeparture& d, Context& ctx) {
    try {
        schedule_.close_open_tail(d.order_id, d.departure, d.load_time);
    } catch (const std::exception& ex) {
        ctx.violation(id() + ": departure of " + d.order_id + " rejected: " + ex.what());
    }
    if (d.stay_on_machine) {
        stay_pending_ = d.order_id;
        return;
    }
    (void)e;
    drain_deferred(ctx);
}

void ProductionAgent::drain_deferred(Context& ctx) {
    while (!blocked() && !deferred_.empty()) {
        Envelope next = std::move(deferred_.front());
        deferred_.pop_front();
        const auto& cfp = std::get<Cfp>(next.body);
        if (cfp.deadline < ctx.now()) continue;
        answer(next, cfp, ctx);
    }
}

}  // namespace cnetsched
