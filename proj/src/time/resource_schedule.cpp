#include "cnetsched/time/resource_schedule.hpp"

#include <algorithm>
#include <utility>

namespace cnetsched {

namespace {

bool core_before(const BookingEntry& a, const BookingEntry& b) {
    if (a.core_start() != b.core_start()) return a.core_start() < b.core_start();
    return a.span_start() < b.span_start();
}

std::string describe(const BookingEntry& e) { return e.order_id + "/" + e.step_label; }

}  // namespace

SetupFunction no_setup() {
    return [](std::string_view, std::string_view) { return Duration::zero(); };
}

ResourceSchedule::ResourceSchedule(std::string initial_state, SetupFunction setup)
    : initial_state_(std::move(initial_state)), setup_(std::move(setup)) {}

std::vector<TimeInterval> ResourceSchedule::busy_intervals(TimeInterval window) const {
    std::vector<TimeInterval> busy;
    for (const auto& e : entries_) {
        TimeInterval span = e.span();
        if (e.open_tail) span.end = std::max(window.end, span.end);
        const TimeInterval clipped{std::max(span.start, window.start), std::min(span.end, window.end)};
        if (clipped.start >= clipped.end) continue;
        if (!busy.empty() && busy.back().end >= clipped.start) {
            busy.back().end = std::max(busy.back().end, clipped.end);
        } else {
            busy.push_back(clipped);
        }
        if (e.open_tail) break;
    }
    return busy;
}

std::vector<TimeInterval> ResourceSchedule::free_intervals(TimeInterval window) const {
    std::vector<TimeInterval> free;
    TimePoint cursor = window.start;
    for (const auto& b : busy_intervals(window)) {
        if (b.start > cursor) free.push_back({cursor, b.start});
        cursor = std::max(cursor, b.end);
    }
    if (cursor < window.end) free.push_back({cursor, window.end});
    return free;
}

std::size_t ResourceSchedule::insertion_index(const BookingEntry& entry) const {
    const auto it = std::upper_bound(entries_.begin(), entries_.end(), entry, core_before);
    return static_cast<std::size_t>(it - entries_.begin());
}

std::string ResourceSchedule::state_before(TimePoint core_start) const {
    std::string state = initial_state_;
    for (const auto& e : entries_) {
        if (e.core_start() >= core_start) break;
        state = e.end_state;
    }
    return state;
}

Duration ResourceSchedule::setup_before(TimePoint core_start, std::string_view start_state) const {
    return setup_(state_before(core_start), start_state);
}

AdjustmentReport ResourceSchedule::insert_booking(BookingEntry entry) {
    entry.validate();
    if (entry.open_tail && open_tail_of(entry.order_id) != nullptr) {
        throw ScheduleError("order " + entry.order_id + " already has an open tail here");
    }

    const std::size_t idx = insertion_index(entry);
    const std::string pred_state = idx == 0 ? initial_state_ : entries_[idx - 1].end_state;
    const Duration expected_setup = setup_(pred_state, entry.start_state);
    if (entry.setup_length() != expected_setup) {
        throw std::invalid_argument("booking " + describe(entry) + " carries setup " +
                                    format_duration(entry.setup_length()) + " but " + pred_state +
                                    " -> " + entry.start_state + " needs " +
                                    format_duration(expected_setup));
    }

    if (idx > 0) {
        const auto& pred = entries_[idx - 1];
        if (pred.open_tail) {
            throw OverlapError("booking " + describe(entry) + " follows open tail of " +
                               describe(pred));
        }
        if (pred.span_end() > entry.span_start()) {
            throw OverlapError("booking " + describe(entry) + " " + to_string(entry.span()) +
                               " overlaps " + describe(pred) + " " + to_string(pred.span()));
        }
    }

    AdjustmentReport report;
    if (idx < entries_.size()) {
        auto& succ = entries_[idx];
        const Duration new_setup = setup_(entry.end_state, succ.start_state);
        const TimePoint succ_setup_start = succ.core_start() - new_setup;
        if (entry.span_end() > succ_setup_start) {
            throw OverlapError("booking " + describe(entry) + " " + to_string(entry.span()) +
                               " collides with the setup of " + describe(succ) + " starting " +
                               format_time(succ_setup_start));
        }
        report.time_increment = new_setup - succ.setup_length();
        report.successor_order = succ.order_id;
        report.successor_step = succ.step_label;
        const TimeInterval setup_iv{succ_setup_start, succ.core_start()};
        if (succ.has_setup() && new_setup == Duration::zero()) {
            succ.segments.erase(succ.segments.begin());
        } else if (succ.has_setup()) {
            succ.segments.front().interval = setup_iv;
        } else if (new_setup > Duration::zero()) {
            succ.segments.insert(succ.segments.begin(), Segment{SegmentKind::setup, setup_iv});
        }
    }

    entries_.insert(entries_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(entry));
    return report;
}

void ResourceSchedule::close_open_tail(std::string_view order_id, TimePoint departure,
                                       Duration load_time) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const BookingEntry& e) {
        return e.open_tail && e.order_id == order_id;
    });
    if (it == entries_.end()) {
        throw NoOpenTail("no open tail for order " + std::string(order_id));
    }
    const TimePoint op_end = it->span_end();
    const TimePoint load_start = departure - load_time;
    if (load_time < Duration::zero() || load_start < op_end) {
        throw std::invalid_argument("departure " + format_time(departure) + " with load " +
                                    format_duration(load_time) + " precedes operation end " +
                                    format_time(op_end));
    }
    const auto next = std::next(it);
    if (next != entries_.end() && departure > next->span_start()) {
        throw OverlapError("departure " + format_time(departure) + " of " + describe(*it) +
                           " runs into " + describe(*next));
    }
    if (load_start > op_end) {
        it->segments.push_back({SegmentKind::blocked_hold, {op_end, load_start}});
    }
    if (load_time > Duration::zero()) {
        it->segments.push_back({SegmentKind::load, {load_start, departure}});
    }
    it->open_tail = false;
}

bool ResourceSchedule::has_open_tail() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const BookingEntry& e) { return e.open_tail; });
}

const BookingEntry* ResourceSchedule::open_tail_of(std::string_view order_id) const {
    for (const auto& e : entries_) {
        if (e.open_tail && e.order_id == order_id) return &e;
    }
    return nullptr;
}

std::vector<std::string> ResourceSchedule::open_tail_orders() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.open_tail) out.push_back(e.order_id);
    }
    return out;
}

std::vector<ScheduleGap> ResourceSchedule::gaps() const {
    std::vector<ScheduleGap> out;
    for (std::size_t i = 0; i <= entries_.size(); ++i) {
        const BookingEntry* pred = i == 0 ? nullptr : &entries_[i - 1];
        if (pred != nullptr && pred->open_tail) continue;
        ScheduleGap gap;
        gap.start = pred != nullptr ? pred->span_end() : TimePoint{};
        gap.predecessor_state = pred != nullptr ? pred->end_state : initial_state_;
        if (i < entries_.size()) {
            const auto& succ = entries_[i];
            gap.successor = ScheduleGap::Successor{succ.core_start(), succ.start_state,
                                                   succ.setup_length()};
        }
        out.push_back(std::move(gap));
    }
    return out;
}

UpperBound ResourceSchedule::latest_end(const ScheduleGap& gap, std::string_view end_state) const {
    if (!gap.successor) return std::nullopt;
    return gap.successor->core_start - setup_(end_state, gap.successor->start_state);
}

Duration ResourceSchedule::time_increment(const ScheduleGap& gap, std::string_view end_state) const {
    if (!gap.successor) return Duration::zero();
    return setup_(end_state, gap.successor->start_state) - gap.successor->current_setup;
}

ResourceSchedule ResourceSchedule::with_reservations(
    std::span<const BookingEntry> reservations) const {
    ResourceSchedule view = *this;
    for (const auto& r : reservations) {
        r.validate();
        const std::size_t idx = view.insertion_index(r);
        view.entries_.insert(view.entries_.begin() + static_cast<std::ptrdiff_t>(idx), r);
    }
    return view;
}

}  // namespace cnetsched
