#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cnetsched/time/booking.hpp"
#include "cnetsched/time/time.hpp"

namespace cnetsched {

class ScheduleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested span is not free (the caller booked a slot the resource never offered).
class OverlapError : public ScheduleError {
public:
    using ScheduleError::ScheduleError;
};

/// Departure reported for a workpiece that has no open-tail booking.
class NoOpenTail : public ScheduleError {
public:
    using ScheduleError::ScheduleError;
};

/// Sequence-dependent setup between two resource states.
using SetupFunction = std::function<Duration(std::string_view from, std::string_view to)>;

SetupFunction no_setup();

struct AdjustmentReport {
    /// Signed change applied to the successor's setup segment (zero without a successor).
    Duration time_increment{0};
    std::optional<std::string> successor_order;
    std::optional<std::string> successor_step;
};

/// A maximal stretch between two bookings that a new booking may be placed into.
struct ScheduleGap {
    struct Successor {
        TimePoint core_start;
        std::string start_state;
        Duration current_setup;
    };

    /// First instant after the predecessor (the epoch when there is none).
    TimePoint start;
    std::string predecessor_state;
    std::optional<Successor> successor;
};

/// Free/busy calendar of one resource, sorted by booked core.
///
/// Entries are pairwise disjoint over their full spans. An open-tail entry blocks everything
/// after its operation until it is closed by the departure of its workpiece.
class ResourceSchedule {
public:
    explicit ResourceSchedule(std::string initial_state = {}, SetupFunction setup = no_setup());

    const std::vector<BookingEntry>& entries() const { return entries_; }
    const std::string& initial_state() const { return initial_state_; }
    Duration setup(std::string_view from, std::string_view to) const { return setup_(from, to); }

    /// Maximal free intervals intersected with `window`, sorted.
    std::vector<TimeInterval> free_intervals(TimeInterval window) const;
    /// Complement of free_intervals within `window` (merged busy spans).
    std::vector<TimeInterval> busy_intervals(TimeInterval window) const;

    /// State the resource is in for a booking whose core starts at `core_start`.
    std::string state_before(TimePoint core_start) const;
    /// Setup a new booking needs when its core starts at `core_start`.
    Duration setup_before(TimePoint core_start, std::string_view start_state) const;

    /// Inserts between existing bookings and applies the successor's time increment.
    /// Throws OverlapError when the span is not free, std::invalid_argument on a malformed
    /// entry or a setup segment that disagrees with the predecessor's end state.
    AdjustmentReport insert_booking(BookingEntry entry);

    /// Replaces the open tail of `order_id` by a blocked hold plus a load segment
    /// [departure - load_time, departure).
    void close_open_tail(std::string_view order_id, TimePoint departure, Duration load_time);

    bool has_open_tail() const;
    const BookingEntry* open_tail_of(std::string_view order_id) const;
    std::vector<std::string> open_tail_orders() const;

    /// Gaps usable for new bookings. No gap follows an open-tail entry.
    std::vector<ScheduleGap> gaps() const;
    /// Latest end of a booking placed in `gap` that leaves `end_state` behind.
    UpperBound latest_end(const ScheduleGap& gap, std::string_view end_state) const;
    /// Change to the successor's setup if a booking leaving `end_state` is placed in `gap`.
    Duration time_increment(const ScheduleGap& gap, std::string_view end_state) const;

    /// Copy with tentative bookings merged in without adjustment (planning view).
    ResourceSchedule with_reservations(std::span<const BookingEntry> reservations) const;

private:
    std::size_t insertion_index(const BookingEntry& entry) const;

    std::string initial_state_;
    SetupFunction setup_;
    std::vector<BookingEntry> entries_;
};

}  // namespace cnetsched
