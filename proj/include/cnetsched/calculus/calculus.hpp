#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnetsched/time/time.hpp"

namespace cnetsched {

class InfeasibleWindow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfSegment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoTransport : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ScheduleParams {
    Duration t_transport_min;
    Duration t_buffer_min;
};

/// Earliest/latest start and finish of one requested activity. Latest values may be unbounded.
struct StageWindows {
    TimePoint es;
    TimePoint ef;
    UpperBound ls;
    UpperBound lf;

    friend bool operator==(const StageWindows&, const StageWindows&) = default;
};

/// A proposed or committed slot: planned start S, planned finish F and the slack ST after F.
struct SlotCommitment {
    TimePoint start;
    TimePoint finish;
    Slack slack_after = Slack::unbounded();

    /// S + ST, i.e. the latest start the slot may be shifted to.
    UpperBound latest_start() const { return slack_after.after(start); }
    /// F + ST.
    UpperBound latest_finish() const { return slack_after.after(finish); }
};

/// Rational speed in meters per second ("1/12" is one meter every twelve seconds).
struct Speed {
    std::int64_t meters = 1;
    std::int64_t seconds = 1;

    /// Time to cover `distance_m` meters, rounded up to whole seconds.
    Duration travel(std::int64_t distance_m) const;
    double meters_per_second() const { return static_cast<double>(meters) / seconds; }

    friend bool operator==(const Speed&, const Speed&) = default;
};

/// Parses "1/12" (meters/seconds) or a plain integer meters per second.
Speed parse_speed(const std::string& text);
std::string to_string(const Speed& speed);

struct Location {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Location&, const Location&) = default;
};

struct TransportGeometry {
    Speed speed;
    Duration load_time;
    Duration unload_time;
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;

    bool covers(std::int64_t x) const { return x_min <= x && x <= x_max; }
};

/// Resource time charged for a proposal; lower is better. Can undercut op + setup when the
/// successor's setup shrinks.
struct Price {
    Duration value{0};

    friend auto operator<=>(const Price&, const Price&) = default;
    friend Price operator+(Price a, Price b) { return Price{a.value + b.value}; }
};

/// System-wide minimal transport duration: cheapest load+unload plus the shortest non-zero
/// x-distance between any two locations at the fastest transport speed.
Duration derive_t_transport_min(const std::vector<Location>& locations,
                                const std::vector<TransportGeometry>& transports);

/// Pure x-axis travel time, without load/unload.
Duration travel_time(std::int64_t from_x, std::int64_t to_x, const Speed& speed);

/// load + travel + unload between two locations. Throws OutOfSegment when either x lies
/// outside the transport's segment.
Duration transport_duration(Location from, Location to, const TransportGeometry& geom);

struct BufferWindows {
    /// Arrival at the buffer: [ES_B, LS_B].
    TimePoint es;
    UpperBound ls;
    /// Departure from the buffer: [EF_B, LF_B].
    TimePoint ef;
    UpperBound lf;
};

BufferWindows buffer_windows(TimePoint f_prev, const SlotCommitment& prod,
                             const ScheduleParams& params);

/// Windows of the leg from the previous production resource into the buffer.
StageWindows transport_to_buffer_windows(TimePoint f_prev, Slack prev_slack,
                                         const SlotCommitment& buf, const SlotCommitment& prod,
                                         const ScheduleParams& params);

/// Windows of the leg from the buffer to the next production resource.
StageWindows transport_from_buffer_windows(TimePoint f_prev, const SlotCommitment& buf,
                                           const SlotCommitment& prod,
                                           const ScheduleParams& params);

/// Windows of a single leg straight from the previous production resource to the next.
StageWindows direct_transport_windows(TimePoint f_prev, Slack prev_slack,
                                      const SlotCommitment& prod, const ScheduleParams& params);

Price proposal_price(Duration op_duration, Duration setup, Duration ti_next);

bool needs_buffering(TimePoint f_prev, TimePoint s_next, Duration direct_transport,
                     const ScheduleParams& params);

}  // namespace cnetsched
