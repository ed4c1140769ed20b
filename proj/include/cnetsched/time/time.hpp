#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace cnetsched {

/// Scenario clock. Integer seconds since the scenario epoch (day 0, 00:00).
struct ScenarioClock {
    using rep = std::int64_t;
    using period = std::ratio<1>;
    using duration = std::chrono::duration<rep, period>;
    using time_point = std::chrono::time_point<ScenarioClock, duration>;
    static constexpr bool is_steady = true;
};

using Duration = ScenarioClock::duration;
using TimePoint = ScenarioClock::time_point;

/// Latest-style bound: nullopt means unbounded (+infinity).
using UpperBound = std::optional<TimePoint>;

constexpr Duration seconds(std::int64_t s) { return Duration{s}; }
constexpr Duration minutes(std::int64_t m) { return Duration{m * 60}; }

constexpr TimePoint at(Duration since_epoch) { return TimePoint{since_epoch}; }
constexpr TimePoint at_minute(std::int64_t m) { return TimePoint{minutes(m)}; }

/// Wall-clock style constructor: day offset plus hh:mm.
constexpr TimePoint clock_time(std::int64_t day, std::int64_t hour, std::int64_t minute) {
    return at_minute(day * 24 * 60 + hour * 60 + minute);
}

constexpr std::int64_t to_seconds(TimePoint t) { return t.time_since_epoch().count(); }
constexpr std::int64_t to_seconds(Duration d) { return d.count(); }

/// "18:00", "1d04:34", with a ":ss" suffix only when seconds are non-zero.
std::string format_time(TimePoint t);
std::string format_duration(Duration d);

/// Minimum of two upper bounds where nullopt is +infinity.
constexpr UpperBound min_bound(UpperBound a, UpperBound b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

constexpr bool within(TimePoint t, UpperBound bound) { return !bound || t <= *bound; }

/// Half-open interval [start, end).
struct TimeInterval {
    TimePoint start;
    TimePoint end;

    constexpr Duration length() const { return end - start; }
    constexpr bool empty() const { return end == start; }
    constexpr bool contains(TimePoint t) const { return start <= t && t < end; }
    constexpr bool contains(const TimeInterval& other) const {
        return start <= other.start && other.end <= end;
    }
    /// Adjacent intervals do not overlap; empty intervals overlap nothing.
    constexpr bool overlaps(const TimeInterval& other) const {
        return !empty() && !other.empty() && start < other.end && other.start < end;
    }

    friend constexpr bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

/// Throws std::invalid_argument when start > end.
TimeInterval make_interval(TimePoint start, TimePoint end);

std::string to_string(const TimeInterval& interval);

/// Slack after a slot: either a finite duration or unbounded (nothing constrains the slot).
class Slack {
public:
    static Slack finite(Duration d);
    static constexpr Slack unbounded() { return Slack{}; }

    constexpr bool is_unbounded() const { return !value_; }
    constexpr bool is_finite() const { return value_.has_value(); }
    /// Throws std::logic_error when unbounded.
    Duration value() const;

    /// t + slack, or unbounded.
    constexpr UpperBound after(TimePoint t) const {
        if (!value_) return std::nullopt;
        return t + *value_;
    }

    /// Remaining slack once the slot has been shifted later by `shift` (saturates at zero).
    Slack consumed(Duration shift) const;

    friend bool operator==(const Slack&, const Slack&) = default;

private:
    constexpr Slack() = default;
    constexpr explicit Slack(Duration d) : value_(d) {}
    std::optional<Duration> value_;
};

/// Slack measured from `from` to `bound` (unbounded bound gives unbounded slack).
Slack slack_between(TimePoint from, UpperBound bound);

std::string to_string(const Slack& slack);

}  // namespace cnetsched
