#include "cnetsched/time/time.hpp"

#include <cstdio>
#include <stdexcept>

namespace cnetsched {

std::string format_time(TimePoint t) {
    std::int64_t total = to_seconds(t);
    const bool negative = total < 0;
    if (negative) total = -total;
    const std::int64_t day = total / 86400;
    const std::int64_t hour = (total % 86400) / 3600;
    const std::int64_t minute = (total % 3600) / 60;
    const std::int64_t sec = total % 60;

    std::string out = negative ? "-" : "";
    if (day > 0) out += std::to_string(day) + "d";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02lld:%02lld", static_cast<long long>(hour),
                  static_cast<long long>(minute));
    out += buf;
    if (sec != 0) {
        std::snprintf(buf, sizeof(buf), ":%02lld", static_cast<long long>(sec));
        out += buf;
    }
    return out;
}

std::string format_duration(Duration d) {
    const std::int64_t s = d.count();
    if (s % 60 == 0) return std::to_string(s / 60) + "min";
    return std::to_string(s) + "s";
}

TimeInterval make_interval(TimePoint start, TimePoint end) {
    if (start > end) {
        throw std::invalid_argument("interval start " + format_time(start) + " after end " +
                                    format_time(end));
    }
    return TimeInterval{start, end};
}

std::string to_string(const TimeInterval& interval) {
    return "[" + format_time(interval.start) + ", " + format_time(interval.end) + ")";
}

Slack Slack::finite(Duration d) {
    if (d < Duration::zero()) throw std::invalid_argument("negative slack");
    return Slack{d};
}

Duration Slack::value() const {
    if (!value_) throw std::logic_error("unbounded slack has no finite value");
    return *value_;
}

Slack Slack::consumed(Duration shift) const {
    if (!value_) return *this;
    const Duration rest = *value_ - shift;
    return Slack{rest < Duration::zero() ? Duration::zero() : rest};
}

Slack slack_between(TimePoint from, UpperBound bound) {
    if (!bound) return Slack::unbounded();
    return Slack::finite(*bound >= from ? *bound - from : Duration::zero());
}

std::string to_string(const Slack& slack) {
    return slack.is_unbounded() ? "unbounded" : format_duration(slack.value());
}

}  // namespace cnetsched
