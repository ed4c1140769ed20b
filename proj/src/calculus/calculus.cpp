#include "cnetsched/calculus/calculus.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace cnetsched {

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed speed '" + whole + "'");
    }
    return value;
}

std::string window_text(TimePoint lo, UpperBound hi) {
    return "[" + format_time(lo) + ", " + (hi ? format_time(*hi) : std::string("inf")) + "]";
}

}  // namespace

Duration Speed::travel(std::int64_t distance_m) const {
    if (distance_m < 0) distance_m = -distance_m;
    const std::int64_t num = distance_m * seconds;
    return Duration{(num + meters - 1) / meters};
}

Speed parse_speed(const std::string& text) {
    const auto slash = text.find('/');
    Speed s;
    if (slash == std::string::npos) {
        s.meters = parse_int(text, text);
        s.seconds = 1;
    } else {
        s.meters = parse_int(std::string_view(text).substr(0, slash), text);
        s.seconds = parse_int(std::string_view(text).substr(slash + 1), text);
    }
    if (s.meters <= 0 || s.seconds <= 0) {
        throw std::invalid_argument("speed must be positive: '" + text + "'");
    }
    return s;
}

std::string to_string(const Speed& speed) {
    if (speed.seconds == 1) return std::to_string(speed.meters);
    return std::to_string(speed.meters) + "/" + std::to_string(speed.seconds);
}

Duration derive_t_transport_min(const std::vector<Location>& locations,
                                const std::vector<TransportGeometry>& transports) {
    if (transports.empty()) throw NoTransport("no transport resources to derive T_T,min from");
    if (locations.size() < 2) throw std::invalid_argument("need at least two locations");

    Duration handling = Duration::max();
    const TransportGeometry* fastest = &transports.front();
    for (const auto& t : transports) {
        handling = std::min(handling, t.load_time + t.unload_time);
        if (t.speed.meters * fastest->speed.seconds > fastest->speed.meters * t.speed.seconds) {
            fastest = &t;
        }
    }

    std::int64_t shortest = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < locations.size(); ++i) {
        for (std::size_t j = i + 1; j < locations.size(); ++j) {
            const std::int64_t dx = std::abs(locations[i].x - locations[j].x);
            if (dx > 0) shortest = std::min(shortest, dx);
        }
    }
    if (shortest == std::numeric_limits<std::int64_t>::max()) shortest = 0;
    return handling + fastest->speed.travel(shortest);
}

Duration travel_time(std::int64_t from_x, std::int64_t to_x, const Speed& speed) {
    return speed.travel(to_x - from_x);
}

Duration transport_duration(Location from, Location to, const TransportGeometry& geom) {
    if (!geom.covers(from.x) || !geom.covers(to.x)) {
        throw OutOfSegment("x=" + std::to_string(from.x) + " -> x=" + std::to_string(to.x) +
                           " leaves segment [" + std::to_string(geom.x_min) + ", " +
                           std::to_string(geom.x_max) + "]");
    }
    return geom.load_time + travel_time(from.x, to.x, geom.speed) + geom.unload_time;
}

BufferWindows buffer_windows(TimePoint f_prev, const SlotCommitment& prod,
                             const ScheduleParams& params) {
    BufferWindows w;
    w.es = f_prev;
    w.ef = prod.start - params.t_transport_min;
    if (w.ef < w.es) {
        throw InfeasibleWindow("buffer exit " + format_time(w.ef) + " precedes entry " +
                               format_time(w.es));
    }
    w.lf = prod.slack_after.after(w.ef);
    if (w.lf) w.ls = *w.lf - params.t_buffer_min;
    return w;
}

StageWindows transport_to_buffer_windows(TimePoint f_prev, Slack prev_slack,
                                         const SlotCommitment& buf, const SlotCommitment& prod,
                                         const ScheduleParams& params) {
    const UpperBound lf_prev = prev_slack.after(f_prev);
    UpperBound ls_buf = buf.latest_start();
    if (ls_buf) ls_buf = *ls_buf - params.t_transport_min;
    UpperBound ls_prod = prod.latest_start();
    if (ls_prod) ls_prod = *ls_prod - 2 * params.t_transport_min - params.t_buffer_min;

    StageWindows w;
    w.es = f_prev;
    w.ef = f_prev + params.t_transport_min;
    w.ls = min_bound(lf_prev, min_bound(ls_buf, ls_prod));
    if (w.ls) {
        if (*w.ls < w.es) {
            throw InfeasibleWindow("leg into buffer: start window " + window_text(w.es, w.ls) +
                                   " is empty");
        }
        w.lf = *w.ls + params.t_transport_min;
    }
    return w;
}

StageWindows transport_from_buffer_windows(TimePoint f_prev, const SlotCommitment& buf,
                                           const SlotCommitment& prod,
                                           const ScheduleParams& params) {
    UpperBound ls_prod = prod.latest_start();
    if (ls_prod) ls_prod = *ls_prod - params.t_transport_min;

    StageWindows w;
    w.es = f_prev + params.t_transport_min + params.t_buffer_min;
    w.ls = min_bound(buf.latest_finish(), ls_prod);
    w.ef = prod.start;
    w.lf = prod.latest_start();
    if (!within(w.es, w.ls)) {
        throw InfeasibleWindow("leg out of buffer: start window " + window_text(w.es, w.ls) +
                               " is empty");
    }
    if (!within(w.ef, w.lf)) {
        throw InfeasibleWindow("leg out of buffer: finish window " + window_text(w.ef, w.lf) +
                               " is empty");
    }
    return w;
}

StageWindows direct_transport_windows(TimePoint f_prev, Slack prev_slack,
                                      const SlotCommitment& prod, const ScheduleParams& params) {
    UpperBound ls_prod = prod.latest_start();
    if (ls_prod) ls_prod = *ls_prod - params.t_transport_min;

    StageWindows w;
    w.es = f_prev;
    w.ls = min_bound(prev_slack.after(f_prev), ls_prod);
    w.ef = prod.start;
    w.lf = prod.latest_start();
    if (!within(w.es, w.ls)) {
        throw InfeasibleWindow("direct leg: start window " + window_text(w.es, w.ls) +
                               " is empty");
    }
    return w;
}

Price proposal_price(Duration op_duration, Duration setup, Duration ti_next) {
    return Price{op_duration + setup + ti_next};
}

bool needs_buffering(TimePoint f_prev, TimePoint s_next, Duration direct_transport,
                     const ScheduleParams& params) {
    return s_next - (f_prev + direct_transport) > params.t_buffer_min;
}

}  // namespace cnetsched
