#include <gtest/gtest.h>

#include <map>
#include <random>

#include "cnetsched/time/resource_schedule.hpp"

using namespace cnetsched;

namespace {

using Matrix = std::map<std::pair<std::string, std::string>, Duration>;

SetupFunction matrix_setup(Matrix m) {
    return [m = std::move(m)](std::string_view from, std::string_view to) {
        auto it = m.find({std::string(from), std::string(to)});
        return it == m.end() ? Duration::zero() : it->second;
    };
}

// Forging-like setups: A->B 30 min, B->A 45 min.
SetupFunction forging_setup() {
    return matrix_setup({{{"A", "B"}, minutes(30)}, {{"B", "A"}, minutes(45)}});
}

BookingEntry production(std::string order, TimePoint setup_start, Duration setup,
                        Duration op, std::string product, bool tail = false) {
    BookingEntry e;
    e.order_id = std::move(order);
    e.step_label = "1";
    TimePoint t = setup_start;
    if (setup > Duration::zero()) {
        e.segments.push_back({SegmentKind::setup, {t, t + setup}});
        t += setup;
    }
    e.segments.push_back({SegmentKind::operation, {t, t + op}});
    e.open_tail = tail;
    e.start_state = product;
    e.end_state = product;
    return e;
}

// Independent reference: mark every busy second, then read off maximal free runs.
std::vector<TimeInterval> scan_free(const std::vector<BookingEntry>& entries, TimeInterval window) {
    const std::int64_t lo = to_seconds(window.start);
    const std::int64_t hi = to_seconds(window.end);
    std::vector<char> busy(static_cast<std::size_t>(hi - lo), 0);
    for (const auto& e : entries) {
        std::int64_t a = to_seconds(e.span_start());
        std::int64_t b = e.open_tail ? hi : to_seconds(e.span_end());
        for (std::int64_t t = std::max(a, lo); t < std::min(b, hi); ++t) {
            busy[static_cast<std::size_t>(t - lo)] = 1;
        }
    }
    std::vector<TimeInterval> out;
    std::int64_t t = lo;
    while (t < hi) {
        if (busy[static_cast<std::size_t>(t - lo)]) {
            ++t;
            continue;
        }
        std::int64_t u = t;
        while (u < hi && !busy[static_cast<std::size_t>(u - lo)]) ++u;
        out.push_back({at(seconds(t)), at(seconds(u))});
        t = u;
    }
    return out;
}

}  // namespace

TEST(FreeIntervals, EmptyScheduleIsWholeWindow) {
    ResourceSchedule s;
    const auto free = s.free_intervals({at(seconds(0)), at(seconds(100))});
    ASSERT_EQ(free.size(), 1u);
    EXPECT_EQ(free[0], (TimeInterval{at(seconds(0)), at(seconds(100))}));
}

TEST(FreeIntervals, SingleBookingSplitsWindow) {
    ResourceSchedule s;
    BookingEntry e{"o", "1", {{SegmentKind::operation, {at(seconds(10)), at(seconds(20))}}}, false, "", ""};
    s.insert_booking(e);
    const auto free = s.free_intervals({at(seconds(0)), at(seconds(30))});
    ASSERT_EQ(free.size(), 2u);
    EXPECT_EQ(free[0], (TimeInterval{at(seconds(0)), at(seconds(10))}));
    EXPECT_EQ(free[1], (TimeInterval{at(seconds(20)), at(seconds(30))}));
}

TEST(FreeIntervals, OpenTailBlocksSuffix) {
    ResourceSchedule s;
    BookingEntry e{"o", "1",
                   {{SegmentKind::unload, {at(seconds(30)), at(seconds(40))}},
                    {SegmentKind::operation, {at(seconds(40)), at(seconds(50))}}},
                   true, "", ""};
    s.insert_booking(e);
    const TimeInterval window{at(seconds(0)), at(seconds(100))};
    const auto free = s.free_intervals(window);
    ASSERT_EQ(free.size(), 1u);
    EXPECT_EQ(free[0], (TimeInterval{at(seconds(0)), at(seconds(30))}));
    EXPECT_EQ(free, scan_free(s.entries(), window));
    EXPECT_TRUE(s.gaps().size() == 1u);
}

TEST(InsertBooking, EmptyScheduleHasNoIncrement) {
    ResourceSchedule s("B", forging_setup());
    const auto report = s.insert_booking(production("o1", at_minute(0), minutes(45), minutes(150), "A"));
    EXPECT_EQ(report.time_increment, Duration::zero());
    EXPECT_FALSE(report.successor_order.has_value());
}

TEST(InsertBooking, InBetweenShrinksSuccessorSetup) {
    ResourceSchedule s("B", forging_setup());
    // Successor: product A after initial state B needs 45 min setup before its core at 600.
    s.insert_booking(production("late", at_minute(555), minutes(45), minutes(100), "A"));
    const auto before = s.entries().front();

    // A new product-A booking in front leaves state A behind, so A -> A needs no setup.
    const auto report = s.insert_booking(production("early", at_minute(100), minutes(45), minutes(150), "A"));
    const Duration recomputed = s.setup("A", "A") - s.setup("B", "A");
    EXPECT_EQ(report.time_increment, recomputed);
    EXPECT_EQ(report.time_increment, minutes(-45));
    EXPECT_EQ(report.successor_order, "late");

    const auto& after = s.entries().back();
    EXPECT_EQ(after.order_id, "late");
    EXPECT_EQ(after.core(), before.core());
    EXPECT_EQ(after.setup_length(), Duration::zero());
    EXPECT_EQ(after.span_start(), at_minute(600));
    for (std::size_t i = 1; i < after.segments.size(); ++i) {
        EXPECT_EQ(after.segments[i], before.segments[i]);
    }
}

TEST(InsertBooking, GrowingSuccessorSetupCanCollide) {
    ResourceSchedule s("A", forging_setup());
    // Successor of product B: A -> B setup 30 min, core starts at 100.
    s.insert_booking(production("late", at_minute(70), minutes(30), minutes(50), "B"));
    // A product-A booking ending at 90 leaves state A: successor setup stays 30 min and
    // would have to start at 70, before the new booking ends.
    EXPECT_THROW(s.insert_booking(production("early", at_minute(0), Duration::zero(), minutes(90), "A")),
                 OverlapError);
    // Ending at 70 fits exactly.
    EXPECT_NO_THROW(s.insert_booking(production("early", at_minute(0), Duration::zero(), minutes(70), "A")));
}

TEST(InsertBooking, SuccessorSetupGrowsWhenStateChanges) {
    ResourceSchedule s("A", forging_setup());
    s.insert_booking(production("late", at_minute(200), Duration::zero(), minutes(50), "A"));
    const auto report = s.insert_booking(production("early", at_minute(0), minutes(30), minutes(60), "B"));
    EXPECT_EQ(report.time_increment, minutes(45));
    EXPECT_EQ(s.entries().back().span_start(), at_minute(155));
}

TEST(InsertBooking, RejectsOverlapAndWrongSetup) {
    ResourceSchedule s("B", forging_setup());
    s.insert_booking(production("a", at_minute(0), minutes(45), minutes(100), "A"));
    EXPECT_THROW(s.insert_booking(production("b", at_minute(120), Duration::zero(), minutes(10), "A")),
                 OverlapError);
    EXPECT_THROW(s.insert_booking(production("b", at_minute(200), minutes(45), minutes(10), "A")),
                 std::invalid_argument);
}

TEST(InsertBooking, NothingAfterAnOpenTail) {
    ResourceSchedule s;
    s.insert_booking(production("a", at_minute(0), Duration::zero(), minutes(10), "", true));
    EXPECT_THROW(s.insert_booking(production("b", at_minute(500), Duration::zero(), minutes(10), "")),
                 OverlapError);
    EXPECT_THROW(s.insert_booking(production("a", at_minute(600), Duration::zero(), minutes(10), "", true)),
                 ScheduleError);
}

TEST(CloseOpenTail, ImmediatePickup) {
    ResourceSchedule s;
    s.insert_booking(production("o", clock_time(0, 19, 10), Duration::zero(), minutes(150), "A", true));
    s.close_open_tail("o", clock_time(0, 21, 50), minutes(10));
    const auto& e = s.entries().front();
    EXPECT_FALSE(e.open_tail);
    ASSERT_EQ(e.segments.size(), 2u);
    EXPECT_EQ(e.segments.back(), (Segment{SegmentKind::load, {clock_time(0, 21, 40), clock_time(0, 21, 50)}}));
    const auto free = s.free_intervals({clock_time(0, 0, 0), clock_time(1, 0, 0)});
    EXPECT_EQ(free.back().start, clock_time(0, 21, 50));
}

TEST(CloseOpenTail, LateDepartureAddsBlockedHold) {
    ResourceSchedule s;
    s.insert_booking(production("o", clock_time(0, 19, 10), Duration::zero(), minutes(150), "A", true));
    s.close_open_tail("o", clock_time(1, 4, 55), minutes(10));
    const auto& seg = s.entries().front().segments;
    ASSERT_EQ(seg.size(), 3u);
    EXPECT_EQ(seg[1], (Segment{SegmentKind::blocked_hold, {clock_time(0, 21, 40), clock_time(1, 4, 45)}}));
    EXPECT_EQ(seg[2], (Segment{SegmentKind::load, {clock_time(1, 4, 45), clock_time(1, 4, 55)}}));
}

TEST(CloseOpenTail, SecondCloseFails) {
    ResourceSchedule s;
    s.insert_booking(production("o", at_minute(0), Duration::zero(), minutes(10), "A", true));
    s.close_open_tail("o", at_minute(20), minutes(10));
    EXPECT_THROW(s.close_open_tail("o", at_minute(30), minutes(10)), NoOpenTail);
    EXPECT_THROW(s.close_open_tail("other", at_minute(30), minutes(10)), NoOpenTail);
}

TEST(CloseOpenTail, DepartureBeforeOperationEndRejected) {
    ResourceSchedule s;
    s.insert_booking(production("o", at_minute(0), Duration::zero(), minutes(10), "A", true));
    EXPECT_THROW(s.close_open_tail("o", at_minute(15), minutes(10)), std::invalid_argument);
}

TEST(Gaps, LatestEndAccountsForSuccessorSetup) {
    ResourceSchedule s("B", forging_setup());
    s.insert_booking(production("m", at_minute(600), Duration::zero(), minutes(60), "B"));
    const auto gaps = s.gaps();
    ASSERT_EQ(gaps.size(), 2u);
    EXPECT_EQ(gaps[0].predecessor_state, "B");
    EXPECT_EQ(s.latest_end(gaps[0], "A"), at_minute(570));
    EXPECT_EQ(s.latest_end(gaps[0], "B"), at_minute(600));
    EXPECT_EQ(s.time_increment(gaps[0], "A"), minutes(30));
    EXPECT_EQ(s.latest_end(gaps[1], "A"), std::nullopt);
    EXPECT_EQ(gaps[1].start, at_minute(660));
}

TEST(Reservations, PlanningViewExcludesHeldSlots) {
    ResourceSchedule s;
    BookingEntry hold{"other", "1", {{SegmentKind::operation, {at(seconds(10)), at(seconds(20))}}}, false, "", ""};
    const auto view = s.with_reservations(std::vector<BookingEntry>{hold});
    const auto free = view.free_intervals({at(seconds(0)), at(seconds(30))});
    ASSERT_EQ(free.size(), 2u);
    EXPECT_EQ(free[0].end, at(seconds(10)));
    EXPECT_EQ(free[1].start, at(seconds(20)));
    EXPECT_TRUE(s.entries().empty());
}

class ScheduleProperty : public ::testing::TestWithParam<int> {};

TEST_P(ScheduleProperty, RandomInsertionsKeepInvariants) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) * 7919u + 13u);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const std::vector<std::string> states{"A", "B", "C"};
    Matrix m;
    for (const auto& a : states) {
        for (const auto& b : states) {
            if (a != b) m[{a, b}] = minutes(uni(0, 20));
        }
    }
    ResourceSchedule s("A", matrix_setup(m));
    const TimeInterval window{at_minute(0), at_minute(1000)};

    std::vector<BookingEntry> committed;
    for (int k = 0; k < 10; ++k) {
        const auto gaps = s.gaps();
        const auto& gap = gaps[static_cast<std::size_t>(uni(0, static_cast<int>(gaps.size()) - 1))];
        const std::string product = states[static_cast<std::size_t>(uni(0, 2))];
        const Duration setup = s.setup(gap.predecessor_state, product);
        Duration offset = minutes(uni(0, 60));
        if (gap.successor) {
            // Keep the core in front of the successor so the entry targets this gap.
            const Duration room = gap.successor->core_start - gap.start - setup;
            if (room <= Duration::zero()) continue;
            offset = std::min(offset, room - seconds(1));
        }
        const TimePoint start = gap.start + offset;
        const Duration op = minutes(uni(1, 60));
        const bool tail = uni(0, 9) == 0 && !s.has_open_tail();
        BookingEntry e = production("o" + std::to_string(k), start, setup, op, product, tail);
        const UpperBound latest = s.latest_end(gap, product);
        const Duration expected_ti = s.time_increment(gap, product);
        if (!within(e.span_end(), latest)) {
            EXPECT_THROW(s.insert_booking(e), OverlapError);
            continue;
        }
        const auto report = s.insert_booking(e);
        EXPECT_EQ(report.time_increment, expected_ti);
        committed.push_back(e);

        // Booked cores of all earlier entries stay put.
        for (const auto& c : committed) {
            bool found = false;
            for (const auto& cur : s.entries()) {
                if (cur.order_id != c.order_id) continue;
                found = true;
                EXPECT_EQ(cur.core(), c.core());
                EXPECT_EQ(cur.segments.back(), c.segments.back());
            }
            EXPECT_TRUE(found);
        }
        // Pairwise disjoint full spans.
        const auto& es = s.entries();
        for (std::size_t i = 0; i + 1 < es.size(); ++i) {
            EXPECT_LE(es[i].span_end(), es[i + 1].span_start());
        }
        EXPECT_EQ(s.free_intervals(window), scan_free(es, window));

        // Free and busy lists partition the window.
        Duration total{0};
        for (const auto& f : s.free_intervals(window)) total += f.length();
        for (const auto& b : s.busy_intervals(window)) total += b.length();
        EXPECT_EQ(total, window.length());
    }
}

TEST_P(ScheduleProperty, ZeroIncrementInsertIsReversible) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 101u);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    ResourceSchedule s;
    TimePoint t = at_minute(0);
    for (int k = 0; k < 5; ++k) {
        t += minutes(uni(5, 50));
        BookingEntry e = production("base" + std::to_string(k), t, Duration::zero(), minutes(uni(1, 30)), "");
        t = e.span_end();
        s.insert_booking(e);
    }
    const TimeInterval window{at_minute(0), at_minute(500)};
    const auto original = s.free_intervals(window);

    const auto gaps = s.gaps();
    const auto& gap = gaps[static_cast<std::size_t>(uni(0, static_cast<int>(gaps.size()) - 1))];
    const UpperBound latest = s.latest_end(gap, "");
    const Duration room = latest ? *latest - gap.start : minutes(100);
    if (room < minutes(1)) GTEST_SKIP() << "no room";
    ResourceSchedule grown = s;
    BookingEntry extra = production("extra", gap.start, Duration::zero(), minutes(1), "");
    const auto report = grown.insert_booking(extra);
    ASSERT_EQ(report.time_increment, Duration::zero());

    ResourceSchedule rebuilt;
    for (const auto& e : grown.entries()) {
        if (e.order_id != "extra") rebuilt.insert_booking(e);
    }
    EXPECT_EQ(rebuilt.free_intervals(window), original);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ScheduleProperty, ::testing::Range(0, 40));
