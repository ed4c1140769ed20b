#include <gtest/gtest.h>

#include "cnetsched/agents/directory.hpp"
#include "cnetsched/agents/resource_agents.hpp"
#include "cnetsched/calculus/calculus.hpp"
#include "test_support.hpp"

using namespace cnetsched;
using testing_support::FakeContext;
using testing_support::hm;

namespace {

using std::chrono::milliseconds;

const ScheduleParams kParams{minutes(21), minutes(15)};

ProductionConfig forging() {
    return ProductionConfig{"Forging", "Forging", {10, 11}, {{"A", minutes(150)}, {"B", minutes(150)}},
                            {{{"A", "B"}, minutes(30)}, {{"B", "A"}, minutes(45)}}, "B", 2, milliseconds(100)};
}

Cfp production_cfp(const std::string& product, TimePoint earliest, Duration unload = minutes(10)) {
    Cfp c;
    c.kind = StageKind::production;
    c.workpiece = Workpiece{"o1", product, "", {}};
    c.production.push_back(ProductionRequest{"1", "Forging", earliest, unload, minutes(10)});
    c.deadline = milliseconds(100);
    return c;
}

Envelope to_agent(const std::string& to, Message body, const std::string& order = "o1", int stage = 2) {
    return Envelope{"OA:" + order, to, order + "/" + std::to_string(stage), order, stage, std::move(body)};
}

std::vector<Proposal> proposals(const FakeContext& ctx) {
    std::vector<Proposal> out;
    for (const auto& b : ctx.bodies<ProposalBatch>()) out.insert(out.end(), b.proposals.begin(), b.proposals.end());
    return out;
}

BookingEntry fixed(const std::string& order, TimePoint s, TimePoint f, const std::string& state) {
    return BookingEntry{order, "x", {{SegmentKind::operation, {s, f}}}, false, state, state};
}

TransportConfig crane1() {
    TransportConfig c;
    c.id = "Crane1";
    c.geometry = TransportGeometry{Speed{1, 12}, minutes(10), minutes(10), 0, 30};
    c.initial_x = 5;
    c.sites = {{"Cutting", {5, 5}}, {"Forging", {10, 11}}, {"Buffer1", {15, 15}}, {"Quality", {40, 5}}};
    c.hold_extension = milliseconds(100);
    return c;
}

TransportLeg leg(const std::string& id, const std::string& from, Location fl, const std::string& to, Location tl,
                 StageWindows w) {
    return TransportLeg{id, from, fl, to, tl, w, "P", std::nullopt};
}

}  // namespace

TEST(Directory, RegisterSearchDeregister) {
    Directory d;
    d.register_agent("Milling", "Milling2");
    d.register_agent("Milling", "Milling1");
    EXPECT_EQ(d.search("Milling"), (std::vector<AgentId>{"Milling1", "Milling2"}));
    EXPECT_TRUE(d.search("Welding").empty());
    d.deregister_agent("Milling1");
    EXPECT_EQ(d.search("Milling"), std::vector<AgentId>{"Milling2"});
}

TEST(ProductionAgent, SetupAndUnloadPrecedeOperation) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("A", TimePoint{})), ctx);
    const auto ps = proposals(ctx);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].slot.start, at_minute(55));
    EXPECT_EQ(ps[0].setup, minutes(45));
    EXPECT_TRUE(ps[0].slack_after.is_unbounded());
    EXPECT_EQ(ps[0].price.value, minutes(195));
}

TEST(ProductionAgent, ShortGapYieldsNoProposalThere) {
    ProductionAgent a(forging());
    a.preload(fixed("x", hm(10, 0), hm(12, 0), "B"));
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const auto ps = proposals(ctx);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].slot.start, hm(12, 10));
}

TEST(ProductionAgent, TwoGapsGiveTwoProposals) {
    ProductionAgent a(forging());
    a.preload(fixed("x", hm(14, 0), hm(16, 0), "B"));
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const auto ps = proposals(ctx);
    ASSERT_EQ(ps.size(), 2u);
    EXPECT_EQ(ps[0].slot.start, hm(8, 0));
    ASSERT_TRUE(ps[0].slack_after.is_finite());
    EXPECT_EQ(ps[0].slack_after.value(), minutes(360 - 150 - 10));
    EXPECT_EQ(ps[1].slot.start, hm(16, 10));
    EXPECT_EQ(a.holds().size(), 2u);
}

TEST(ProductionAgent, HeldOfferIsHiddenFromOtherOrders) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    auto cfp2 = production_cfp("B", TimePoint{});
    cfp2.workpiece.order_id = "o2";
    a.on_message(to_agent("Forging", cfp2, "o2"), ctx);
    const auto ps = proposals(ctx);
    // The first order's offer has no successor, so its hold covers everything after 08:00.
    ASSERT_EQ(ps.size(), 2u);
    EXPECT_EQ(ps[1].slot, (TimeInterval{at_minute(10), at_minute(160)}));
}

TEST(ProductionAgent, MatchingAcceptBooksAndBlocks) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const Proposal p = proposals(ctx).at(0);
    a.on_message(to_agent("Forging", AcceptProposal{{Acceptance{p.id, p.slot, minutes(10)}}}), ctx);
    EXPECT_TRUE(ctx.bodies<InformFailure>().empty());
    EXPECT_TRUE(a.blocked());
    ASSERT_EQ(a.schedule().entries().size(), 1u);
    EXPECT_TRUE(a.schedule().entries()[0].open_tail);
    EXPECT_TRUE(a.holds().empty());
}

TEST(ProductionAgent, ShiftedAcceptIsRefused) {
    ProductionAgent a(forging());
    a.preload(fixed("x", hm(14, 0), hm(16, 0), "B"));
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const Proposal p = proposals(ctx).at(0);
    const TimeInterval late{p.slot.start + minutes(300), p.slot.end + minutes(300)};
    a.on_message(to_agent("Forging", AcceptProposal{{Acceptance{p.id, late, minutes(10)}}}), ctx);
    ASSERT_EQ(ctx.bodies<InformFailure>().size(), 1u);
    EXPECT_FALSE(a.blocked());
}

TEST(ProductionAgent, AcceptAfterHoldExpiryIsRefused) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const Proposal p = proposals(ctx).at(0);
    ctx.clock = milliseconds(500);
    a.on_message(to_agent("Forging", AcceptProposal{{Acceptance{p.id, p.slot, minutes(10)}}}), ctx);
    ASSERT_EQ(ctx.bodies<InformFailure>().size(), 1u);
    EXPECT_TRUE(a.schedule().entries().empty());
}

TEST(ProductionAgent, RejectFreesSlotRightAway) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const Proposal p = proposals(ctx).at(0);
    a.on_message(to_agent("Forging", RejectProposal{{p.id}}), ctx);
    EXPECT_TRUE(a.holds().empty());
    auto cfp2 = production_cfp("B", hm(8, 0));
    a.on_message(to_agent("Forging", cfp2, "o2"), ctx);
    EXPECT_EQ(proposals(ctx).back().slot.start, p.slot.start);
}

TEST(ProductionAgent, BlockedDefersUntilDeparture) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const Proposal p = proposals(ctx).at(0);
    a.on_message(to_agent("Forging", AcceptProposal{{Acceptance{p.id, p.slot, minutes(10)}}}), ctx);
    ctx.sent.clear();

    auto c2 = production_cfp("B", hm(8, 0));
    c2.deadline = milliseconds(1000);
    a.on_message(to_agent("Forging", c2, "o2"), ctx);
    a.on_message(to_agent("Forging", c2, "o3"), ctx);
    EXPECT_EQ(a.deferred(), 2u);
    EXPECT_TRUE(ctx.sent.empty());

    a.on_message(to_agent("Forging", InformDeparture{"o1", p.slot.end + minutes(20), minutes(10), false}), ctx);
    EXPECT_FALSE(a.blocked());
    ASSERT_EQ(ctx.sent.size(), 2u);
    EXPECT_EQ(ctx.sent[0].receiver, "OA:o2");
    EXPECT_EQ(ctx.sent[1].receiver, "OA:o3");
    const auto ps = proposals(ctx);
    ASSERT_FALSE(ps.empty());
    EXPECT_GE(ps[0].slot.start, p.slot.end + minutes(20));
    EXPECT_EQ(a.schedule().entries()[0].span_end(), p.slot.end + minutes(20));
}

TEST(ProductionAgent, StayKeepsMachineBusyWithFollowUp) {
    ProductionAgent a(forging());
    FakeContext ctx;
    a.on_message(to_agent("Forging", production_cfp("B", hm(8, 0))), ctx);
    const Proposal p = proposals(ctx).at(0);
    a.on_message(to_agent("Forging", AcceptProposal{{Acceptance{p.id, p.slot, minutes(10)}}}), ctx);
    ctx.sent.clear();

    // The owner of the open tail gets a stay offer starting right at its operation end.
    a.on_message(to_agent("Forging", production_cfp("B", p.slot.end + minutes(21)), "o1", 3), ctx);
    const auto ps = proposals(ctx);
    ASSERT_FALSE(ps.empty());
    EXPECT_EQ(ps[0].kind, ProposalKind::stay);
    EXPECT_EQ(ps[0].slot.start, p.slot.end);

    a.on_message(to_agent("Forging", InformDeparture{"o1", p.slot.end, Duration::zero(), true}, "o1", 3), ctx);
    EXPECT_TRUE(a.blocked());
    a.on_message(to_agent("Forging", AcceptProposal{{Acceptance{ps[0].id, ps[0].slot}}}, "o1", 3), ctx);
    EXPECT_TRUE(ctx.bodies<InformFailure>().empty());
    ASSERT_EQ(a.schedule().entries().size(), 2u);
    EXPECT_EQ(a.schedule().entries()[0].span_end(), p.slot.end);
    EXPECT_TRUE(a.schedule().entries()[1].open_tail);
    EXPECT_TRUE(a.blocked());
}

TEST(TransportAgent, WorkedExampleLegIntoBuffer) {
    TransportAgent t(crane1());
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::transport;
    c.deadline = milliseconds(100);
    c.legs.push_back(leg("a:B#1", "Cutting", {5, 5}, "Buffer1", {15, 15},
                         StageWindows{hm(18, 0), hm(18, 21), hm(19, 53), hm(20, 14)}));
    t.on_message(to_agent("Crane1", c), ctx);
    const auto ps = proposals(ctx);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].slot, (TimeInterval{hm(18, 0), hm(18, 22)}));
}

TEST(TransportAgent, OutOfSegmentLegIsSkipped) {
    TransportAgent t(crane1());
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::transport;
    c.legs.push_back(leg("d:P", "Cutting", {5, 5}, "Quality", {40, 5}, StageWindows{hm(18, 0), hm(18, 21)}));
    t.on_message(to_agent("Crane1", c), ctx);
    EXPECT_TRUE(proposals(ctx).empty());
}

TEST(TransportAgent, BusyCraneCannotServeWindow) {
    TransportAgent t(crane1());
    BookingEntry maint{"maintenance", "busy", {{SegmentKind::setup, {hm(18, 28), hm(18, 30)}}, {SegmentKind::maintenance, {hm(18, 30), hm(4, 34, 1)}}}, false,
                       "Buffer1", "Buffer1"};
    t.preload(maint);
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::transport;
    c.legs.push_back(leg("b:B#1", "Buffer1", {15, 15}, "Forging", {10, 11},
                         StageWindows{hm(18, 36), hm(19, 10), hm(20, 29), hm(20, 50)}));
    t.on_message(to_agent("Crane1", c), ctx);
    EXPECT_TRUE(proposals(ctx).empty());
}

TEST(TransportAgent, ChainedLegIsCheaperThanIndependent) {
    TransportAgent t(crane1());
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::transport;
    c.legs.push_back(leg("a:B#1", "Cutting", {5, 5}, "Buffer1", {15, 15}, StageWindows{hm(18, 0), hm(18, 21)}));
    TransportLeg b = leg("b:B#1", "Buffer1", {15, 15}, "Forging", {10, 11}, StageWindows{hm(18, 36), hm(19, 10)});
    b.chains_after = "a:B#1";
    c.legs.push_back(b);
    t.on_message(to_agent("Crane1", c), ctx);
    const auto ps = proposals(ctx);
    ASSERT_EQ(ps.size(), 3u);
    const Proposal& independent = ps[1];
    const Proposal& chained = ps[2];
    EXPECT_EQ(independent.request_id, "b:B#1");
    EXPECT_EQ(chained.request_id, "b:B#1");
    EXPECT_EQ(chained.required_operation, ps[0].id);
    EXPECT_EQ(ps[0].connected_operations, std::vector<ProposalId>{chained.id});
    // Starting at x=5 the crane first travels to the buffer; chained after leg A it is already there.
    EXPECT_GT(independent.setup, Duration::zero());
    EXPECT_EQ(chained.setup, Duration::zero());
    EXPECT_LT(chained.price, independent.price);
}

TEST(BufferAgent, EmptyBufferOffersWindowStart) {
    BufferAgent b(BufferConfig{"Buffer1", {15, 15}, milliseconds(100)});
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::buffer;
    c.buffer.push_back(BufferRequest{"P1", buffer_windows(hm(18, 0), {hm(19, 10), hm(21, 40), Slack::finite(minutes(100))}, kParams)});
    b.on_message(to_agent("Buffer1", c), ctx);
    const auto ps = proposals(ctx);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].slot, (TimeInterval{hm(18, 0), hm(18, 49)}));
    EXPECT_TRUE(ps[0].slack_after.is_unbounded());
}

TEST(BufferAgent, OccupiedEntryWindowGivesNothing) {
    BufferAgent b(BufferConfig{"Buffer1", {15, 15}, milliseconds(100)});
    b.preload(BookingEntry{"x", "B:1", {{SegmentKind::buffer_hold, {hm(17, 0), hm(21, 0)}}}, false, "", ""});
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::buffer;
    c.buffer.push_back(BufferRequest{"P1", buffer_windows(hm(18, 0), {hm(19, 10), hm(21, 40), Slack::finite(minutes(100))}, kParams)});
    b.on_message(to_agent("Buffer1", c), ctx);
    EXPECT_TRUE(proposals(ctx).empty());
}

TEST(BufferAgent, BlockedExitWindowGivesNothing) {
    BufferAgent b(BufferConfig{"Buffer1", {15, 15}, milliseconds(100)});
    b.preload(BookingEntry{"x", "B:1", {{SegmentKind::buffer_hold, {hm(18, 30), hm(23, 0)}}}, false, "", ""});
    FakeContext ctx;
    Cfp c;
    c.kind = StageKind::buffer;
    c.buffer.push_back(BufferRequest{"P1", buffer_windows(hm(18, 0), {hm(19, 10), hm(21, 40), Slack::finite(minutes(100))}, kParams)});
    b.on_message(to_agent("Buffer1", c), ctx);
    EXPECT_TRUE(proposals(ctx).empty());
}
