#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnetsched/protocol/holds.hpp"
#include "cnetsched/runtime/agent.hpp"
#include "cnetsched/time/resource_schedule.hpp"

namespace cnetsched {

enum class ResourceType { production, buffer, transport };

std::string_view to_string(ResourceType type);

struct ResourceSnapshot {
    AgentId id;
    ResourceType type = ResourceType::production;
    Location location;
    std::vector<BookingEntry> entries;
    /// Each accepted booking exactly as it was first inserted.
    std::vector<BookingEntry> committed;
};

/// Setup durations between states; pairs that are not listed (and equal states) cost nothing.
using SetupMatrix = std::map<std::pair<std::string, std::string>, Duration>;

SetupFunction matrix_setup(SetupMatrix matrix);

/// Shared part of every resource agent: schedule, offer holds, accept/reject handling.
class ResourceAgent : public Agent {
public:
    ResourceAgent(AgentId id, ResourceType type, Location location, ResourceSchedule schedule,
                  KernelTime hold_extension);

    void on_message(const Envelope& e, Context& ctx) override;

    const ResourceSchedule& schedule() const { return schedule_; }
    const HoldBook& holds() const { return holds_; }
    ResourceSnapshot snapshot() const;
    /// Books an entry outside any negotiation (scenario initial bookings).
    void preload(const BookingEntry& entry);

protected:
    struct Offer {
        Proposal proposal;
        BookingEntry reservation;
    };

    virtual void on_cfp(const Envelope& e, const Cfp& cfp, Context& ctx);
    virtual void on_departure(const Envelope& e, const InformDeparture& d, Context& ctx);
    /// Builds the entry to insert for an accepted item, or returns a refusal reason.
    virtual std::variant<BookingEntry, std::string> booking_for(const Acceptance& item,
                                                                const OfferHold& hold) const = 0;
    virtual std::vector<Offer> make_offers(const Cfp& cfp, const ResourceSchedule& view,
                                           const std::string& order_id, int stage) = 0;
    virtual void after_accept(const Envelope&, Context&) {}

    /// Proposes against the schedule plus every other order's holds and sends the batch.
    void answer(const Envelope& e, const Cfp& cfp, Context& ctx);
    ResourceSchedule planning_view(const std::string& order_id) const;
    ProposalId next_proposal_id();
    ResourceInfo info() const { return ResourceInfo{id(), id(), location_}; }
    void send(Context& ctx, const Envelope& to_answer, Message body);

    ResourceSchedule schedule_;
    HoldBook holds_;

private:
    void on_accept(const Envelope& e, const AcceptProposal& a, Context& ctx);

    ResourceType type_;
    Location location_;
    KernelTime hold_extension_;
    std::uint64_t proposal_seq_ = 0;
    std::vector<BookingEntry> committed_;
};

struct ProductionConfig {
    AgentId id;
    std::string capability;
    Location location;
    std::map<std::string, Duration> op_duration;
    SetupMatrix setup;
    std::string initial_state;
    /// Earliest slot in up to this many distinct gaps per requested alternative.
    int offers = 2;
    KernelTime hold_extension{0};
};

class ProductionAgent : public ResourceAgent {
public:
    explicit ProductionAgent(ProductionConfig config);

    bool blocked() const { return schedule_.has_open_tail() || stay_pending_.has_value(); }
    std::size_t deferred() const { return deferred_.size(); }
    const std::string& capability() const { return config_.capability; }

protected:
    void on_cfp(const Envelope& e, const Cfp& cfp, Context& ctx) override;
    void on_departure(const Envelope& e, const InformDeparture& d, Context& ctx) override;
    std::variant<BookingEntry, std::string> booking_for(const Acceptance& item,
                                                        const OfferHold& hold) const override;
    std::vector<Offer> make_offers(const Cfp& cfp, const ResourceSchedule& view,
                                   const std::string& order_id, int stage) override;
    void after_accept(const Envelope& e, Context& ctx) override;

private:
    std::vector<Offer> stay_offer(const Cfp& cfp, const std::string& order_id, int stage);
    std::vector<Offer> normal_offers(const Cfp& cfp, const ResourceSchedule& view, const std::string& order_id,
                                     int stage, std::optional<TimePoint> skip_gap);
    void drain_deferred(Context& ctx);

    ProductionConfig config_;
    std::deque<Envelope> deferred_;
    /// Order whose workpiece stays on the machine for its next operation.
    std::optional<std::string> stay_pending_;
};

struct BufferConfig {
    AgentId id;
    Location location;
    KernelTime hold_extension{0};
};

class BufferAgent : public ResourceAgent {
public:
    explicit BufferAgent(BufferConfig config);

protected:
    std::variant<BookingEntry, std::string> booking_for(const Acceptance& item,
                                                        const OfferHold& hold) const override;
    std::vector<Offer> make_offers(const Cfp& cfp, const ResourceSchedule& view,
                                   const std::string& order_id, int stage) override;
};

struct TransportConfig {
    AgentId id;
    TransportGeometry geometry;
    std::int64_t initial_x = 0;
    /// Every site a transport may visit, by id.
    std::map<std::string, Location> sites;
    KernelTime hold_extension{0};
};

/// State of a transport before its first booking.
std::string initial_transport_state(std::int64_t x);

class TransportAgent : public ResourceAgent {
public:
    explicit TransportAgent(TransportConfig config);

    const TransportGeometry& geometry() const { return config_.geometry; }
    /// Builds a booking entry moving from one site to another with the load starting at `load_start`.
    BookingEntry leg_entry(const std::string& order_id, const std::string& label,
                           const std::string& from_site, const std::string& to_site,
                           TimePoint load_start, Duration setup) const;

protected:
    std::variant<BookingEntry, std::string> booking_for(const Acceptance& item,
                                                        const OfferHold& hold) const override;
    std::vector<Offer> make_offers(const Cfp& cfp, const ResourceSchedule& view,
                                   const std::string& order_id, int stage) override;

private:
    std::optional<Offer> place(const TransportLeg& leg, const ResourceSchedule& view,
                               const std::string& order_id, const std::string& label);

    TransportConfig config_;
};

}  // namespace cnetsched
