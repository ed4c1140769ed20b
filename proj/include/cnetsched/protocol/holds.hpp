#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cnetsched/protocol/messages.hpp"
#include "cnetsched/time/booking.hpp"

namespace cnetsched {

/// A slot promised to one order and kept out of every other order's proposals.
struct OfferHold {
    Proposal offer;
    std::string order_id;
    /// Region the offer may still grow into (slot plus its usable slack).
    BookingEntry reservation;
    KernelTime hold_deadline{0};
};

class HoldBook {
public:
    void hold(OfferHold h);
    /// Removes and returns the hold; nullopt when unknown or already gone.
    std::optional<OfferHold> release(std::string_view proposal_id);
    /// Drops every hold whose deadline lies before `now`.
    std::vector<OfferHold> expire(KernelTime now);
    void release_order(std::string_view order_id);

    const OfferHold* find(std::string_view proposal_id) const;
    /// Reservations of every order except `order_id`.
    std::vector<BookingEntry> reservations_excluding(std::string_view order_id) const;
    std::size_t size() const { return holds_.size(); }
    bool empty() const { return holds_.empty(); }

private:
    std::vector<OfferHold> holds_;
};

}  // namespace cnetsched
