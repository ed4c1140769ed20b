#include "cnetsched/protocol/holds.hpp"

#include <algorithm>

namespace cnetsched {

void HoldBook::hold(OfferHold h) { holds_.push_back(std::move(h)); }

std::optional<OfferHold> HoldBook::release(std::string_view proposal_id) {
    auto it = std::find_if(holds_.begin(), holds_.end(),
                           [&](const OfferHold& h) { return h.offer.id == proposal_id; });
    if (it == holds_.end()) return std::nullopt;
    OfferHold out = std::move(*it);
    holds_.erase(it);
    return out;
}

std::vector<OfferHold> HoldBook::expire(KernelTime now) {
    std::vector<OfferHold> gone;
    auto keep = std::stable_partition(holds_.begin(), holds_.end(),
                                      [&](const OfferHold& h) { return h.hold_deadline >= now; });
    std::move(keep, holds_.end(), std::back_inserter(gone));
    holds_.erase(keep, holds_.end());
    return gone;
}

void HoldBook::release_order(std::string_view order_id) {
    std::erase_if(holds_, [&](const OfferHold& h) { return h.order_id == order_id; });
}

const OfferHold* HoldBook::find(std::string_view proposal_id) const {
    for (const auto& h : holds_) {
        if (h.offer.id == proposal_id) return &h;
    }
    return nullptr;
}

std::vector<BookingEntry> HoldBook::reservations_excluding(std::string_view order_id) const {
    std::vector<BookingEntry> out;
    for (const auto& h : holds_) {
        if (h.order_id != order_id) out.push_back(h.reservation);
    }
    return out;
}

}  // namespace cnetsched
