#include "cnetsched/agents/resource_agents.hpp"

#include <algorithm>

namespace cnetsched {

std::string_view to_string(ResourceType type) {
    switch (type) {
        case ResourceType::production: return "production";
        case ResourceType::buffer: return "buffer";
        case ResourceType::transport: return "transport";
    }
    return "unknown";
}

SetupFunction matrix_setup(SetupMatrix matrix) {
    return [m = std::move(matrix)](std::string_view from, std::string_view to) {
        if (from == to) return Duration::zero();
        auto it = m.find({std::string(from), std::string(to)});
        return it == m.end() ? Duration::zero() : it->second;
    };
}

ResourceAgent::ResourceAgent(AgentId id, ResourceType type, Location location,
                             ResourceSchedule schedule, KernelTime hold_extension)
    : Agent(std::move(id)),
      schedule_(std::move(schedule)),
      type_(type),
      location_(location),
      hold_extension_(hold_extension) {}

ResourceSnapshot ResourceAgent::snapshot() const {
    return ResourceSnapshot{id(), type_, location_, schedule_.entries(), committed_};
}

void ResourceAgent::preload(const BookingEntry& entry) { schedule_.insert_booking(entry); }

ProposalId ResourceAgent::next_proposal_id() { return id() + "#" + std::to_string(++proposal_seq_); }

ResourceSchedule ResourceAgent::planning_view(const std::string& order_id) const {
    const auto reservations = holds_.reservations_excluding(order_id);
    return schedule_.with_reservations(reservations);
}

void ResourceAgent::send(Context& ctx, const Envelope& to_answer, Message body) {
    ctx.send(Envelope{id(), to_answer.sender, to_answer.conversation_id, to_answer.order_id,
                      to_answer.stage, std::move(body)});
}

void ResourceAgent::on_message(const Envelope& e, Context& ctx) {
    holds_.expire(ctx.now());
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Cfp>) {
                on_cfp(e, m, ctx);
            } else if constexpr (std::is_same_v<T, AcceptProposal>) {
                on_accept(e, m, ctx);
            } else if constexpr (std::is_same_v<T, RejectProposal>) {
                for (const auto& pid : m.proposals) holds_.release(pid);
            } else if constexpr (std::is_same_v<T, InformDeparture>) {
                on_departure(e, m, ctx);
            } else {
                ctx.violation(id() + ": unexpected " + std::string(variant_name(e.body)) + " from " +
                              e.sender);
            }
        },
        e.body);
}

void ResourceAgent::on_cfp(const Envelope& e, const Cfp& cfp, Context& ctx) { answer(e, cfp, ctx); }

void ResourceAgent::on_departure(const Envelope& e, const InformDeparture&, Context& ctx) {
    ctx.violation(id() + ": departure for " + e.order_id + " at a resource that holds no workpieces");
}

void ResourceAgent::answer(const Envelope& e, const Cfp& cfp, Context& ctx) {
    const ResourceSchedule view = planning_view(e.order_id);
    ProposalBatch batch;
    for (auto& offer : make_offers(cfp, view, e.order_id, e.stage)) {
        holds_.hold(OfferHold{offer.proposal, e.order_id, offer.reservation,
                              cfp.deadline + hold_extension_});
        batch.proposals.push_back(std::move(offer.proposal));
    }
    send(ctx, e, std::move(batch));
}

void ResourceAgent::on_accept(const Envelope& e, const AcceptProposal& a, Context& ctx) {
    for (const auto& item : a.items) {
        const OfferHold* hold = holds_.find(item.proposal);
        std::string refusal;
        if (hold == nullptr) {
            refusal = "offer " + item.proposal + " is no longer held";
        } else if (hold->order_id != e.order_id) {
            refusal = "offer " + item.proposal + " belongs to another order";
        } else {
            auto built = booking_for(item, *hold);
            if (auto* why = std::get_if<std::string>(&built)) {
                refusal = *why;
            } else {
                try {
                    auto& entry = std::get<BookingEntry>(built);
                    schedule_.insert_booking(entry);
                    committed_.push_back(std::move(entry));
                } catch (const std::exception& ex) {
                    refusal = ex.what();
                }
            }
        }
        holds_.release(item.proposal);
        if (!refusal.empty()) send(ctx, e, InformFailure{item.proposal, refusal});
    }
    holds_.release_order(e.order_id);
    after_accept(e, ctx);
}

}  // namespace cnetsched
