#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cnetsched/protocol/messages.hpp"

namespace cnetsched {

/// Append-only message counts per (order, stage, variant). One envelope counts once.
class MessageCounter {
public:
    using Key = std::tuple<std::string, int, std::string>;

    void count(const Envelope& e);
    void add(const MessageCounter& other);

    std::uint64_t total() const;
    std::uint64_t for_order(const std::string& order_id) const;
    std::uint64_t for_stage(const std::string& order_id, int stage) const;
    std::uint64_t for_variant(const std::string& variant) const;
    const std::map<Key, std::uint64_t>& buckets() const { return buckets_; }

private:
    std::map<Key, std::uint64_t> buckets_;
};

struct TraceRecord {
    KernelTime t{0};
    AgentId sender;
    AgentId receiver;
    std::string variant;
    std::string conversation_id;
};

/// One JSON object per line: {"t":..,"from":..,"to":..,"variant":..,"conv":..}.
std::string to_jsonl(const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> parse_trace(const std::string& jsonl);

}  // namespace cnetsched
