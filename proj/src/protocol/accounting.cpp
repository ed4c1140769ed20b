#include "cnetsched/protocol/accounting.hpp"

#include <sstream>

#include "json.hpp"

namespace cnetsched {

void MessageCounter::count(const Envelope& e) {
    ++buckets_[Key{e.order_id, e.stage, std::string(variant_name(e.body))}];
}

void MessageCounter::add(const MessageCounter& other) {
    for (const auto& [k, v] : other.buckets_) buckets_[k] += v;
}

std::uint64_t MessageCounter::total() const {
    std::uint64_t n = 0;
    for (const auto& [k, v] : buckets_) n += v;
    return n;
}

std::uint64_t MessageCounter::for_order(const std::string& order_id) const {
    std::uint64_t n = 0;
    for (const auto& [k, v] : buckets_) {
        if (std::get<0>(k) == order_id) n += v;
    }
    return n;
}

std::uint64_t MessageCounter::for_stage(const std::string& order_id, int stage) const {
    std::uint64_t n = 0;
    for (const auto& [k, v] : buckets_) {
        if (std::get<0>(k) == order_id && std::get<1>(k) == stage) n += v;
    }
    return n;
}

std::uint64_t MessageCounter::for_variant(const std::string& variant) const {
    std::uint64_t n = 0;
    for (const auto& [k, v] : buckets_) {
        if (std::get<2>(k) == variant) n += v;
    }
    return n;
}

std::string to_jsonl(const std::vector<TraceRecord>& trace) {
    std::string out;
    for (const auto& r : trace) {
        nlohmann::ordered_json j;
        j["t"] = r.t.count();
        j["from"] = r.sender;
        j["to"] = r.receiver;
        j["variant"] = r.variant;
        j["conv"] = r.conversation_id;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<TraceRecord> parse_trace(const std::string& jsonl) {
    std::vector<TraceRecord> out;
    std::istringstream in(jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        out.push_back({KernelTime{j.at("t").get<std::int64_t>()}, j.at("from").get<std::string>(),
                       j.at("to").get<std::string>(), j.at("variant").get<std::string>(),
                       j.at("conv").get<std::string>()});
    }
    return out;
}

}  // namespace cnetsched
