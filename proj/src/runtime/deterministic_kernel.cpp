#include "cnetsched/runtime/kernel.hpp"

#include <spdlog/spdlog.h>

namespace cnetsched {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

class DeterministicKernel::Ctx : public Context {
public:
    Ctx(DeterministicKernel& k, AgentId self) : k_(k), self_(std::move(self)) {}

    KernelTime now() const override { return k_.now_; }
    void send(Envelope e) override {
        e.sender = self_;
        k_.post(std::move(e));
    }
    void set_timer(KernelTime at, int token) override {
        k_.push(Event{std::max(at, k_.now_), k_.rank_of(self_), 0, Kind::timer, self_, std::nullopt, token});
    }
    void cancel_timer(int token) override { k_.cancelled_.insert({self_, token}); }
    Directory& directory() override { return k_.directory_; }
    void order_finished(const OrderOutcome& outcome) override { k_.records_.outcomes.push_back(outcome); }
    void violation(const std::string& what) override {
        spdlog::debug("protocol violation: {}", what);
        k_.records_.violations.push_back(what);
    }

private:
    DeterministicKernel& k_;
    AgentId self_;
};

bool DeterministicKernel::Later::operator()(const Event& a, const Event& b) const {
    return std::tie(a.at, a.rank, a.seq) > std::tie(b.at, b.rank, b.seq);
}

DeterministicKernel::DeterministicKernel(Directory& directory, Options options)
    : directory_(directory), options_(options) {}

DeterministicKernel::~DeterministicKernel() = default;

std::uint64_t DeterministicKernel::rank_of(const AgentId& id) const {
    return splitmix(fnv1a(id) ^ splitmix(options_.seed));
}

void DeterministicKernel::push(Event e) {
    e.seq = ++seq_;
    queue_.push(std::move(e));
}

void DeterministicKernel::post(Envelope e) {
    records_.messages.count(e);
    if (options_.record_trace) {
        records_.trace.push_back(TraceRecord{now_, e.sender, e.receiver, std::string(variant_name(e.body)),
                                             e.conversation_id});
    }
    const AgentId target = e.receiver;
    push(Event{now_ + options_.hop, rank_of(e.sender), 0, Kind::message, target, std::move(e), 0});
}

Agent& DeterministicKernel::add(std::unique_ptr<Agent> agent, KernelTime start_at) {
    const AgentId id = agent->id();
    auto [it, inserted] = agents_.emplace(id, std::move(agent));
    if (!inserted) throw std::invalid_argument("duplicate agent id '" + id + "'");
    push(Event{start_at, rank_of(id), 0, Kind::start, id, std::nullopt, 0});
    return *it->second;
}

Agent* DeterministicKernel::find(const AgentId& id) const {
    auto it = agents_.find(id);
    return it == agents_.end() ? nullptr : it->second.get();
}

void DeterministicKernel::run() {
    while (!queue_.empty()) {
        Event ev = queue_.top();
        queue_.pop();
        if (ev.kind == Kind::timer && cancelled_.erase({ev.target, ev.token}) > 0) continue;
        now_ = ev.at;
        if (now_ > options_.limit) {
            throw RunTimeout("logical time passed " + std::to_string(options_.limit.count()) +
                             " us with events still pending");
        }
        Agent* agent = find(ev.target);
        if (agent == nullptr) {
            records_.violations.push_back("message for unknown agent '" + ev.target + "' dropped");
            continue;
        }
        Ctx ctx(*this, ev.target);
        switch (ev.kind) {
            case Kind::start: agent->on_start(ctx); break;
            case Kind::message: agent->on_message(*ev.envelope, ctx); break;
            case Kind::timer: agent->on_timer(ev.token, ctx); break;
        }
    }
}

}  // namespace cnetsched
