#include "cnetsched/runtime/kernel.hpp"

#include <spdlog/spdlog.h>

namespace cnetsched {

class ConcurrentKernel::Ctx : public Context {
public:
    Ctx(ConcurrentKernel& k, AgentId self) : k_(k), self_(std::move(self)) {}

    KernelTime now() const override { return k_.elapsed(); }
    void send(Envelope e) override {
        e.sender = self_;
        const KernelTime t = k_.elapsed();
        {
            std::lock_guard lock(k_.records_mutex_);
            k_.records_.messages.count(e);
            if (k_.options_.record_trace) {
                k_.records_.trace.push_back(
                    TraceRecord{t, e.sender, e.receiver, std::string(variant_name(e.body)), e.conversation_id});
            }
        }
        const AgentId target = e.receiver;
        k_.schedule(t + k_.options_.hop, target, Item{Kind::message, std::move(e), 0});
    }
    void set_timer(KernelTime at, int token) override {
        {
            std::lock_guard lock(k_.state_mutex_);
            if (!k_.armed_.insert({self_, token}).second) return;
            ++k_.timers_;
        }
        std::lock_guard lock(k_.delay_mutex_);
        k_.delayed_.push(Delayed{at, ++k_.seq_, self_, Item{Kind::timer, std::nullopt, token}});
        k_.delay_cv_.notify_all();
    }
    void cancel_timer(int token) override {
        std::lock_guard lock(k_.state_mutex_);
        if (k_.armed_.erase({self_, token}) > 0) {
            --k_.timers_;
            if (k_.quiescent()) k_.idle_cv_.notify_all();
        }
    }
    Directory& directory() override { return k_.directory_; }
    void order_finished(const OrderOutcome& outcome) override {
        std::lock_guard lock(k_.records_mutex_);
        k_.records_.outcomes.push_back(outcome);
    }
    void violation(const std::string& what) override {
        spdlog::debug("protocol violation: {}", what);
        std::lock_guard lock(k_.records_mutex_);
        k_.records_.violations.push_back(what);
    }

private:
    ConcurrentKernel& k_;
    AgentId self_;
};

ConcurrentKernel::ConcurrentKernel(Directory& directory, Options options)
    : directory_(directory), options_(options) {}

ConcurrentKernel::~ConcurrentKernel() = default;

KernelTime ConcurrentKernel::elapsed() const {
    return std::chrono::duration_cast<KernelTime>(std::chrono::steady_clock::now() - epoch_);
}

Agent& ConcurrentKernel::add(std::unique_ptr<Agent> agent, KernelTime start_at) {
    const AgentId id = agent->id();
    auto [it, inserted] = agents_.emplace(id, std::move(agent));
    if (!inserted) throw std::invalid_argument("duplicate agent id '" + id + "'");
    mailboxes_.emplace(id, std::make_unique<Mailbox>());
    starts_.emplace_back(id, start_at);
    return *it->second;
}

Agent* ConcurrentKernel::find(const AgentId& id) const {
    auto it = agents_.find(id);
    return it == agents_.end() ? nullptr : it->second.get();
}

void ConcurrentKernel::schedule(KernelTime due, AgentId target, Item item) {
    {
        std::lock_guard lock(state_mutex_);
        ++in_flight_;
    }
    std::lock_guard lock(delay_mutex_);
    delayed_.push(Delayed{due, ++seq_, std::move(target), std::move(item)});
    delay_cv_.notify_all();
}

void ConcurrentKernel::done_one() {
    std::lock_guard lock(state_mutex_);
    --in_flight_;
    if (quiescent()) idle_cv_.notify_all();
}

void ConcurrentKernel::deliver(const AgentId& target, Item item) {
    auto it = mailboxes_.find(target);
    if (it == mailboxes_.end()) {
        {
            std::lock_guard lock(records_mutex_);
            records_.violations.push_back("message for unknown agent '" + target + "' dropped");
        }
        done_one();
        return;
    }
    Mailbox& box = *it->second;
    {
        std::lock_guard lock(box.mutex);
        box.items.push_back(std::move(item));
    }
    box.ready.notify_one();
}

void ConcurrentKernel::delivery_loop() {
    std::unique_lock lock(delay_mutex_);
    while (!stopping_) {
        if (delayed_.empty()) {
            delay_cv_.wait(lock);
            continue;
        }
        const KernelTime due = delayed_.top().due;
        const KernelTime now = elapsed();
        if (due > now) {
            delay_cv_.wait_for(lock, due - now);
            continue;
        }
        Delayed d = delayed_.top();
        delayed_.pop();
        lock.unlock();
        if (d.item.kind == Kind::timer) {
            bool live = false;
            {
                std::lock_guard state(state_mutex_);
                if (armed_.erase({d.target, d.item.token}) > 0) {
                    live = true;
                    --timers_;
                    ++in_flight_;
                }
            }
            if (live) deliver(d.target, std::move(d.item));
        } else {
            deliver(d.target, std::move(d.item));
        }
        lock.lock();
    }
}

void ConcurrentKernel::agent_loop(const AgentId& id) {
    Agent& agent = *agents_.at(id);
    Mailbox& box = *mailboxes_.at(id);
    Ctx ctx(*this, id);
    while (true) {
        Item item;
        {
            std::unique_lock lock(box.mutex);
            box.ready.wait(lock, [&] { return stopping_ || !box.items.empty(); });
            if (box.items.empty()) return;
            item = std::move(box.items.front());
            box.items.pop_front();
        }
        switch (item.kind) {
            case Kind::start: agent.on_start(ctx); break;
            case Kind::message: agent.on_message(*item.envelope, ctx); break;
            case Kind::timer: agent.on_timer(item.token, ctx); break;
        }
        done_one();
    }
}

void ConcurrentKernel::run() {
    epoch_ = std::chrono::steady_clock::now();
    stopping_ = false;
    std::vector<std::thread> threads;
    for (const auto& [id, agent] : agents_) threads.emplace_back([this, id = id] { agent_loop(id); });
    threads.emplace_back([this] { delivery_loop(); });
    for (const auto& [id, at] : starts_) schedule(at, id, Item{Kind::start, std::nullopt, 0});

    bool timed_out = false;
    {
        std::unique_lock lock(state_mutex_);
        timed_out = !idle_cv_.wait_for(lock, options_.limit, [&] { return quiescent(); });
    }
    stopping_ = true;
    {
        std::lock_guard lock(delay_mutex_);
        delay_cv_.notify_all();
    }
    for (auto& [id, box] : mailboxes_) {
        std::lock_guard lock(box->mutex);
        box->ready.notify_all();
    }
    for (auto& t : threads) t.join();
    if (timed_out) throw RunTimeout("concurrent run still busy after " + std::to_string(options_.limit.count()) + " us");
}

}  // namespace cnetsched
