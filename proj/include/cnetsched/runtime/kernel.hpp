#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cnetsched/agents/directory.hpp"
#include "cnetsched/protocol/accounting.hpp"
#include "cnetsched/runtime/agent.hpp"

namespace cnetsched {

class RunTimeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// What a kernel observed during a run.
struct KernelRecords {
    MessageCounter messages;
    std::vector<TraceRecord> trace;
    std::vector<OrderOutcome> outcomes;
    std::vector<std::string> violations;
};

/// Single-threaded logical-time event loop. Every hop takes `hop` ticks; events at the same
/// instant run in (time, seeded sender rank, sequence) order, so a seed fixes the whole run.
class DeterministicKernel {
public:
    struct Options {
        std::uint64_t seed = 1;
        KernelTime hop = std::chrono::milliseconds(1);
        /// Logical time after which a still-running system counts as stuck.
        KernelTime limit = std::chrono::hours(24);
        bool record_trace = true;
    };

    DeterministicKernel(Directory& directory, Options options);
    ~DeterministicKernel();

    /// Takes ownership; the agent's on_start runs at `start_at`.
    Agent& add(std::unique_ptr<Agent> agent, KernelTime start_at = KernelTime{0});
    /// Runs until no event is left. Throws RunTimeout past the limit.
    void run();

    KernelTime now() const { return now_; }
    const KernelRecords& records() const { return records_; }
    Agent* find(const AgentId& id) const;

private:
    class Ctx;
    enum class Kind { start, message, timer };
    struct Event {
        KernelTime at;
        std::uint64_t rank;
        std::uint64_t seq;
        Kind kind;
        AgentId target;
        std::optional<Envelope> envelope;
        int token = 0;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const;
    };

    std::uint64_t rank_of(const AgentId& id) const;
    void push(Event e);
    void post(Envelope e);

    Directory& directory_;
    Options options_;
    KernelTime now_{0};
    std::uint64_t seq_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::map<AgentId, std::unique_ptr<Agent>> agents_;
    std::set<std::pair<AgentId, int>> cancelled_;
    KernelRecords records_;
};

/// One thread per agent with its own mailbox; a delivery thread applies the per-hop latency and
/// fires timers on the wall clock. The run ends once nothing is queued, delayed or executing.
class ConcurrentKernel {
public:
    struct Options {
        KernelTime hop = std::chrono::milliseconds(1);
        KernelTime limit = std::chrono::seconds(120);
        bool record_trace = true;
    };

    ConcurrentKernel(Directory& directory, Options options);
    ~ConcurrentKernel();

    Agent& add(std::unique_ptr<Agent> agent, KernelTime start_at = KernelTime{0});
    void run();

    const KernelRecords& records() const { return records_; }
    Agent* find(const AgentId& id) const;

private:
    class Ctx;
    enum class Kind { start, message, timer };
    struct Item {
        Kind kind;
        std::optional<Envelope> envelope;
        int token = 0;
    };
    struct Mailbox {
        std::mutex mutex;
        std::condition_variable ready;
        std::deque<Item> items;
    };
    struct Delayed {
        KernelTime due;
        std::uint64_t seq;
        AgentId target;
        Item item;
        bool operator>(const Delayed& o) const { return std::tie(due, seq) > std::tie(o.due, o.seq); }
    };

    KernelTime elapsed() const;
    void schedule(KernelTime due, AgentId target, Item item);
    void deliver(const AgentId& target, Item item);
    void agent_loop(const AgentId& id);
    void delivery_loop();
    void done_one();
    void timer_gone();
    bool quiescent() const { return in_flight_ == 0 && timers_ == 0; }

    Directory& directory_;
    Options options_;
    std::chrono::steady_clock::time_point epoch_;
    std::map<AgentId, std::unique_ptr<Agent>> agents_;
    std::map<AgentId, std::unique_ptr<Mailbox>> mailboxes_;
    std::vector<std::pair<AgentId, KernelTime>> starts_;

    std::mutex delay_mutex_;
    std::condition_variable delay_cv_;
    std::priority_queue<Delayed, std::vector<Delayed>, std::greater<>> delayed_;
    std::uint64_t seq_ = 0;
    /// Armed timers that were neither fired nor cancelled.
    std::set<std::pair<AgentId, int>> armed_;

    std::mutex state_mutex_;
    std::condition_variable idle_cv_;
    /// Starts and messages that are delayed, queued in a mailbox or being handled.
    std::int64_t in_flight_ = 0;
    std::int64_t timers_ = 0;
    std::atomic<bool> stopping_{false};

    std::mutex records_mutex_;
    KernelRecords records_;
};

}  // namespace cnetsched
