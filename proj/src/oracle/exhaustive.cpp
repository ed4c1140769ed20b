#include "cnetsched/oracle/exhaustive.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace cnetsched::oracle {

namespace {

using Sec = std::int64_t;
constexpr Sec kNever = std::numeric_limits<Sec>::max() / 4;

struct Site {
    std::string id;
    std::int64_t x = 0;
};

struct Machine {
    std::string id;
    std::string capability;
    Site site;
    std::map<std::string, Sec> op;
    SetupMatrix setup;
    std::string initial_state;
};

struct MEntry {
    Sec core_start = 0;
    Sec op_end = 0;
    Sec end = 0;
    bool open = false;
    std::string state;
    int order = -1;
    Sec unload = 0;
    Sec load = 0;
    int stage = 0;
};

struct Leg {
    Sec load = 0;
    Sec unload_end = 0;
    std::int64_t from_x = 0;
    std::int64_t to_x = 0;
    int order = -1;
    std::string label;
};

struct Span {
    Sec start = 0;
    Sec end = 0;
    int order = -1;
    int stage = 0;
};

struct OrderState {
    std::string id;
    std::vector<std::string> steps;
    std::string product;
    Sec release = 0;
    std::size_t next = 0;
    int machine = -1;
    Sec op_end = 0;
    Sec finish = 0;
};

struct State {
    std::vector<std::vector<MEntry>> machines;
    std::vector<Leg> crane;
    std::vector<Span> buffer;
    std::vector<OrderState> orders;
};

struct Crane {
    Sec speed_m = 1, speed_s = 1;
    Sec load = 0, unload = 0;
    std::int64_t x_min = 0, x_max = 0, x0 = 0;

    Sec travel(std::int64_t a, std::int64_t b) const {
        const Sec d = std::llabs(a - b) * speed_s;
        return (d + speed_m - 1) / speed_m;
    }
    bool covers(std::int64_t x) const { return x_min <= x && x <= x_max; }
    Sec core(std::int64_t a, std::int64_t b) const { return load + travel(a, b) + unload; }
};

Sec secs(Duration d) { return d.count(); }
Sec secs(TimePoint t) { return to_seconds(t); }

class Search {
public:
    Search(const Scenario& s, std::uint64_t limit) : limit_(limit) {
        if (s.orders.size() > 2 || s.production.size() > 3 || s.buffers.size() > 1 || s.transports.size() > 1) {
            throw OutOfBounds("exhaustive_schedule handles at most 2 orders, 3 production resources, 1 buffer and 1 transport");
        }
        Sec total = 0;
        for (const auto& p : s.production) {
            Machine m{p.id, p.capability, {p.id, p.location.x}, {}, p.setup, p.initial_state};
            for (const auto& [prod, d] : p.op_duration) m.op[prod] = secs(d);
            machines_.push_back(m);
            std::vector<MEntry> fixed;
            for (const auto& b : p.initial_bookings) {
                fixed.push_back({secs(b.start), secs(b.end), secs(b.end), false, b.state, -1});
                horizon_start_ = std::max(horizon_start_, secs(b.end));
            }
            std::sort(fixed.begin(), fixed.end(), [](const MEntry& a, const MEntry& b) { return a.core_start < b.core_start; });
            state_.machines.push_back(std::move(fixed));
        }
        if (!s.buffers.empty()) {
            has_buffer_ = true;
            buffer_id_ = s.buffers.front().id;
            buffer_x_ = s.buffers.front().location.x;
            for (const auto& b : s.buffers.front().initial_bookings) {
                state_.buffer.push_back({secs(b.start), secs(b.end)});
                horizon_start_ = std::max(horizon_start_, secs(b.end));
            }
        }
        if (!s.transports.empty()) {
            const auto& t = s.transports.front();
            has_crane_ = true;
            crane_id_ = t.id;
            crane_ = Crane{t.geometry.speed.meters, t.geometry.speed.seconds, secs(t.geometry.load_time),
                           secs(t.geometry.unload_time), t.geometry.x_min, t.geometry.x_max, t.initial_x};
            const auto sites = s.sites();
            for (const auto& b : t.initial_bookings) {
                if (b.maintenance) {
                    const auto x = sites.at(b.from).x;
                    state_.crane.push_back({secs(b.load_start), secs(b.end), x, x});
                } else {
                    state_.crane.push_back({secs(b.load_start), secs(b.end), sites.at(b.from).x, sites.at(b.to).x});
                }
                horizon_start_ = std::max(horizon_start_, secs(b.end));
            }
            std::sort(state_.crane.begin(), state_.crane.end(), [](const Leg& a, const Leg& b) { return a.load < b.load; });
        }
        for (const auto& o : s.orders) {
            const Product* p = s.product(o.product);
            if (!p) throw OutOfBounds("unknown product " + o.product);
            state_.orders.push_back({o.id, p->steps, p->id, secs(o.release)});
            horizon_start_ = std::max(horizon_start_, secs(o.release));
            for (const auto& step : p->steps) {
                Sec longest = 0;
                for (const auto& m : machines_) {
                    if (m.capability != step) continue;
                    const auto it = m.op.find(p->id);
                    if (it != m.op.end()) longest = std::max(longest, it->second);
                }
                Sec setups = 0;
                for (const auto& m : machines_) {
                    for (const auto& [pair, d] : m.setup) setups = std::max(setups, secs(d));
                }
                total += longest + setups;
                if (has_crane_) total += crane_.core(crane_.x_min, crane_.x_max) * 2;
            }
        }
        horizon_ = horizon_start_ + 2 * total;
    }

    ExhaustiveResult run() {
        dfs(state_);
        ExhaustiveResult r;
        r.nodes = nodes_;
        r.complete = nodes_ < limit_;
        if (best_ < kNever) {
            r.feasible = true;
            r.makespan = TimePoint{} + Duration(best_);
            for (const auto& [id, f] : best_finish_) r.finish[id] = TimePoint{} + Duration(f);
            r.schedule = views(*best_state_);
        }
        return r;
    }

    std::vector<ResourceView> views(const State& st) const {
        auto iv = [](Sec a, Sec b) { return TimeInterval{TimePoint{} + Duration(a), TimePoint{} + Duration(b)}; };
        auto owner = [&](int order, const std::string& resource, std::size_t k) {
            return order >= 0 ? st.orders[static_cast<std::size_t>(order)].id
                              : "fixed:" + resource + ":" + std::to_string(k);
        };
        std::vector<ResourceView> out;
        for (std::size_t mi = 0; mi < machines_.size(); ++mi) {
            const Machine& m = machines_[mi];
            ResourceView v{m.id, ResourceKind::production, {}};
            std::string pred = m.initial_state;
            const auto& list = st.machines[mi];
            for (std::size_t k = 0; k < list.size(); ++k) {
                const MEntry& e = list[k];
                BookingEntry b{owner(e.order, m.id, k), e.order >= 0 ? std::to_string(e.stage) : "fixed", {}, e.open,
                               e.state, e.state};
                const Sec setup_len = setup(m, pred, e.state);
                if (setup_len > 0) b.segments.push_back({SegmentKind::setup, iv(e.core_start - setup_len, e.core_start)});
                if (e.unload > 0) b.segments.push_back({SegmentKind::unload, iv(e.core_start, e.core_start + e.unload)});
                b.segments.push_back({e.order >= 0 ? SegmentKind::operation : SegmentKind::maintenance,
                                      iv(e.core_start + e.unload, e.op_end)});
                if (e.end > e.op_end) {
                    const Sec hold_end = e.end - e.load;
                    if (hold_end > e.op_end) b.segments.push_back({SegmentKind::blocked_hold, iv(e.op_end, hold_end)});
                    if (e.load > 0) b.segments.push_back({SegmentKind::load, iv(hold_end, e.end)});
                }
                v.entries.push_back(std::move(b));
                pred = e.state;
            }
            out.push_back(std::move(v));
        }
        if (has_buffer_) {
            ResourceView v{buffer_id_, ResourceKind::buffer, {}};
            auto spans = st.buffer;
            std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.start < b.start; });
            for (std::size_t k = 0; k < spans.size(); ++k) {
                const Span& sp = spans[k];
                BookingEntry b{owner(sp.order, buffer_id_, k), "B:" + std::to_string(sp.stage), {}, false, "", ""};
                if (sp.order < 0) {
                    b.segments.push_back({SegmentKind::maintenance, iv(sp.start, sp.end)});
                } else {
                    b.segments.push_back({SegmentKind::unload, iv(sp.start, sp.start + crane_.unload)});
                    if (sp.end - crane_.load > sp.start + crane_.unload) {
                        b.segments.push_back(
                            {SegmentKind::buffer_hold, iv(sp.start + crane_.unload, sp.end - crane_.load)});
                    }
                    b.segments.push_back({SegmentKind::load, iv(sp.end - crane_.load, sp.end)});
                }
                v.entries.push_back(std::move(b));
            }
            out.push_back(std::move(v));
        }
        if (has_crane_) {
            ResourceView v{crane_id_, ResourceKind::transport, {}};
            std::int64_t at = crane_.x0;
            for (std::size_t k = 0; k < st.crane.size(); ++k) {
                const Leg& l = st.crane[k];
                BookingEntry b{owner(l.order, crane_id_, k), l.order >= 0 ? l.label : "fixed", {}, false, "", ""};
                const Sec setup_len = crane_.travel(at, l.from_x);
                if (setup_len > 0) b.segments.push_back({SegmentKind::setup, iv(l.load - setup_len, l.load)});
                if (l.order < 0) {
                    b.segments.push_back({SegmentKind::maintenance, iv(l.load, l.unload_end)});
                } else {
                    const Sec loaded = l.load + crane_.load;
                    const Sec arrived = l.unload_end - crane_.unload;
                    b.segments.push_back({SegmentKind::load, iv(l.load, loaded)});
                    if (arrived > loaded) b.segments.push_back({SegmentKind::travel, iv(loaded, arrived)});
                    b.segments.push_back({SegmentKind::unload, iv(arrived, l.unload_end)});
                }
                v.entries.push_back(std::move(b));
                at = l.to_x;
            }
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    Sec setup(const Machine& m, const std::string& from, const std::string& to) const {
        if (from == to) return 0;
        const auto it = m.setup.find({from, to});
        return it == m.setup.end() ? 0 : secs(it->second);
    }

    // Smallest core start >= c at which `x` fits on machine mi, or kNever.
    Sec machine_fit(const State& st, int mi, Sec c, Sec op, Sec lead, bool open, const std::string& state) const {
        const Machine& m = machines_[static_cast<std::size_t>(mi)];
        const auto& list = st.machines[static_cast<std::size_t>(mi)];
        for (int guard = 0; guard < 1000 && c < kNever; ++guard) {
            const MEntry* pred = nullptr;
            const MEntry* succ = nullptr;
            for (const auto& e : list) {
                if (e.core_start <= c) pred = &e;
                else if (!succ) succ = &e;
            }
            const std::string pred_state = pred ? pred->state : m.initial_state;
            const Sec pred_end = pred ? pred->end : 0;
            if (pred && pred->open) return kNever;
            const Sec ready = pred_end + setup(m, pred_state, state);
            if (c < ready) {
                c = ready;
                continue;
            }
            if (succ) {
                const Sec finish = c + lead + op;
                if (finish + setup(m, state, succ->state) > succ->core_start) {
                    if (succ->open) return kNever;
                    c = succ->end + setup(m, succ->state, state);
                    continue;
                }
            }
            (void)open;
            return c;
        }
        return kNever;
    }

    // Smallest load start >= l at which a leg fits on the crane, or kNever.
    Sec crane_fit(const State& st, Sec l, std::int64_t from, std::int64_t to) const {
        const Sec core = crane_.core(from, to);
        for (int guard = 0; guard < 1000 && l < kNever; ++guard) {
            const Leg* pred = nullptr;
            const Leg* succ = nullptr;
            for (const auto& e : st.crane) {
                if (e.load <= l) pred = &e;
                else if (!succ) succ = &e;
            }
            const Sec ready = pred ? pred->unload_end + crane_.travel(pred->to_x, from) : crane_.travel(crane_.x0, from);
            if (l < ready) {
                l = ready;
                continue;
            }
            if (succ && l + core + crane_.travel(to, succ->from_x) > succ->load) {
                l = succ->unload_end + crane_.travel(succ->to_x, from);
                continue;
            }
            return l;
        }
        return kNever;
    }

    // Smallest start >= a of a buffer stay of length >= len that does not overlap; kNever if none.
    Sec buffer_fit(const State& st, Sec a, Sec len) const {
        for (int guard = 0; guard < 1000; ++guard) {
            bool moved = false;
            for (const auto& s : st.buffer) {
                if (a < s.end && s.start < a + len) {
                    a = s.end;
                    moved = true;
                }
            }
            if (!moved) return a;
        }
        return kNever;
    }

    // Latest allowed end of the open entry of order o on its machine (limit from its successor).
    Sec release_limit(const State& st, const OrderState& o) const {
        const Machine& m = machines_[static_cast<std::size_t>(o.machine)];
        const auto& list = st.machines[static_cast<std::size_t>(o.machine)];
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i].order == static_cast<int>(&o - st.orders.data()) && list[i].open) {
                if (i + 1 == list.size()) return kNever;
                return list[i + 1].core_start - setup(m, list[i].state, list[i + 1].state);
            }
        }
        return kNever;
    }

    static void close_open(State& st, int mi, int order, Sec end, Sec load = 0) {
        for (auto& e : st.machines[static_cast<std::size_t>(mi)]) {
            if (e.order == order && e.open) {
                e.open = false;
                e.end = end;
                e.load = load;
            }
        }
    }

    static void insert_machine(State& st, int mi, MEntry e) {
        auto& list = st.machines[static_cast<std::size_t>(mi)];
        list.insert(std::upper_bound(list.begin(), list.end(), e,
                                     [](const MEntry& a, const MEntry& b) { return a.core_start < b.core_start; }),
                    std::move(e));
    }

    static void insert_leg(State& st, Leg l) {
        st.crane.insert(std::upper_bound(st.crane.begin(), st.crane.end(), l,
                                         [](const Leg& a, const Leg& b) { return a.load < b.load; }),
                        l);
    }

    Sec lower_bound(const State& st) const {
        Sec lb = 0;
        for (const auto& o : st.orders) {
            Sec t = o.next == 0 ? o.release : o.op_end;
            if (o.next == o.steps.size()) t = o.finish;
            for (std::size_t k = o.next; k < o.steps.size(); ++k) {
                Sec shortest = kNever;
                for (const auto& m : machines_) {
                    if (m.capability != o.steps[k]) continue;
                    const auto it = m.op.find(o.product);
                    if (it != m.op.end()) shortest = std::min(shortest, it->second);
                }
                if (shortest == kNever) return kNever;
                t += shortest;
            }
            lb = std::max(lb, t);
        }
        return lb;
    }

    void finish_or_recurse(State& st) {
        bool done = true;
        Sec makespan = 0;
        for (const auto& o : st.orders) {
            done = done && o.next == o.steps.size();
            makespan = std::max(makespan, o.finish);
        }
        if (done) {
            if (makespan < best_) {
                best_ = makespan;
                best_state_ = st;
                best_finish_.clear();
                for (const auto& o : st.orders) best_finish_[o.id] = o.finish;
            }
            return;
        }
        dfs(st);
    }

    // Places the production part of a stage with core start c (unload already included).
    void place_production(State st, int oi, int mi, Sec core_start, Sec lead) {
        auto& o = st.orders[static_cast<std::size_t>(oi)];
        const Sec op = machines_[static_cast<std::size_t>(mi)].op.at(o.product);
        const bool last = o.next + 1 == o.steps.size();
        const Sec op_end = core_start + lead + op;
        insert_machine(st, mi, {core_start, op_end, op_end, !last, o.product, oi, lead, 0,
                                static_cast<int>(o.next) + 1});
        o.machine = mi;
        o.op_end = op_end;
        if (last) o.finish = op_end;
        ++o.next;
        finish_or_recurse(st);
    }

    std::set<Sec> machine_seeds(const State& st, int mi, Sec lb) const {
        std::set<Sec> seeds{lb};
        for (const auto& e : st.machines[static_cast<std::size_t>(mi)]) {
            if (!e.open && e.end > lb) seeds.insert(e.end);
        }
        return seeds;
    }

    std::set<Sec> crane_seeds(const State& st, Sec lb) const {
        std::set<Sec> seeds{lb};
        for (const auto& l : st.crane) {
            if (l.unload_end > lb) seeds.insert(l.unload_end);
        }
        return seeds;
    }

    void first_stage(const State& st, int oi, int mi) {
        const auto& o = st.orders[static_cast<std::size_t>(oi)];
        const Sec op = machines_[static_cast<std::size_t>(mi)].op.at(o.product);
        const bool last = o.steps.size() == 1;
        std::set<Sec> tried;
        for (Sec seed : machine_seeds(st, mi, o.release)) {
            const Sec c = machine_fit(st, mi, seed, op, 0, !last, o.product);
            if (c >= kNever || c > horizon_ || !tried.insert(c).second) continue;
            place_production(st, oi, mi, c, 0);
        }
    }

    void stay_stage(const State& st, int oi) {
        const auto& o = st.orders[static_cast<std::size_t>(oi)];
        State next = st;
        close_open(next, o.machine, oi, o.op_end);
        const Sec op = machines_[static_cast<std::size_t>(o.machine)].op.at(o.product);
        const Sec c = machine_fit(next, o.machine, o.op_end, op, 0, true, o.product);
        if (c != o.op_end) return;
        place_production(next, oi, o.machine, c, 0);
    }

    // Transport from the order's machine to `to_x`, loading at l; returns the state with the leg
    // placed and the previous machine released, or nothing when the release comes too late.
    std::optional<State> depart(const State& st, int oi, Sec l, std::int64_t to_x) const {
        const auto& o = st.orders[static_cast<std::size_t>(oi)];
        const std::int64_t from_x = machines_[static_cast<std::size_t>(o.machine)].site.x;
        if (l + crane_.load > release_limit(st, o)) return std::nullopt;
        State next = st;
        close_open(next, o.machine, oi, l + crane_.load, crane_.load);
        const std::string stage = std::to_string(o.next);
        const std::string label =
            "T:" + stage + "," + (to_x == buffer_x_ && has_buffer_ && buffer_leg_ ? "B" : std::to_string(o.next + 1));
        insert_leg(next, {l, l + crane_.core(from_x, to_x), from_x, to_x, oi, label});
        return next;
    }

    void direct_stage(const State& st, int oi, int mi) {
        const auto& o = st.orders[static_cast<std::size_t>(oi)];
        const std::int64_t from_x = machines_[static_cast<std::size_t>(o.machine)].site.x;
        const std::int64_t to_x = machines_[static_cast<std::size_t>(mi)].site.x;
        if (!crane_.covers(from_x) || !crane_.covers(to_x)) return;
        const Sec core = crane_.core(from_x, to_x);
        const Sec op = machines_[static_cast<std::size_t>(mi)].op.at(o.product);
        const bool last = o.next + 1 == o.steps.size();

        std::set<Sec> seeds = crane_seeds(st, o.op_end);
        for (Sec s : machine_seeds(st, mi, o.op_end)) seeds.insert(s - core + crane_.unload);
        std::set<Sec> tried;
        for (Sec seed : seeds) {
            Sec l = std::max(seed, o.op_end);
            for (int guard = 0; guard < 100 && l < kNever; ++guard) {
                const Sec l2 = crane_fit(st, l, from_x, to_x);
                if (l2 >= kNever) {
                    l = kNever;
                    break;
                }
                // The unload on the machine overlaps the crane's unload.
                const Sec c = l2 + core - crane_.unload;
                // Before the departure the order's own entry is still open on a shared machine.
                State probe = st;
                if (mi == o.machine) close_open(probe, mi, oi, l2 + crane_.load);
                const Sec c2 = machine_fit(probe, mi, c, op, crane_.unload, !last, o.product);
                if (c2 == c) {
                    l = l2;
                    break;
                }
                l = c2 >= kNever ? kNever : c2 - core + crane_.unload;
            }
            if (l >= kNever || l > horizon_ || !tried.insert(l).second) continue;
            buffer_leg_ = false;
            auto next = depart(st, oi, l, to_x);
            if (!next) continue;
            place_production(*next, oi, mi, l + core - crane_.unload, crane_.unload);
        }
    }

    void buffered_stage(const State& st, int oi, int mi) {
        const auto& o = st.orders[static_cast<std::size_t>(oi)];
        const std::int64_t from_x = machines_[static_cast<std::size_t>(o.machine)].site.x;
        const std::int64_t to_x = machines_[static_cast<std::size_t>(mi)].site.x;
        if (!crane_.covers(from_x) || !crane_.covers(to_x) || !crane_.covers(buffer_x_)) return;
        const Sec core_in = crane_.core(from_x, buffer_x_);
        const Sec core_out = crane_.core(buffer_x_, to_x);
        const Sec op = machines_[static_cast<std::size_t>(mi)].op.at(o.product);
        const bool last = o.next + 1 == o.steps.size();

        std::set<Sec> seeds_in = crane_seeds(st, o.op_end);
        for (const auto& b : st.buffer) {
            if (b.end > o.op_end) seeds_in.insert(b.end - core_in + crane_.unload);
        }
        std::set<Sec> tried_in;
        for (Sec seed : seeds_in) {
            Sec l = std::max(seed, o.op_end);
            for (int guard = 0; guard < 100 && l < kNever; ++guard) {
                const Sec l2 = crane_fit(st, l, from_x, buffer_x_);
                if (l2 >= kNever) {
                    l = kNever;
                    break;
                }
                const Sec a = l2 + core_in - crane_.unload;
                const Sec a2 = buffer_fit(st, a, crane_.unload);
                if (a2 == a) {
                    l = l2;
                    break;
                }
                l = a2 >= kNever ? kNever : a2 - core_in + crane_.unload;
            }
            if (l >= kNever || l > horizon_ || !tried_in.insert(l).second) continue;
            buffer_leg_ = true;
            auto mid = depart(st, oi, l, buffer_x_);
            if (!mid) continue;
            const Sec arrive = l + core_in;
            const Sec buffer_start = arrive - crane_.unload;

            std::set<Sec> seeds_out = crane_seeds(*mid, arrive);
            for (Sec s : machine_seeds(*mid, mi, arrive)) seeds_out.insert(s - core_out + crane_.unload);
            std::set<Sec> tried_out;
            for (Sec seed2 : seeds_out) {
                Sec m = std::max(seed2, arrive);
                for (int guard = 0; guard < 100 && m < kNever; ++guard) {
                    const Sec m2 = crane_fit(*mid, m, buffer_x_, to_x);
                    if (m2 >= kNever) {
                        m = kNever;
                        break;
                    }
                    const Sec c = m2 + core_out - crane_.unload;
                    const Sec c2 = machine_fit(*mid, mi, c, op, crane_.unload, !last, o.product);
                    if (c2 == c) {
                        m = m2;
                        break;
                    }
                    m = c2 >= kNever ? kNever : c2 - core_out + crane_.unload;
                }
                if (m >= kNever || m > horizon_ || !tried_out.insert(m).second) continue;
                const Span stay{buffer_start, m + crane_.load};
                if (buffer_fit(*mid, buffer_start, stay.end - stay.start) != buffer_start) continue;
                State next = *mid;
                next.buffer.push_back({stay.start, stay.end, oi, static_cast<int>(o.next) + 1});
                insert_leg(next, {m, m + core_out, buffer_x_, to_x, oi, "T:B," + std::to_string(o.next + 1)});
                place_production(next, oi, mi, m + core_out - crane_.unload, crane_.unload);
            }
        }
    }

    void dfs(const State& st) {
        if (++nodes_ >= limit_) return;
        if (lower_bound(st) >= best_) return;
        for (std::size_t oi = 0; oi < st.orders.size(); ++oi) {
            const auto& o = st.orders[oi];
            if (o.next == o.steps.size()) continue;
            const std::string& step = o.steps[o.next];
            for (std::size_t mi = 0; mi < machines_.size(); ++mi) {
                const auto& m = machines_[mi];
                if (m.capability != step || !m.op.contains(o.product)) continue;
                const int i = static_cast<int>(oi), j = static_cast<int>(mi);
                if (o.next == 0) {
                    first_stage(st, i, j);
                    continue;
                }
                if (o.machine == j) stay_stage(st, i);
                if (!has_crane_) continue;
                direct_stage(st, i, j);
                if (has_buffer_) buffered_stage(st, i, j);
            }
        }
    }

    std::vector<Machine> machines_;
    std::vector<std::string> sites_;
    std::string buffer_id_;
    std::string crane_id_;
    bool buffer_leg_ = false;
    std::optional<State> best_state_;
    State state_;
    Crane crane_;
    bool has_crane_ = false;
    bool has_buffer_ = false;
    std::int64_t buffer_x_ = 0;
    Sec horizon_start_ = 0;
    Sec horizon_ = 0;
    std::uint64_t limit_;
    std::uint64_t nodes_ = 0;
    Sec best_ = kNever;
    std::map<std::string, Sec> best_finish_;
};

}  // namespace

ExhaustiveResult exhaustive_schedule(const Scenario& scenario, std::uint64_t node_limit) {
    return Search(scenario, node_limit).run();
}

}  // namespace cnetsched::oracle
