#include "cnetsched/runtime/run.hpp"

#include <algorithm>
#include <random>

#include "cnetsched/agents/directory.hpp"
#include "cnetsched/runtime/kernel.hpp"

namespace cnetsched {

namespace {

struct Built {
    std::vector<std::unique_ptr<Agent>> resources;
    std::vector<ResourceAgent*> handles;
};

Built build_resources(const Scenario& s, Directory& dir, KernelTime hold_extension) {
    Built b;
    const auto sites = s.sites();
    for (const auto& r : s.production) {
        ProductionConfig cfg{r.id, r.capability, r.location, r.op_duration, r.setup, r.initial_state,
                             s.params.production_offers, hold_extension};
        auto agent = std::make_unique<ProductionAgent>(cfg);
        auto books = r.initial_bookings;
        std::sort(books.begin(), books.end(), [](const auto& x, const auto& y) { return x.start < y.start; });
        for (const auto& bk : books) {
            const std::string state = bk.state.empty() ? agent->schedule().state_before(bk.start) : bk.state;
            const Duration setup = agent->schedule().setup_before(bk.start, state);
            BookingEntry e{bk.order_id, bk.label, {}, false, state, state};
            if (setup > Duration::zero()) e.segments.push_back({SegmentKind::setup, {bk.start - setup, bk.start}});
            e.segments.push_back({bk.kind, {bk.start, bk.end}});
            agent->preload(e);
        }
        dir.register_agent(r.capability, r.id);
        b.handles.push_back(agent.get());
        b.resources.push_back(std::move(agent));
    }
    for (const auto& r : s.buffers) {
        auto agent = std::make_unique<BufferAgent>(BufferConfig{r.id, r.location, hold_extension});
        for (const auto& bk : r.initial_bookings) {
            agent->preload(BookingEntry{bk.order_id, bk.label, {{SegmentKind::buffer_hold, {bk.start, bk.end}}},
                                        false, "", ""});
        }
        dir.register_agent(Directory::kBuffer, r.id);
        b.handles.push_back(agent.get());
        b.resources.push_back(std::move(agent));
    }
    for (const auto& r : s.transports) {
        auto agent = std::make_unique<TransportAgent>(TransportConfig{r.id, r.geometry, r.initial_x, sites, hold_extension});
        auto books = r.initial_bookings;
        std::sort(books.begin(), books.end(),
                  [](const auto& x, const auto& y) { return x.load_start < y.load_start; });
        for (const auto& bk : books) {
            const Duration setup = agent->schedule().setup_before(bk.load_start, bk.from);
            if (bk.maintenance) {
                BookingEntry e{bk.order_id, bk.label, {}, false, bk.from, bk.from};
                if (setup > Duration::zero()) {
                    e.segments.push_back({SegmentKind::setup, {bk.load_start - setup, bk.load_start}});
                }
                e.segments.push_back({SegmentKind::maintenance, {bk.load_start, bk.end}});
                agent->preload(e);
            } else {
                agent->preload(agent->leg_entry(bk.order_id, bk.label, bk.from, bk.to, bk.load_start, setup));
            }
        }
        dir.register_agent(Directory::kTransport, r.id);
        b.handles.push_back(agent.get());
        b.resources.push_back(std::move(agent));
    }
    return b;
}

template <class Kernel>
RunReport execute(Kernel& kernel, const Scenario& s, const std::vector<ScenarioOrder>& orders, Built built,
                  const OrderAgentConfig& oa_cfg, RunReport report) {
    for (auto& r : built.resources) kernel.add(std::move(r));
    std::vector<OrderAgent*> oas;
    for (const auto& o : orders) {
        const Product* p = s.product(o.product);
        OrderPlan plan{o.id, o.product, p ? p->steps : std::vector<std::string>{}, o.release};
        auto agent = std::make_unique<OrderAgent>("OA:" + o.id, plan, oa_cfg);
        oas.push_back(agent.get());
        kernel.add(std::move(agent), std::chrono::milliseconds(o.arrival_ms));
    }
    const auto t0 = std::chrono::steady_clock::now();
    kernel.run();
    report.elapsed = std::chrono::duration_cast<KernelTime>(std::chrono::steady_clock::now() - t0);

    const auto& rec = kernel.records();
    for (auto* oa : oas) {
        report.orders.push_back(oa->outcome());
        report.phases[oa->outcome().order_id] = oa->phase_log();
    }
    report.messages = rec.messages;
    report.trace = rec.trace;
    report.violations = rec.violations;
    for (auto* h : built.handles) report.resources.push_back(h->snapshot());
    return report;
}

}  // namespace

std::string_view to_string(RunMode mode) {
    return mode == RunMode::deterministic ? "deterministic" : "concurrent";
}

std::vector<ScenarioOrder> generate_orders(const OrderGenerator& g) {
    std::vector<ScenarioOrder> out;
    if (g.count <= 0 || g.mix.empty()) return out;
    std::vector<std::string> products;
    std::vector<int> weights;
    for (const auto& [p, w] : g.mix) {
        products.push_back(p);
        weights.push_back(w);
    }
    std::mt19937_64 rng(g.seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    for (int i = 0; i < g.count; ++i) {
        out.push_back(ScenarioOrder{"o" + std::to_string(i + 1), products[pick(rng)], g.release,
                                    g.hosting_interval_ms * i});
    }
    return out;
}

std::size_t RunReport::done() const {
    return static_cast<std::size_t>(std::count_if(orders.begin(), orders.end(),
                                                  [](const auto& o) { return o.status == OrderStatus::done; }));
}

std::size_t RunReport::failed() const {
    return static_cast<std::size_t>(std::count_if(orders.begin(), orders.end(),
                                                  [](const auto& o) { return o.status == OrderStatus::failed; }));
}

const OrderOutcome* RunReport::order(const std::string& id) const {
    for (const auto& o : orders) {
        if (o.order_id == id) return &o;
    }
    return nullptr;
}

const ResourceSnapshot* RunReport::resource(const std::string& id) const {
    for (const auto& r : resources) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

OrderAgentConfig order_config(const Scenario& s) {
    OrderAgentConfig cfg;
    cfg.params = s.schedule_params();
    for (const auto& t : s.transports) {
        cfg.unload_estimate = std::max(cfg.unload_estimate, t.geometry.unload_time);
        cfg.load_estimate = std::max(cfg.load_estimate, t.geometry.load_time);
    }
    std::size_t stages = 1;
    for (const auto& p : s.products) stages = std::max(stages, p.steps.size());
    cfg.stage_timeout = std::chrono::milliseconds(s.params.estimated_stage_time_ms * static_cast<std::int64_t>(stages));
    cfg.criterion = s.params.criterion;
    cfg.stage_attempts = s.params.stage_attempts;
    return cfg;
}

RunReport run(const Scenario& scenario, const RunOptions& options,
              const std::optional<std::vector<ScenarioOrder>>& orders) {
    const auto& list = orders ? *orders : scenario.orders;
    const OrderAgentConfig oa_cfg = order_config(scenario);
    Directory dir;
    Built built = build_resources(scenario, dir, oa_cfg.stage_timeout);

    RunReport report;
    report.scenario = scenario.name;
    report.mode = options.mode;
    report.seed = options.seed;
    report.params = oa_cfg.params;

    if (options.mode == RunMode::deterministic) {
        DeterministicKernel::Options ko;
        ko.seed = options.seed;
        ko.hop = options.hop;
        if (options.limit) ko.limit = *options.limit;
        ko.record_trace = options.record_trace;
        DeterministicKernel kernel(dir, ko);
        return execute(kernel, scenario, list, std::move(built), oa_cfg, std::move(report));
    }
    ConcurrentKernel::Options ko;
    ko.hop = options.hop;
    if (options.limit) ko.limit = *options.limit;
    ko.record_trace = options.record_trace;
    ConcurrentKernel kernel(dir, ko);
    return execute(kernel, scenario, list, std::move(built), oa_cfg, std::move(report));
}

}  // namespace cnetsched
