#include "cnetsched/harness/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace cnetsched {

double PolyFit::operator()(double x) const {
    double y = 0.0, p = 1.0;
    for (double c : coefficients) {
        y += c * p;
        p *= x;
    }
    return y;
}

PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, degree + 1);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (int d = 0; d <= degree; ++d) {
            a(i, d) = p;
            p *= x[static_cast<std::size_t>(i)];
        }
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    PolyFit fit;
    fit.coefficients.assign(c.data(), c.data() + c.size());
    const double mean = b.mean();
    double ss_res = 0.0, ss_tot = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = b(i) - fit(x[static_cast<std::size_t>(i)]);
        ss_res += r * r;
        ss_tot += (b(i) - mean) * (b(i) - mean);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

double relative_spread(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    return mean == 0.0 ? 0.0 : (*hi - *lo) / mean;
}

Scenario replicate_resources(const Scenario& base, int k) {
    Scenario s = base;
    s.name = base.name + "_x" + std::to_string(k);
    s.production.clear();
    s.buffers.clear();
    s.transports.clear();
    auto copy_id = [](const std::string& id, int i) { return i == 0 ? id : id + "-" + std::to_string(i + 1); };
    for (int i = 0; i < k; ++i) {
        for (auto r : base.production) {
            r.id = copy_id(r.id, i);
            s.production.push_back(std::move(r));
        }
        for (auto b : base.buffers) {
            b.id = copy_id(b.id, i);
            s.buffers.push_back(std::move(b));
        }
        for (auto t : base.transports) {
            t.id = copy_id(t.id, i);
            for (auto& bk : t.initial_bookings) {
                // Replicas of a site are co-located, so the original ids stay valid targets.
                (void)bk;
            }
            s.transports.push_back(std::move(t));
        }
    }
    return s;
}

std::vector<HostingPoint> hosting_sweep(const Scenario& flow, const std::vector<std::int64_t>& intervals_ms,
                                        int orders, int hop_ms, const std::string& product) {
    std::vector<HostingPoint> out;
    for (const auto interval : intervals_ms) {
        OrderGenerator g{{{product, 1}}, orders, interval, TimePoint{}, 1};
        RunOptions opt;
        opt.mode = RunMode::concurrent;
        opt.hop = std::chrono::milliseconds(hop_ms);
        opt.record_trace = false;
        const RunReport r = run(flow, opt, generate_orders(g));
        HostingPoint p;
        p.interval_ms = interval;
        p.timing = timing(r);
        p.done = r.done();
        p.failed = r.failed();
        p.end_ratio = p.timing.mean_dt_end() / static_cast<double>(interval);
        const auto& d = p.timing.duration_ms;
        const std::size_t from = d.size() > 5 ? d.size() - 5 : 0;
        p.tail_spread = relative_spread(std::vector<double>(d.begin() + static_cast<std::ptrdiff_t>(from), d.end()));
        out.push_back(std::move(p));
    }
    return out;
}

ScalingResult scaling_sweep(const Scenario& base, const std::vector<int>& ks, int orders) {
    Scenario plain = base;
    for (auto& r : plain.production) r.initial_bookings.clear();
    for (auto& b : plain.buffers) b.initial_bookings.clear();
    for (auto& t : plain.transports) t.initial_bookings.clear();

    ScalingResult res;
    std::vector<double> x, y;
    for (int k : ks) {
        const Scenario s = replicate_resources(plain, k);
        OrderGenerator g{{{"B", 1}}, orders, 100000, TimePoint{}, 1};
        RunOptions opt;
        opt.mode = RunMode::deterministic;
        opt.record_trace = false;
        const RunReport r = run(s, opt, generate_orders(g));
        ScalingPoint p{k, static_cast<double>(r.messages.total()) / std::max(1, orders), r.done(), r.failed()};
        x.push_back(k);
        y.push_back(p.messages_per_order);
        res.points.push_back(p);
    }
    res.linear = polyfit(x, y, 1);
    res.quadratic = polyfit(x, y, 2);
    if (!x.empty()) {
        const double kmax = *std::max_element(x.begin(), x.end());
        const double value = res.quadratic(kmax);
        res.quadratic_share = value == 0.0 ? 0.0 : std::abs(res.quadratic.coefficients[2] * kmax * kmax) / std::abs(value);
    }
    return res;
}

namespace {

std::uint64_t buffered_stages(const RunReport& r) {
    std::uint64_t n = 0;
    for (const auto& o : r.orders) {
        for (const auto& s : o.stages) n += s.route == RouteKind::buffered ? 1 : 0;
    }
    return n;
}

double mean_done_duration(const RunReport& r) {
    double sum = 0.0;
    int n = 0;
    for (const auto& o : r.orders) {
        if (o.status != OrderStatus::done) continue;
        sum += std::chrono::duration<double, std::milli>(o.finished - o.started).count();
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

std::vector<ScenarioOrder> cycle_products(const Scenario& s, int orders, std::int64_t interval_ms) {
    std::vector<ScenarioOrder> out;
    for (int i = 0; i < orders; ++i) {
        const auto& p = s.products[static_cast<std::size_t>(i) % s.products.size()];
        out.push_back(ScenarioOrder{"o" + std::to_string(i + 1), p.id, TimePoint{}, interval_ms * i});
    }
    return out;
}

}  // namespace

ShopCompare shop_compare(const Scenario& flow, const Scenario& job, int orders, std::int64_t interval_ms, int hop_ms,
                         std::uint64_t seed) {
    RunOptions opt;
    opt.mode = RunMode::concurrent;
    opt.hop = std::chrono::milliseconds(hop_ms);
    opt.seed = seed;
    opt.record_trace = false;
    OrderGenerator g{{{"B", 1}}, orders, interval_ms, TimePoint{}, seed};
    const RunReport fr = run(flow, opt, generate_orders(g));
    const RunReport jr = run(job, opt, cycle_products(job, orders, interval_ms));
    ShopCompare c;
    c.flow_mean_ms = mean_done_duration(fr);
    c.job_mean_ms = mean_done_duration(jr);
    c.flow_done = fr.done();
    c.flow_failed = fr.failed();
    c.job_done = jr.done();
    c.job_failed = jr.failed();
    c.flow_buffered = buffered_stages(fr);
    c.job_buffered = buffered_stages(jr);
    return c;
}

ExperimentResult run_experiment(const std::string& preset, const ExperimentOptions& o) {
    const std::string flow_path = o.scenario_dir + "/section6_flowshop.json";
    const std::string job_path = o.scenario_dir + "/tableV_jobshop.json";
    ExperimentResult res;
    std::ostringstream sum;
    nlohmann::ordered_json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["preset"] = preset;

    if (preset == "hosting-sweep") {
        const Scenario flow = load_scenario(flow_path);
        const auto points = hosting_sweep(flow, {75, 150, 300, 600}, o.orders, o.hop_ms);
        doc["points"] = nlohmann::ordered_json::array();
        sum << "interval_ms  mean_dt_start  mean_dt_end  end_ratio  mean_duration  last5_spread  done/failed\n";
        for (const auto& p : points) {
            res.all_done = res.all_done && p.failed == 0;
            sum << p.interval_ms << "  " << p.timing.mean_dt_start() << "  " << p.timing.mean_dt_end() << "  "
                << p.end_ratio << "  " << p.timing.mean_duration() << "  " << p.tail_spread << "  " << p.done << "/"
                << p.failed << "\n";
            doc["points"].push_back({{"interval_ms", p.interval_ms},
                                     {"dt_start_ms", p.timing.dt_start_ms},
                                     {"dt_end_ms", p.timing.dt_end_ms},
                                     {"duration_ms", p.timing.duration_ms},
                                     {"mean_dt_start_ms", p.timing.mean_dt_start()},
                                     {"mean_dt_end_ms", p.timing.mean_dt_end()},
                                     {"end_ratio", p.end_ratio},
                                     {"last5_spread", p.tail_spread},
                                     {"done", p.done},
                                     {"failed", p.failed}});
        }
    } else if (preset == "scaling-sweep") {
        const Scenario flow = load_scenario(flow_path);
        const auto r = scaling_sweep(flow, {2, 4, 8, 16, 32});
        doc["points"] = nlohmann::ordered_json::array();
        sum << "k  messages_per_order\n";
        for (const auto& p : r.points) {
            res.all_done = res.all_done && p.failed == 0;
            sum << p.k << "  " << p.messages_per_order << "\n";
            doc["points"].push_back({{"k", p.k}, {"messages_per_order", p.messages_per_order}, {"done", p.done},
                                     {"failed", p.failed}});
        }
        sum << "linear fit: " << r.linear.coefficients[0] << " + " << r.linear.coefficients[1]
            << " k, R^2 = " << r.linear.r_squared << "\n"
            << "quadratic share at largest k: " << r.quadratic_share << "\n";
        doc["linear"] = {{"coefficients", r.linear.coefficients}, {"r_squared", r.linear.r_squared}};
        doc["quadratic"] = {{"coefficients", r.quadratic.coefficients}, {"share_at_max_k", r.quadratic_share}};
    } else if (preset == "shop-compare") {
        const Scenario flow = load_scenario(flow_path);
        const Scenario job = load_scenario(job_path);
        const auto c = shop_compare(flow, job, o.orders, 300, o.hop_ms, o.seed);
        res.all_done = c.flow_failed == 0 && c.job_failed == 0;
        sum << "flow shop mean coordination: " << c.flow_mean_ms << " ms (" << c.flow_done << " done, "
            << c.flow_failed << " failed, " << c.flow_buffered << " buffered stages)\n"
            << "job shop mean coordination: " << c.job_mean_ms << " ms (" << c.job_done << " done, " << c.job_failed
            << " failed, " << c.job_buffered << " buffered stages)\n";
        doc["flow"] = {{"mean_duration_ms", c.flow_mean_ms}, {"done", c.flow_done}, {"failed", c.flow_failed},
                       {"buffered_stages", c.flow_buffered}};
        doc["job"] = {{"mean_duration_ms", c.job_mean_ms}, {"done", c.job_done}, {"failed", c.job_failed},
                      {"buffered_stages", c.job_buffered}};
    } else {
        throw std::invalid_argument("unknown preset '" + preset + "'");
    }
    res.summary = sum.str();
    res.json = doc.dump(2) + "\n";
    return res;
}

}  // namespace cnetsched
