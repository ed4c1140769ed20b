#pragma once

#include <string>
#include <vector>

#include "cnetsched/harness/report_io.hpp"
#include "cnetsched/harness/scenario.hpp"

namespace cnetsched {

struct ExperimentOptions {
    std::string scenario_dir = "scenarios";
    int orders = 15;
    int hop_ms = 5;
    std::uint64_t seed = 1;
};

struct ExperimentResult {
    std::string summary;
    std::string json;
    bool all_done = true;
};

/// Least-squares polynomial fit y = c0 + c1 x + c2 x^2 + ...
struct PolyFit {
    std::vector<double> coefficients;
    double r_squared = 0.0;

    double operator()(double x) const;
};

PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

/// Copy of `base` with every resource replicated `k` times at the same location.
Scenario replicate_resources(const Scenario& base, int k);

/// Spread of a sample relative to its mean: (max - min) / mean.
double relative_spread(const std::vector<double>& values);

struct HostingPoint {
    std::int64_t interval_ms = 0;
    TimingSummary timing;
    std::size_t done = 0;
    std::size_t failed = 0;
    /// mean dt_end / interval.
    double end_ratio = 0.0;
    /// relative_spread of the last five coordination durations.
    double tail_spread = 0.0;
};

std::vector<HostingPoint> hosting_sweep(const Scenario& flow, const std::vector<std::int64_t>& intervals_ms,
                                        int orders, int hop_ms, const std::string& product = "B");

struct ScalingPoint {
    int k = 0;
    double messages_per_order = 0.0;
    std::size_t done = 0;
    std::size_t failed = 0;
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    PolyFit linear;
    PolyFit quadratic;
    /// |c2 k^2| / fitted value at the largest k.
    double quadratic_share = 0.0;
};

ScalingResult scaling_sweep(const Scenario& base, const std::vector<int>& ks, int orders = 2);

struct ShopCompare {
    double flow_mean_ms = 0.0;
    double job_mean_ms = 0.0;
    std::size_t flow_done = 0, flow_failed = 0, job_done = 0, job_failed = 0;
    std::uint64_t flow_buffered = 0, job_buffered = 0;
};

ShopCompare shop_compare(const Scenario& flow, const Scenario& job, int orders, std::int64_t interval_ms, int hop_ms,
                         std::uint64_t seed);

ExperimentResult run_experiment(const std::string& preset, const ExperimentOptions& options);

}  // namespace cnetsched
