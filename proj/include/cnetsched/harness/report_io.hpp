#pragma once

#include <string>
#include <vector>

#include "cnetsched/runtime/run.hpp"

namespace cnetsched {

inline constexpr int kReportFormatVersion = 1;

/// resource_id,order_id,step_label,kind,start_s,end_s rows sorted by (resource_id, start_s).
/// RFC 4180 quoting for a single CSV field.
std::string csv_field(const std::string& s);

std::string gantt_csv(const std::vector<ResourceSnapshot>& resources);
void export_gantt(const RunReport& report, const std::string& path);

struct TimingSummary {
    /// Kernel milliseconds, in order of hosting.
    std::vector<double> start_ms;
    std::vector<double> end_ms;
    std::vector<double> duration_ms;
    /// Differences between consecutive orders.
    std::vector<double> dt_start_ms;
    std::vector<double> dt_end_ms;

    double mean_dt_start() const;
    double mean_dt_end() const;
    double mean_duration() const;
};

TimingSummary timing(const RunReport& report);

std::string metrics_json(const RunReport& report);
void export_metrics(const RunReport& report, const std::string& path);
void export_trace(const RunReport& report, const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace cnetsched
