#include "cnetsched/harness/report_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace cnetsched {

namespace {

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double to_ms(KernelTime t) { return static_cast<double>(t.count()) / 1000.0; }

}  // namespace

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string gantt_csv(const std::vector<ResourceSnapshot>& resources) {
    struct Row {
        std::string resource, order, label, kind;
        std::int64_t start, end;
        bool open;
    };
    std::vector<Row> rows;
    for (const auto& r : resources) {
        for (const auto& e : r.entries) {
            for (const auto& seg : e.segments) {
                rows.push_back({r.id, e.order_id, e.step_label, std::string(to_string(seg.kind)),
                                to_seconds(seg.interval.start), to_seconds(seg.interval.end), false});
            }
            if (e.open_tail) rows.push_back({r.id, e.order_id, e.step_label, "open-tail", to_seconds(e.span_end()), 0, true});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.resource, a.start) < std::tie(b.resource, b.start);
    });
    std::ostringstream out;
    out << "resource_id,order_id,step_label,kind,start_s,end_s\n";
    for (const auto& r : rows) {
        out << csv_field(r.resource) << ',' << csv_field(r.order) << ',' << csv_field(r.label) << ',' << r.kind << ','
            << r.start << ',';
        if (!r.open) out << r.end;
        out << '\n';
    }
    return out.str();
}

void export_gantt(const RunReport& report, const std::string& path) { write_text(path, gantt_csv(report.resources)); }

double TimingSummary::mean_dt_start() const { return mean(dt_start_ms); }
double TimingSummary::mean_dt_end() const { return mean(dt_end_ms); }
double TimingSummary::mean_duration() const { return mean(duration_ms); }

TimingSummary timing(const RunReport& report) {
    TimingSummary t;
    for (const auto& o : report.orders) {
        t.start_ms.push_back(to_ms(o.started));
        t.end_ms.push_back(to_ms(o.finished));
        t.duration_ms.push_back(to_ms(o.finished - o.started));
    }
    for (std::size_t i = 1; i < t.start_ms.size(); ++i) {
        t.dt_start_ms.push_back(t.start_ms[i] - t.start_ms[i - 1]);
        t.dt_end_ms.push_back(t.end_ms[i] - t.end_ms[i - 1]);
    }
    return t;
}

std::string metrics_json(const RunReport& report) {
    nlohmann::ordered_json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["scenario"] = report.scenario;
    doc["mode"] = std::string(to_string(report.mode));
    doc["seed"] = report.seed;
    doc["t_transport_min_s"] = report.params.t_transport_min.count();
    doc["t_buffer_min_s"] = report.params.t_buffer_min.count();
    doc["orders_done"] = report.done();
    doc["orders_failed"] = report.failed();

    const TimingSummary t = timing(report);
    doc["orders"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
        const auto& o = report.orders[i];
        nlohmann::ordered_json j;
        j["id"] = o.order_id;
        j["product"] = o.product;
        j["status"] = std::string(to_string(o.status));
        if (!o.reason.empty()) j["reason"] = o.reason;
        j["start_ms"] = t.start_ms[i];
        j["end_ms"] = t.end_ms[i];
        j["duration_ms"] = t.duration_ms[i];
        j["messages"] = report.messages.for_order(o.order_id);
        j["stages"] = nlohmann::ordered_json::array();
        for (const auto& s : o.stages) {
            j["stages"].push_back({{"stage", s.stage},
                                   {"operation", s.operation},
                                   {"resource", s.resource},
                                   {"route", std::string(to_string(s.route))},
                                   {"start", format_time(s.start)},
                                   {"finish", format_time(s.finish)},
                                   {"proposals", s.proposals_received}});
        }
        doc["orders"].push_back(std::move(j));
    }
    doc["timing"] = {{"mean_dt_start_ms", t.mean_dt_start()},
                     {"mean_dt_end_ms", t.mean_dt_end()},
                     {"mean_duration_ms", t.mean_duration()}};
    nlohmann::ordered_json variants = nlohmann::ordered_json::object();
    for (const char* v : {"Cfp", "Proposal", "AcceptProposal", "RejectProposal", "InformDeparture", "InformFailure"}) {
        variants[v] = report.messages.for_variant(v);
    }
    doc["messages"] = {{"total", report.messages.total()},
                       {"per_order", report.orders.empty() ? 0.0
                                                           : static_cast<double>(report.messages.total()) /
                                                                 static_cast<double>(report.orders.size())},
                       {"by_variant", variants}};
    doc["violations"] = report.violations;
    return doc.dump(2) + "\n";
}

void export_metrics(const RunReport& report, const std::string& path) { write_text(path, metrics_json(report)); }

void export_trace(const RunReport& report, const std::string& path) { write_text(path, to_jsonl(report.trace)); }

}  // namespace cnetsched
