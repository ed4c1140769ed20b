#include "cnetsched/harness/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cnetsched {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
    std::string s = "invalid scenario:";
    for (const auto& i : issues) s += "\n  " + i.path + ": " + i.message;
    return s;
}

/// Collects every problem instead of stopping at the first one.
class Reader {
public:
    std::vector<ValidationIssue> issues;

    void fail(const std::string& path, const std::string& msg) { issues.push_back({path, msg}); }

    const json* field(const json& obj, const std::string& path, const char* key, bool required = true) {
        if (!obj.is_object()) {
            fail(path, "expected an object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path + "." + key, "missing");
            return nullptr;
        }
        return &*it;
    }

    std::string str(const json& obj, const std::string& path, const char* key, std::string fallback = {},
                    bool required = true) {
        const json* v = field(obj, path, key, required);
        if (v == nullptr) return fallback;
        if (!v->is_string()) {
            fail(path + "." + key, "expected a string");
            return fallback;
        }
        return v->get<std::string>();
    }

    std::int64_t integer(const json& obj, const std::string& path, const char* key, std::int64_t fallback,
                         bool required = true) {
        const json* v = field(obj, path, key, required);
        if (v == nullptr) return fallback;
        if (!v->is_number_integer()) {
            fail(path + "." + key, "expected an integer");
            return fallback;
        }
        return v->get<std::int64_t>();
    }

    Duration duration(const json& v, const std::string& path) {
        if (!v.is_number_integer()) {
            fail(path, "expected whole minutes");
            return Duration::zero();
        }
        const auto m = v.get<std::int64_t>();
        if (m < 0) fail(path, "duration must not be negative");
        return minutes(std::max<std::int64_t>(m, 0));
    }

    Duration duration(const json& obj, const std::string& path, const char* key, Duration fallback,
                      bool required = true) {
        const json* v = field(obj, path, key, required);
        return v == nullptr ? fallback : duration(*v, path + "." + key);
    }

    TimePoint time(const json& obj, const std::string& path, const char* key, TimePoint fallback = {},
                   bool required = true) {
        const json* v = field(obj, path, key, required);
        if (v == nullptr) return fallback;
        try {
            if (v->is_number_integer()) {
                const auto m = v->get<std::int64_t>();
                if (m < 0) throw std::invalid_argument("negative");
                return at_minute(m);
            }
            if (v->is_string()) return parse_time(v->get<std::string>());
        } catch (const std::exception&) {
        }
        fail(path + "." + key, "expected minutes or \"[Nd]HH:MM\"");
        return fallback;
    }

    Location location(const json& obj, const std::string& path, const char* key = "location") {
        const json* v = field(obj, path, key);
        if (v == nullptr) return {};
        if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number_integer() || !(*v)[1].is_number_integer()) {
            fail(path + "." + key, "expected [x, y] in whole meters");
            return {};
        }
        return Location{(*v)[0].get<std::int64_t>(), (*v)[1].get<std::int64_t>()};
    }

    const json& array(const json& obj, const std::string& path, const char* key, bool required = true) {
        static const json empty = json::array();
        const json* v = field(obj, path, key, required);
        if (v == nullptr) return empty;
        if (!v->is_array()) {
            fail(path + "." + key, "expected an array");
            return empty;
        }
        return *v;
    }
};

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

TimePoint parse_time(const std::string& text) {
    static const std::regex pattern(R"(^(?:(\d+)d)?(\d{1,2}):(\d{2})(?::(\d{2}))?$)");
    std::smatch m;
    if (std::regex_match(text, m, pattern)) {
        const std::int64_t day = m[1].matched ? std::stoll(m[1]) : 0;
        const std::int64_t h = std::stoll(m[2]);
        const std::int64_t mi = std::stoll(m[3]);
        const std::int64_t s = m[4].matched ? std::stoll(m[4]) : 0;
        if (h < 24 && mi < 60 && s < 60) return clock_time(day, h, mi) + seconds(s);
    }
    throw std::invalid_argument("bad time '" + text + "'");
}

const Product* Scenario::product(const std::string& id) const {
    for (const auto& p : products) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

std::vector<Location> Scenario::locations() const {
    std::vector<Location> out;
    for (const auto& r : production) out.push_back(r.location);
    for (const auto& b : buffers) out.push_back(b.location);
    return out;
}

std::map<std::string, Location> Scenario::sites() const {
    std::map<std::string, Location> out;
    for (const auto& r : production) out[r.id] = r.location;
    for (const auto& b : buffers) out[b.id] = b.location;
    return out;
}

Duration Scenario::t_transport_min() const {
    std::vector<TransportGeometry> geoms;
    for (const auto& t : transports) geoms.push_back(t.geometry);
    return derive_t_transport_min(locations(), geoms);
}

ScheduleParams Scenario::schedule_params() const { return ScheduleParams{t_transport_min(), params.t_buffer_min}; }

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError({{"$", std::string("not valid JSON: ") + e.what()}});
    }
    Reader rd;
    Scenario s;
    s.format_version = static_cast<int>(rd.integer(doc, "$", "format_version", 0));
    if (s.format_version != kScenarioFormatVersion && rd.issues.empty()) {
        rd.fail("$.format_version", "unsupported version " + std::to_string(s.format_version));
    }
    s.name = rd.str(doc, "$", "name", "", false);

    if (const json* p = rd.field(doc, "$", "params", false)) {
        const std::string path = "$.params";
        s.params.t_buffer_min = rd.duration(*p, path, "t_buffer_min", s.params.t_buffer_min, false);
        s.params.production_offers =
            static_cast<int>(rd.integer(*p, path, "production_offers", s.params.production_offers, false));
        if (s.params.production_offers < 1) rd.fail(path + ".production_offers", "must be at least 1");
        s.params.estimated_stage_time_ms =
            rd.integer(*p, path, "estimated_stage_time_ms", s.params.estimated_stage_time_ms, false);
        if (s.params.estimated_stage_time_ms <= 0) rd.fail(path + ".estimated_stage_time_ms", "must be positive");
        s.params.stage_attempts = static_cast<int>(rd.integer(*p, path, "stage_attempts", s.params.stage_attempts, false));
        if (s.params.stage_attempts < 1) rd.fail(path + ".stage_attempts", "must be at least 1");
        const std::string crit = rd.str(*p, path, "criterion", "earliest_fulfillment", false);
        if (crit == "lowest_price") {
            s.params.criterion = Criterion::lowest_price;
        } else if (crit != "earliest_fulfillment") {
            rd.fail(path + ".criterion", "expected earliest_fulfillment or lowest_price");
        }
    }
    if (s.params.t_buffer_min <= Duration::zero()) rd.fail("$.params.t_buffer_min", "must be positive");

    const json& prod = rd.array(doc, "$", "production");
    for (std::size_t i = 0; i < prod.size(); ++i) {
        const json& r = prod[i];
        const std::string path = at_index("$.production", i);
        ProductionResource pr;
        pr.id = rd.str(r, path, "id");
        pr.capability = rd.str(r, path, "capability", pr.id, false);
        pr.location = rd.location(r, path);
        pr.initial_state = rd.str(r, path, "initial_state", "", false);
        if (const json* ops = rd.field(r, path, "op_duration")) {
            if (!ops->is_object()) {
                rd.fail(path + ".op_duration", "expected {product: minutes}");
            } else {
                for (const auto& [product, d] : ops->items()) {
                    pr.op_duration[product] = rd.duration(d, path + ".op_duration." + product);
                }
            }
        }
        if (const json* setup = rd.field(r, path, "setup", false)) {
            if (!setup->is_object()) {
                rd.fail(path + ".setup", "expected {\"FROM->TO\": minutes}");
            } else {
                for (const auto& [key, d] : setup->items()) {
                    const auto arrow = key.find("->");
                    if (arrow == std::string::npos) {
                        rd.fail(path + ".setup." + key, "key must look like FROM->TO");
                        continue;
                    }
                    pr.setup[{key.substr(0, arrow), key.substr(arrow + 2)}] = rd.duration(d, path + ".setup." + key);
                }
            }
        }
        const json& books = rd.array(r, path, "initial_bookings", false);
        for (std::size_t k = 0; k < books.size(); ++k) {
            const std::string bp = at_index(path + ".initial_bookings", k);
            ProductionBooking b;
            b.order_id = rd.str(books[k], bp, "order", "init", false);
            b.label = rd.str(books[k], bp, "label", "init-" + std::to_string(k), false);
            const std::string kind = rd.str(books[k], bp, "kind", "maintenance", false);
            if (kind == "operation") {
                b.kind = SegmentKind::operation;
            } else if (kind != "maintenance") {
                rd.fail(bp + ".kind", "expected operation or maintenance");
            }
            b.start = rd.time(books[k], bp, "start");
            b.end = rd.time(books[k], bp, "end");
            if (b.end <= b.start) rd.fail(bp, "end must lie after start");
            b.state = rd.str(books[k], bp, "state", "", false);
            pr.initial_bookings.push_back(std::move(b));
        }
        s.production.push_back(std::move(pr));
    }

    const json& bufs = rd.array(doc, "$", "buffers", false);
    for (std::size_t i = 0; i < bufs.size(); ++i) {
        const std::string path = at_index("$.buffers", i);
        BufferResource b;
        b.id = rd.str(bufs[i], path, "id");
        b.location = rd.location(bufs[i], path);
        b.capacity = static_cast<int>(rd.integer(bufs[i], path, "capacity", 1, false));
        if (b.capacity != 1) rd.fail(path + ".capacity", "only capacity 1 is supported");
        const json& books = rd.array(bufs[i], path, "initial_bookings", false);
        for (std::size_t k = 0; k < books.size(); ++k) {
            const std::string bp = at_index(path + ".initial_bookings", k);
            BufferBooking bb;
            bb.order_id = rd.str(books[k], bp, "order", "init", false);
            bb.label = rd.str(books[k], bp, "label", "init-" + std::to_string(k), false);
            bb.start = rd.time(books[k], bp, "start");
            bb.end = rd.time(books[k], bp, "end");
            if (bb.end <= bb.start) rd.fail(bp, "end must lie after start");
            b.initial_bookings.push_back(std::move(bb));
        }
        s.buffers.push_back(std::move(b));
    }

    const json& trans = rd.array(doc, "$", "transports");
    for (std::size_t i = 0; i < trans.size(); ++i) {
        const json& t = trans[i];
        const std::string path = at_index("$.transports", i);
        TransportResource tr;
        tr.id = rd.str(t, path, "id");
        if (const json* sp = rd.field(t, path, "speed")) {
            try {
                tr.geometry.speed = sp->is_string() ? parse_speed(sp->get<std::string>())
                                                    : parse_speed(std::to_string(sp->get<std::int64_t>()));
                if (tr.geometry.speed.meters <= 0 || tr.geometry.speed.seconds <= 0) throw std::invalid_argument("speed");
            } catch (const std::exception&) {
                rd.fail(path + ".speed", "expected a positive speed like \"1/12\" (m/s)");
            }
        }
        tr.geometry.load_time = rd.duration(t, path, "load", Duration::zero());
        tr.geometry.unload_time = rd.duration(t, path, "unload", Duration::zero());
        if (const json* seg = rd.field(t, path, "segment")) {
            if (!seg->is_array() || seg->size() != 2 || !(*seg)[0].is_number_integer() ||
                !(*seg)[1].is_number_integer() || (*seg)[0].get<std::int64_t>() > (*seg)[1].get<std::int64_t>()) {
                rd.fail(path + ".segment", "expected [x_min, x_max] with x_min <= x_max");
            } else {
                tr.geometry.x_min = (*seg)[0].get<std::int64_t>();
                tr.geometry.x_max = (*seg)[1].get<std::int64_t>();
            }
        }
        tr.initial_x = rd.integer(t, path, "initial_x", tr.geometry.x_min, false);
        const json& books = rd.array(t, path, "initial_bookings", false);
        for (std::size_t k = 0; k < books.size(); ++k) {
            const std::string bp = at_index(path + ".initial_bookings", k);
            TransportBooking tb;
            tb.order_id = rd.str(books[k], bp, "order", "init", false);
            tb.label = rd.str(books[k], bp, "label", "init-" + std::to_string(k), false);
            const std::string kind = rd.str(books[k], bp, "kind", "job", false);
            if (kind == "maintenance") {
                tb.maintenance = true;
                tb.from = tb.to = rd.str(books[k], bp, "site");
                tb.load_start = rd.time(books[k], bp, "start");
                tb.end = rd.time(books[k], bp, "end");
                if (tb.end <= tb.load_start) rd.fail(bp, "end must lie after start");
            } else if (kind == "job") {
                tb.from = rd.str(books[k], bp, "from");
                tb.to = rd.str(books[k], bp, "to");
                tb.load_start = rd.time(books[k], bp, "load_start");
            } else {
                rd.fail(bp + ".kind", "expected job or maintenance");
            }
            tr.initial_bookings.push_back(std::move(tb));
        }
        s.transports.push_back(std::move(tr));
    }

    const json& prods = rd.array(doc, "$", "products");
    for (std::size_t i = 0; i < prods.size(); ++i) {
        const std::string path = at_index("$.products", i);
        Product p;
        p.id = rd.str(prods[i], path, "id");
        const json& steps = rd.array(prods[i], path, "steps");
        for (std::size_t k = 0; k < steps.size(); ++k) {
            if (!steps[k].is_string()) {
                rd.fail(at_index(path + ".steps", k), "expected an operation name");
                continue;
            }
            p.steps.push_back(steps[k].get<std::string>());
        }
        const json& srs = rd.array(prods[i], path, "shared_resources", false);
        for (std::size_t k = 0; k < srs.size(); ++k) {
            p.shared_resources.push_back(srs[k].is_string() ? srs[k].get<std::string>() : srs[k].dump());
        }
        s.products.push_back(std::move(p));
    }

    const json& orders = rd.array(doc, "$", "orders", false);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const std::string path = at_index("$.orders", i);
        ScenarioOrder o;
        o.id = rd.str(orders[i], path, "id", "o" + std::to_string(i + 1), false);
        o.product = rd.str(orders[i], path, "product");
        o.release = rd.time(orders[i], path, "release", TimePoint{}, false);
        o.arrival_ms = rd.integer(orders[i], path, "arrival_ms", 0, false);
        if (o.arrival_ms < 0) rd.fail(path + ".arrival_ms", "must not be negative");
        s.orders.push_back(std::move(o));
    }

    if (rd.issues.empty()) {
        for (auto& issue : validate(s)) rd.issues.push_back(std::move(issue));
    }
    if (!rd.issues.empty()) throw ValidationError(std::move(rd.issues));
    return s;
}

std::vector<ValidationIssue> validate(const Scenario& s) {
    std::vector<ValidationIssue> issues;
    std::set<std::string> ids;
    auto unique_id = [&](const std::string& id, const std::string& path) {
        if (id.empty()) issues.push_back({path, "id must not be empty"});
        else if (!ids.insert(id).second) issues.push_back({path, "duplicate resource id '" + id + "'"});
    };
    for (std::size_t i = 0; i < s.production.size(); ++i) unique_id(s.production[i].id, at_index("$.production", i) + ".id");
    for (std::size_t i = 0; i < s.buffers.size(); ++i) unique_id(s.buffers[i].id, at_index("$.buffers", i) + ".id");
    for (std::size_t i = 0; i < s.transports.size(); ++i) unique_id(s.transports[i].id, at_index("$.transports", i) + ".id");

    if (s.transports.empty()) issues.push_back({"$.transports", "at least one transport is required"});
    if (s.production.size() + s.buffers.size() < 2) {
        issues.push_back({"$.production", "at least two locations are required"});
    }

    std::set<std::string> product_ids;
    for (std::size_t i = 0; i < s.products.size(); ++i) {
        const auto& p = s.products[i];
        const std::string path = at_index("$.products", i);
        if (!product_ids.insert(p.id).second) issues.push_back({path + ".id", "duplicate product '" + p.id + "'"});
        if (!p.shared_resources.empty()) {
            issues.push_back({path + ".shared_resources", "shared-resource demands are not supported"});
        }
    }
    std::set<std::string> order_ids;
    for (std::size_t i = 0; i < s.orders.size(); ++i) {
        const auto& o = s.orders[i];
        const std::string path = at_index("$.orders", i);
        if (!product_ids.contains(o.product)) issues.push_back({path + ".product", "unknown product '" + o.product + "'"});
        if (!order_ids.insert(o.id).second) issues.push_back({path + ".id", "duplicate order '" + o.id + "'"});
    }

    const auto sites = s.sites();
    for (std::size_t i = 0; i < s.transports.size(); ++i) {
        const auto& t = s.transports[i];
        const std::string path = at_index("$.transports", i);
        if (!t.geometry.covers(t.initial_x)) issues.push_back({path + ".initial_x", "outside the segment"});
        for (std::size_t k = 0; k < t.initial_bookings.size(); ++k) {
            const auto& b = t.initial_bookings[k];
            const std::string bp = at_index(path + ".initial_bookings", k);
            for (const auto* site : {&b.from, &b.to}) {
                auto it = sites.find(*site);
                if (it == sites.end()) issues.push_back({bp, "unknown site '" + *site + "'"});
                else if (!t.geometry.covers(it->second.x)) issues.push_back({bp, "site '" + *site + "' outside the segment"});
            }
        }
    }

    auto overlapping = [&](auto intervals, const std::string& path) {
        std::sort(intervals.begin(), intervals.end(),
                  [](const TimeInterval& a, const TimeInterval& b) { return a.start < b.start; });
        for (std::size_t k = 1; k < intervals.size(); ++k) {
            if (intervals[k - 1].end > intervals[k].start) {
                issues.push_back({path, "initial bookings " + to_string(intervals[k - 1]) + " and " +
                                            to_string(intervals[k]) + " overlap"});
            }
        }
    };
    for (std::size_t i = 0; i < s.production.size(); ++i) {
        std::vector<TimeInterval> iv;
        for (const auto& b : s.production[i].initial_bookings) iv.push_back({b.start, b.end});
        overlapping(iv, at_index("$.production", i) + ".initial_bookings");
    }
    for (std::size_t i = 0; i < s.buffers.size(); ++i) {
        std::vector<TimeInterval> iv;
        for (const auto& b : s.buffers[i].initial_bookings) iv.push_back({b.start, b.end});
        overlapping(iv, at_index("$.buffers", i) + ".initial_bookings");
    }
    return issues;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

namespace {

std::int64_t whole_minutes(Duration d) { return d.count() / 60; }

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    ordered_json doc;
    doc["format_version"] = s.format_version;
    if (!s.name.empty()) doc["name"] = s.name;
    doc["params"] = {
        {"t_buffer_min", whole_minutes(s.params.t_buffer_min)},
        {"production_offers", s.params.production_offers},
        {"estimated_stage_time_ms", s.params.estimated_stage_time_ms},
        {"stage_attempts", s.params.stage_attempts},
        {"criterion", s.params.criterion == Criterion::lowest_price ? "lowest_price" : "earliest_fulfillment"},
    };
    doc["production"] = ordered_json::array();
    for (const auto& r : s.production) {
        ordered_json j;
        j["id"] = r.id;
        j["capability"] = r.capability;
        j["location"] = {r.location.x, r.location.y};
        j["initial_state"] = r.initial_state;
        j["op_duration"] = ordered_json::object();
        for (const auto& [p, d] : r.op_duration) j["op_duration"][p] = whole_minutes(d);
        j["setup"] = ordered_json::object();
        for (const auto& [k, d] : r.setup) j["setup"][k.first + "->" + k.second] = whole_minutes(d);
        j["initial_bookings"] = ordered_json::array();
        for (const auto& b : r.initial_bookings) {
            j["initial_bookings"].push_back({{"order", b.order_id},
                                             {"label", b.label},
                                             {"kind", std::string(to_string(b.kind))},
                                             {"start", format_time(b.start)},
                                             {"end", format_time(b.end)},
                                             {"state", b.state}});
        }
        doc["production"].push_back(std::move(j));
    }
    doc["buffers"] = ordered_json::array();
    for (const auto& b : s.buffers) {
        ordered_json j;
        j["id"] = b.id;
        j["location"] = {b.location.x, b.location.y};
        j["capacity"] = b.capacity;
        j["initial_bookings"] = ordered_json::array();
        for (const auto& bb : b.initial_bookings) {
            j["initial_bookings"].push_back({{"order", bb.order_id},
                                             {"label", bb.label},
                                             {"start", format_time(bb.start)},
                                             {"end", format_time(bb.end)}});
        }
        doc["buffers"].push_back(std::move(j));
    }
    doc["transports"] = ordered_json::array();
    for (const auto& t : s.transports) {
        ordered_json j;
        j["id"] = t.id;
        j["speed"] = to_string(t.geometry.speed);
        j["segment"] = {t.geometry.x_min, t.geometry.x_max};
        j["load"] = whole_minutes(t.geometry.load_time);
        j["unload"] = whole_minutes(t.geometry.unload_time);
        j["initial_x"] = t.initial_x;
        j["initial_bookings"] = ordered_json::array();
        for (const auto& b : t.initial_bookings) {
            if (b.maintenance) {
                j["initial_bookings"].push_back({{"order", b.order_id},
                                                 {"label", b.label},
                                                 {"kind", "maintenance"},
                                                 {"site", b.from},
                                                 {"start", format_time(b.load_start)},
                                                 {"end", format_time(b.end)}});
            } else {
                j["initial_bookings"].push_back({{"order", b.order_id},
                                                 {"label", b.label},
                                                 {"kind", "job"},
                                                 {"from", b.from},
                                                 {"to", b.to},
                                                 {"load_start", format_time(b.load_start)}});
            }
        }
        doc["transports"].push_back(std::move(j));
    }
    doc["products"] = ordered_json::array();
    for (const auto& p : s.products) {
        ordered_json j{{"id", p.id}, {"steps", p.steps}};
        if (!p.shared_resources.empty()) j["shared_resources"] = p.shared_resources;
        doc["products"].push_back(std::move(j));
    }
    doc["orders"] = ordered_json::array();
    for (const auto& o : s.orders) {
        doc["orders"].push_back({{"id", o.id},
                                 {"product", o.product},
                                 {"release", format_time(o.release)},
                                 {"arrival_ms", o.arrival_ms}});
    }
    return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario '" + path + "'");
    out << scenario_to_json(s);
}

}  // namespace cnetsched
