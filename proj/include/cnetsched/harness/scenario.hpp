#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnetsched/agents/resource_agents.hpp"
#include "cnetsched/calculus/calculus.hpp"
#include "cnetsched/selector/selector.hpp"

namespace cnetsched {

/// One problem found while reading a scenario, with the JSON path it refers to.
struct ValidationIssue {
    std::string path;
    std::string message;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

inline constexpr int kScenarioFormatVersion = 1;

struct ScenarioParams {
    Duration t_buffer_min = minutes(15);
    int production_offers = 2;
    /// Expected coordination time of one stage; the stage timeout is this times the stage count.
    std::int64_t estimated_stage_time_ms = 100;
    Criterion criterion = Criterion::earliest_fulfillment;
    int stage_attempts = 3;
};

/// Pre-existing booking of a production resource. The setup in front of it is derived.
struct ProductionBooking {
    std::string order_id;
    std::string label;
    SegmentKind kind = SegmentKind::maintenance;
    TimePoint start;
    TimePoint end;
    /// State required by and left behind by the booking.
    std::string state;
};

struct ProductionResource {
    std::string id;
    std::string capability;
    Location location;
    std::map<std::string, Duration> op_duration;
    SetupMatrix setup;
    std::string initial_state;
    std::vector<ProductionBooking> initial_bookings;
};

struct BufferBooking {
    std::string order_id;
    std::string label;
    TimePoint start;
    TimePoint end;
};

struct BufferResource {
    std::string id;
    Location location;
    int capacity = 1;
    std::vector<BufferBooking> initial_bookings;
};

/// Pre-existing transport job (from/to/load_start) or maintenance parked at a site
/// (site/start/end). Setup travel from the previous position is derived.
struct TransportBooking {
    std::string order_id;
    std::string label;
    bool maintenance = false;
    std::string from;
    std::string to;
    TimePoint load_start;
    TimePoint end;
};

struct TransportResource {
    std::string id;
    TransportGeometry geometry;
    std::int64_t initial_x = 0;
    std::vector<TransportBooking> initial_bookings;
};

struct Product {
    std::string id;
    std::vector<std::string> steps;
    std::vector<std::string> shared_resources;
};

struct ScenarioOrder {
    std::string id;
    std::string product;
    TimePoint release;
    /// Kernel time at which the order agent is hosted.
    std::int64_t arrival_ms = 0;
};

struct Scenario {
    int format_version = kScenarioFormatVersion;
    std::string name;
    ScenarioParams params;
    std::vector<ProductionResource> production;
    std::vector<BufferResource> buffers;
    std::vector<TransportResource> transports;
    std::vector<Product> products;
    std::vector<ScenarioOrder> orders;

    const Product* product(const std::string& id) const;
    std::vector<Location> locations() const;
    std::map<std::string, Location> sites() const;
    Duration t_transport_min() const;
    ScheduleParams schedule_params() const;
};

/// "[Nd]HH:MM[:SS]". Scenario files may also give a JSON number of minutes.
TimePoint parse_time(const std::string& text);

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

/// Structural checks beyond parsing (unknown products, duplicate ids, overlapping initial bookings).
std::vector<ValidationIssue> validate(const Scenario& s);

}  // namespace cnetsched
