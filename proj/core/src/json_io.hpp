#pragma once

// Private JSON conversions shared by the catalog and the service layer.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rgss/catalog.hpp"
#include "rgss/darktime.hpp"
#include "rgss/mitigation.hpp"
#include "rgss/scan_geometry.hpp"

namespace rgss::json_io {

using nlohmann::json;

/// A JSON value plus its path in the document, for error messages.
class Node {
public:
    Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

    const json& value() const { return *value_; }
    const std::string& path() const { return path_; }

    bool has(std::string_view key) const;
    Node at(std::string_view key) const;  // required member
    std::optional<Node> find(std::string_view key) const;
    Node operator[](std::size_t i) const;
    std::size_t size() const;  // requires an array

    const json& object() const;
    double number() const;
    double number_or(std::string_view key, double fallback) const;
    long integer() const;
    bool boolean() const;
    std::string string() const;

    [[noreturn]] void fail(const std::string& what) const;

private:
    std::string child(std::string_view key) const;

    const json* value_;
    std::string path_;
};

json parse_document(std::string_view text, std::string_view what);

json to_json(const MeasurementBand& b);
json to_json(const RadiometerSpec& s);
json to_json(const GeofenceSpec& g);
json to_json(const Transmitter& t);
json to_json(const DarkTimeWindow& w);
json to_json(const MergedWindow& w);
json to_json(const AvailabilityReport& r);
json to_json(const SessionCounts& c);
json to_json(const MitigationPlan& p);
json to_json(const TrafficProfile& p);
json to_json(const MitigationPolicy& p);
json to_json(const CellSite& s);
json to_json(const TimeInterval& r);

MeasurementBand band_from(const Node& n);
RadiometerSpec spec_from(const Node& n);  // fields live next to id/norad_id
GeofenceSpec geofence_from(const Node& n);
Transmitter transmitter_from(const Node& n);  // {ngci, lat, lon, low_ghz, high_ghz}
DarkTimeWindow window_from(const Node& n);
CellSite site_from(const Node& n);
TrafficProfile profile_from(const Node& n);
MitigationPolicy policy_from(const Node& n);
TimeInterval interval_from(const Node& n);  // {start, end}
Instant instant_from(const Node& n);

}  // namespace rgss::json_io
