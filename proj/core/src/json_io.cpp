#include "json_io.hpp"

#include <cmath>

#include "rgss/error.hpp"

namespace rgss::json_io {

namespace {

std::string prefix(const Node& n) { return n.path().empty() ? std::string() : n.path() + "."; }

}  // namespace

std::string Node::child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

void Node::fail(const std::string& what) const {
    throw Error(ErrorCode::SchemaViolation, (path_.empty() ? std::string("$") : path_) + ": " + what);
}

const json& Node::object() const {
    if (!value_->is_object()) fail("expected an object");
    return *value_;
}

bool Node::has(std::string_view key) const { return value_->is_object() && value_->contains(key); }

Node Node::at(std::string_view key) const {
    const json& o = object();
    auto it = o.find(key);
    if (it == o.end()) Node(json(), child(key)).fail("required field missing");
    return Node(*it, child(key));
}

std::optional<Node> Node::find(std::string_view key) const {
    const json& o = object();
    auto it = o.find(key);
    if (it == o.end() || it->is_null()) return std::nullopt;
    return Node(*it, child(key));
}

std::size_t Node::size() const {
    if (!value_->is_array()) fail("expected an array");
    return value_->size();
}

Node Node::operator[](std::size_t i) const {
    if (i >= size()) fail("index out of range");
    return Node((*value_)[i], path_ + "[" + std::to_string(i) + "]");
}

double Node::number() const {
    if (!value_->is_number()) fail("expected a number");
    const double v = value_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
}

double Node::number_or(std::string_view key, double fallback) const {
    const auto n = find(key);
    return n ? n->number() : fallback;
}

long Node::integer() const {
    if (!value_->is_number_integer()) fail("expected an integer");
    return value_->get<long>();
}

bool Node::boolean() const {
    if (!value_->is_boolean()) fail("expected true or false");
    return value_->get<bool>();
}

std::string Node::string() const {
    if (!value_->is_string()) fail("expected a string");
    return value_->get<std::string>();
}

json parse_document(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, std::string(what) + " is not valid JSON (byte " +
                                                    std::to_string(e.byte) + ")");
    }
}

json to_json(const MeasurementBand& b) { return {{"center_ghz", b.center_ghz}, {"width_ghz", b.width_ghz}}; }

json to_json(const RadiometerSpec& s) {
    json j;
    j["name"] = s.name;
    j["scan_type"] = std::string(to_string(s.scan_type));
    if (s.scan_type == ScanType::Conical) {
        j["off_nadir_deg"] = s.off_nadir_deg;
    } else {
        j["max_scan_deg"] = s.max_scan_deg;
    }
    j["scan_period_s"] = s.scan_period_s;
    j["active_scan_deg"] = s.active_scan_deg;
    j["open_loop"] = s.open_loop;
    j["bands"] = json::array();
    for (const auto& b : s.bands) j["bands"].push_back(to_json(b));
    j["fov"] = json::array();
    for (const auto& f : s.fov) j["fov"].push_back({{"along_km", f.along_km}, {"cross_km", f.cross_km}});
    return j;
}

json to_json(const GeofenceSpec& g) {
    return {{"pixel_scale", g.pixel_scale},
            {"guard_pixels", g.guard_pixels},
            {"open_loop_guard_scanlines", g.open_loop_guard_scanlines}};
}

json to_json(const Transmitter& t) {
    return {{"ngci", t.id},
            {"lat", t.location.lat_deg},
            {"lon", t.location.lon_deg},
            {"low_ghz", t.tx_band.low_ghz},
            {"high_ghz", t.tx_band.high_ghz}};
}

json to_json(const TimeInterval& r) { return {{"start", format_iso8601(r.start)}, {"end", format_iso8601(r.end)}}; }

json to_json(const DarkTimeWindow& w) {
    return {{"satellite", w.satellite},
            {"start", format_iso8601(w.start)},
            {"end", format_iso8601(w.end)},
            {"duration_s", to_seconds(w.length())},
            {"scanline_count", w.scanline_count},
            {"core_scanlines", w.core_scanlines()},
            {"guard_scanlines", w.guard_scanlines},
            {"scan_period_s", w.scan_period_s},
            {"direction", std::string(to_string(w.direction))}};
}

json to_json(const MergedWindow& w) {
    return {{"start", format_iso8601(w.start)},
            {"end", format_iso8601(w.end)},
            {"duration_s", to_seconds(w.length())},
            {"satellites", w.satellites}};
}

json to_json(const AvailabilityReport& r) {
    return {{"period", to_json(r.period)}, {"total_dark_s", r.total_dark_s}, {"availability", r.availability}};
}

json to_json(const SessionCounts& c) {
    return {{"urllc", c.urllc}, {"real_time", c.real_time}, {"best_effort", c.best_effort}};
}

json to_json(const MitigationPlan& p) {
    json actions = json::array();
    for (const auto& a : p.actions) {
        json j{{"site", a.site_id},
               {"action", std::string(to_string(a.kind))},
               {"local_hour", a.local_hour},
               {"load", a.load},
               {"active", to_json(a.active)},
               {"handed_over", to_json(a.handed_over)},
               {"shed", to_json(a.shed)},
               {"impact", a.impact}};
        if (a.kind != ActionKind::Sleep) j["mechanism"] = std::string(to_string(a.mechanism));
        actions.push_back(std::move(j));
    }
    return {{"window", {{"satellite", p.satellite},
                        {"start", format_iso8601(p.window_start)},
                        {"end", format_iso8601(p.window_end)}}},
            {"handover_failure_probability", p.handover_failure_probability},
            {"actions", std::move(actions)},
            {"impact", p.impact}};
}

json to_json(const TrafficProfile& p) {
    json a = json::array();
    for (const auto& x : p.anchors) a.push_back({{"hour", x.hour}, {"fraction", x.fraction}});
    return {{"anchors", a}};
}

json to_json(const MitigationPolicy& p) {
    return {{"sleep_start_hour", p.sleep_start_hour},
            {"sleep_end_hour", p.sleep_end_hour},
            {"sleep_load_threshold", p.sleep_load_threshold},
            {"handover_failure_probability", p.handover_failure_probability},
            {"mechanism", std::string(to_string(p.mechanism))}};
}

json to_json(const CellSite& s) {
    return {{"id", s.id},
            {"transmitter", s.transmitter_id},
            {"sessions", to_json(s.sessions)},
            {"spare_capacity", s.spare_capacity},
            {"utc_offset_hours", s.utc_offset_hours}};
}

MeasurementBand band_from(const Node& n) { return {n.at("center_ghz").number(), n.at("width_ghz").number()}; }

RadiometerSpec spec_from(const Node& n) {
    RadiometerSpec s;
    s.name = n.at("name").string();
    const Node type = n.at("scan_type");
    const std::string t = type.string();
    if (t == "conical") {
        s.scan_type = ScanType::Conical;
        s.off_nadir_deg = n.at("off_nadir_deg").number();
    } else if (t == "cross_track") {
        s.scan_type = ScanType::CrossTrack;
        s.max_scan_deg = n.at("max_scan_deg").number();
    } else {
        type.fail("unknown scan type '" + t + "' (expected conical or cross_track)");
    }
    s.scan_period_s = n.at("scan_period_s").number();
    s.active_scan_deg = n.at("active_scan_deg").number();
    s.open_loop = n.at("open_loop").boolean();
    const Node bands = n.at("bands");
    for (std::size_t i = 0; i < bands.size(); ++i) s.bands.push_back(band_from(bands[i]));
    const Node fov = n.at("fov");
    for (std::size_t i = 0; i < fov.size(); ++i) {
        s.fov.push_back({fov[i].at("along_km").number(), fov[i].at("cross_km").number()});
    }
    s.validate(prefix(n));
    return s;
}

GeofenceSpec geofence_from(const Node& n) {
    GeofenceSpec g;
    n.object();
    g.pixel_scale = n.number_or("pixel_scale", g.pixel_scale);
    if (auto v = n.find("guard_pixels")) g.guard_pixels = static_cast<int>(v->integer());
    if (auto v = n.find("open_loop_guard_scanlines")) g.open_loop_guard_scanlines = static_cast<int>(v->integer());
    g.validate(prefix(n));
    return g;
}

Transmitter transmitter_from(const Node& n) {
    Transmitter t;
    t.id = n.at("ngci").string();
    const Node lat = n.at("lat");
    const Node lon = n.at("lon");
    t.location = {lat.number(), lon.number()};
    if (std::abs(t.location.lat_deg) > 90.0) lat.fail("must be in [-90, 90]");
    if (std::abs(t.location.lon_deg) > 180.0) lon.fail("must be in [-180, 180]");
    t.tx_band = {n.at("low_ghz").number(), n.at("high_ghz").number()};
    if (!(t.tx_band.width_ghz() > 0.0)) n.at("high_ghz").fail("must exceed low_ghz");
    return t.normalized();
}

Instant instant_from(const Node& n) {
    try {
        return parse_iso8601(n.string());
    } catch (const Error& e) {
        n.fail(e.what());
    }
}

TimeInterval interval_from(const Node& n) {
    TimeInterval r{instant_from(n.at("start")), instant_from(n.at("end"))};
    if (r.end < r.start) n.at("end").fail("ends before start");
    return r;
}

DarkTimeWindow window_from(const Node& n) {
    DarkTimeWindow w;
    w.satellite = n.find("satellite") ? n.at("satellite").string() : std::string();
    w.start = instant_from(n.at("start"));
    w.end = instant_from(n.at("end"));
    if (w.end < w.start) n.at("end").fail("ends before start");
    w.scan_period_s = n.number_or("scan_period_s", 0.0);
    if (auto v = n.find("scanline_count")) w.scanline_count = static_cast<int>(v->integer());
    if (auto v = n.find("guard_scanlines")) w.guard_scanlines = static_cast<int>(v->integer());
    if (auto v = n.find("direction")) {
        const std::string d = v->string();
        if (d == "ascending") {
            w.direction = Direction::Ascending;
        } else if (d == "descending") {
            w.direction = Direction::Descending;
        } else {
            v->fail("expected ascending or descending");
        }
    }
    return w;
}

CellSite site_from(const Node& n) {
    CellSite s;
    s.id = n.at("id").string();
    if (auto v = n.find("transmitter")) s.transmitter_id = v->string();
    const Node sessions = n.at("sessions");
    s.sessions.urllc = sessions.at("urllc").integer();
    s.sessions.real_time = sessions.at("real_time").integer();
    s.sessions.best_effort = sessions.at("best_effort").integer();
    s.spare_capacity = n.at("spare_capacity").integer();
    s.utc_offset_hours = n.number_or("utc_offset_hours", 0.0);
    s.validate(prefix(n));
    return s;
}

TrafficProfile profile_from(const Node& n) {
    TrafficProfile p;
    const Node anchors = n.at("anchors");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        p.anchors.push_back({anchors[i].at("hour").number(), anchors[i].at("fraction").number()});
    }
    p.validate(prefix(n));
    return p;
}

MitigationPolicy policy_from(const Node& n) {
    MitigationPolicy p;
    n.object();
    p.sleep_start_hour = n.number_or("sleep_start_hour", p.sleep_start_hour);
    p.sleep_end_hour = n.number_or("sleep_end_hour", p.sleep_end_hour);
    p.sleep_load_threshold = n.number_or("sleep_load_threshold", p.sleep_load_threshold);
    p.handover_failure_probability = n.number_or("handover_failure_probability", p.handover_failure_probability);
    if (auto v = n.find("mechanism")) {
        const std::string m = v->string();
        if (m == "daps") {
            p.mechanism = HandoverMechanism::Daps;
        } else if (m == "l1l2") {
            p.mechanism = HandoverMechanism::L1L2;
        } else {
            v->fail("expected daps or l1l2");
        }
    }
    p.validate(prefix(n));
    return p;
}

}  // namespace rgss::json_io
