#include "rgss/service.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "json_io.hpp"
#include "rgss/mitigation.hpp"

namespace rgss {

using json_io::json;
using json_io::Node;

namespace {

constexpr int kMaxQueryDays = 31;

struct Query {
    Transmitter tx;
    std::optional<std::string> ngci;
    TimeInterval range;
    FrequencyRange frequency;
    std::vector<std::string> satellites;  // resolved ids, catalog order
    GeofenceSpec geofence;
    double adjacency_guard_ghz = 0.0;
};

struct TaggedWindow {
    DarkTimeWindow window;
    MeasurementBand band;
};

struct QueryResult {
    std::vector<std::string> matched;
    std::map<std::string, std::vector<TaggedWindow>> windows;
    std::vector<MergedWindow> merged;
    AvailabilityReport report;
};

std::string render(const json& j) { return j.dump(2) + "\n"; }

double round6(double x) { return std::round(x * 1e6) / 1e6; }

FrequencyRange frequency_from(const Node& n) {
    const FrequencyRange f{n.at("low_ghz").number(), n.at("high_ghz").number()};
    if (!(f.low_ghz > 0.0)) n.at("low_ghz").fail("must be > 0");
    if (!(f.width_ghz() > 0.0)) n.at("high_ghz").fail("must exceed low_ghz");
    return f;
}

std::vector<std::string> satellites_from(const Catalog& catalog, const Node& root) {
    std::vector<std::string> ids;
    const auto sel = root.find("satellites");
    if (!sel || (sel->value().is_string() && sel->string() == "all")) {
        for (const auto& [id, rec] : catalog.satellites) ids.push_back(id);
        return ids;
    }
    if (sel->value().is_string()) sel->fail("expected \"all\" or a list of satellite ids");
    for (std::size_t i = 0; i < sel->size(); ++i) {
        const Node item = (*sel)[i];
        const std::string id = item.string();
        if (!catalog.satellites.contains(id)) throw Error(ErrorCode::NotFound, item.path() + ": unknown satellite '" + id + "'");
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

TimeInterval range_from(const Node& root) {
    const auto date = root.find("date");
    const auto range = root.find("range");
    if (date.has_value() == range.has_value()) root.fail("needs exactly one of 'date' or 'range'");
    TimeInterval r;
    if (date) {
        const std::string d = date->string();
        if (d.size() != 10) date->fail("expected YYYY-MM-DD");
        r.start = json_io::instant_from(*date);
        long days = 1;
        if (auto n = root.find("days")) {
            days = n->integer();
            if (days < 1 || days > kMaxQueryDays) n->fail("must be in 1.." + std::to_string(kMaxQueryDays));
        }
        r.end = r.start + std::chrono::days(days);
    } else {
        if (root.find("days")) root.at("days").fail("only valid together with 'date'");
        r = json_io::interval_from(*range);
        if (r.empty()) range->fail("must not be empty");
        if (r.length() > std::chrono::days(kMaxQueryDays)) range->fail("longer than the query limit");
    }
    return r;
}

Query parse_query(const Catalog& catalog, const Node& root) {
    root.object();
    Query q;
    const auto loc = root.find("location");
    const auto ngci = root.find("ngci");
    if (loc.has_value() == ngci.has_value()) root.fail("needs exactly one of 'location' or 'ngci'");
    const auto freq = root.find("frequency");
    if (ngci) {
        q.ngci = ngci->string();
        q.tx = lookup_transmitter(catalog, *q.ngci);
        if (freq) q.tx.tx_band = frequency_from(*freq);
    } else {
        const Node lat = loc->at("lat");
        const Node lon = loc->at("lon");
        if (std::abs(lat.number()) > 90.0) lat.fail("must be in [-90, 90]");
        if (std::abs(lon.number()) > 180.0) lon.fail("must be in [-180, 180]");
        const Node f = freq ? *freq : root.at("frequency");
        q.tx = Transmitter{"query", {lat.number(), normalize_lon(lon.number())}, frequency_from(f)};
    }
    q.frequency = q.tx.tx_band;
    q.range = range_from(root);
    q.satellites = satellites_from(catalog, root);
    q.geofence = catalog.geofence;
    if (auto g = root.find("geofence")) q.geofence = json_io::geofence_from(*g);
    if (auto g = root.find("adjacency_guard_ghz")) {
        q.adjacency_guard_ghz = g->number();
        if (q.adjacency_guard_ghz < 0.0) g->fail("must be >= 0");
    }
    return q;
}

json query_echo(const Query& q) {
    json j{{"range", json_io::to_json(q.range)},
           {"frequency", {{"low_ghz", q.frequency.low_ghz}, {"high_ghz", q.frequency.high_ghz}}},
           {"location", {{"lat", q.tx.location.lat_deg}, {"lon", q.tx.location.lon_deg}}},
           {"satellites", q.satellites},
           {"geofence", json_io::to_json(q.geofence)},
           {"adjacency_guard_ghz", q.adjacency_guard_ghz}};
    if (q.ngci) j["ngci"] = *q.ngci;
    return j;
}

std::vector<MeasurementBand> overlapping_bands(const SatelliteRecord& rec, const Query& q) {
    std::vector<MeasurementBand> out;
    for (const auto& b : rec.spec.bands) {
        if (band_overlap(q.frequency, b, q.adjacency_guard_ghz)) out.push_back(b);
    }
    return out;
}

QueryResult run_query(const Catalog& catalog, const Query& q) {
    QueryResult r;
    std::vector<std::vector<DarkTimeWindow>> lists;
    for (const auto& id : q.satellites) {
        const SatelliteRecord& rec = lookup_satellite(catalog, id);
        const auto bands = overlapping_bands(rec, q);
        if (bands.empty()) continue;
        r.matched.push_back(id);
        auto& tagged = r.windows[id];
        for (const auto& band : bands) {
            for (auto& w : catalog_dark_windows(catalog, id, band, q.geofence, q.tx, q.range)) {
                tagged.push_back({std::move(w), band});
            }
        }
        std::stable_sort(tagged.begin(), tagged.end(), [](const TaggedWindow& a, const TaggedWindow& b) {
            return a.window.start < b.window.start;
        });
        std::vector<DarkTimeWindow> plain;
        for (const auto& t : tagged) plain.push_back(t.window);
        lists.push_back(std::move(plain));
    }
    r.merged = merge_windows(lists);
    r.report = availability(r.merged, q.range);
    return r;
}

json window_json(const TaggedWindow& t) {
    json j = json_io::to_json(t.window);
    j["band"] = json_io::to_json(t.band);
    return j;
}

json merged_json(const std::vector<MergedWindow>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back(json_io::to_json(w));
    return a;
}

json parse_body(std::string_view body) {
    if (body.empty()) throw Error(ErrorCode::SchemaViolation, "$: request body is empty");
    return json_io::parse_document(body, "request body");
}

// ---- GeoJSON ----------------------------------------------------------------

using Position = std::array<double, 2>;  // lon, lat
using Ring = std::vector<Position>;

long lon_band(double lon) { return static_cast<long>(std::floor((lon + 180.0) / 360.0)); }

// Longitudes made continuous along the sequence.
Ring unwrap(const std::vector<GeoPoint>& pts) {
    Ring out;
    for (const auto& p : pts) {
        double lon = p.lon_deg;
        if (!out.empty()) {
            while (lon - out.back()[0] > 180.0) lon -= 360.0;
            while (lon - out.back()[0] < -180.0) lon += 360.0;
        }
        out.push_back({lon, p.lat_deg});
    }
    return out;
}

json positions(const Ring& r) {
    json a = json::array();
    for (const auto& p : r) a.push_back({round6(p[0]), round6(p[1])});
    return a;
}

// Keeps the part of an open ring with sign * (lon - edge) <= 0.
Ring clip(const Ring& ring, double edge, double sign) {
    Ring out;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Position& a = ring[i];
        const Position& b = ring[(i + 1) % ring.size()];
        const bool a_in = sign * (a[0] - edge) <= 0.0;
        const bool b_in = sign * (b[0] - edge) <= 0.0;
        if (a_in) out.push_back(a);
        if (a_in != b_in) {
            const double f = (edge - a[0]) / (b[0] - a[0]);
            out.push_back({edge, a[1] + f * (b[1] - a[1])});
        }
    }
    return out;
}

double signed_area(const Ring& r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const auto& a = r[i];
        const auto& b = r[(i + 1) % r.size()];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return s / 2.0;
}

// Polygon (counter-clockwise exterior) or MultiPolygon split at the antimeridian.
json polygon_geometry(const std::vector<GeoPoint>& open_ring) {
    Ring u = unwrap(open_ring);
    if (signed_area(u) < 0.0) std::reverse(u.begin(), u.end());
    long kmin = lon_band(u.front()[0]), kmax = kmin;
    for (const auto& p : u) {
        kmin = std::min(kmin, lon_band(p[0]));
        kmax = std::max(kmax, lon_band(p[0]));
    }
    std::vector<Ring> pieces;
    for (long k = kmin; k <= kmax; ++k) {
        const double shift = 360.0 * static_cast<double>(k);
        Ring piece = clip(clip(u, 180.0 + shift, 1.0), -180.0 + shift, -1.0);
        if (piece.size() < 3) continue;
        for (auto& p : piece) p[0] -= shift;
        piece.push_back(piece.front());
        pieces.push_back(std::move(piece));
    }
    if (pieces.size() == 1) return {{"type", "Polygon"}, {"coordinates", json::array({positions(pieces[0])})}};
    json polys = json::array();
    for (const auto& p : pieces) polys.push_back(json::array({positions(p)}));
    return {{"type", "MultiPolygon"}, {"coordinates", polys}};
}

// Band of half-width `hw_km` around a polyline, as an open ring.
std::vector<GeoPoint> buffer_polyline(const std::vector<GeoPoint>& pts, double hw_km) {
    std::vector<GeoPoint> left, right;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double bearing = i + 1 < pts.size() ? initial_bearing_deg(pts[i], pts[i + 1])
                                                  : initial_bearing_deg(pts[i - 1], pts[i]);
        left.push_back(destination(pts[i], bearing - 90.0, hw_km));
        right.push_back(destination(pts[i], bearing + 90.0, hw_km));
    }
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

std::vector<GeoPoint> thin(const std::vector<GeoPoint>& pts, std::size_t max_points) {
    if (pts.size() <= max_points) return pts;
    std::vector<GeoPoint> out;
    const double step = static_cast<double>(pts.size() - 1) / static_cast<double>(max_points - 1);
    for (std::size_t i = 0; i < max_points; ++i) {
        out.push_back(pts[static_cast<std::size_t>(std::llround(static_cast<double>(i) * step))]);
    }
    return out;
}

json feature(json geometry, json properties) {
    return {{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(properties)}};
}

}  // namespace

namespace api {

std::string error_body(ErrorCode code, std::string_view message) {
    return render({{"error", {{"code", std::string(to_string(code))}, {"message", std::string(message)}}}});
}

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::TleChecksum:
        case ErrorCode::TleLength:
        case ErrorCode::TleFormat:
        case ErrorCode::TleCatalogMismatch:
        case ErrorCode::BeyondHorizon:
        case ErrorCode::UnknownBand:
        case ErrorCode::EmptyRange:
        case ErrorCode::EmptyPeriod:
        case ErrorCode::InvalidGeometry:
        case ErrorCode::SchemaViolation: return 400;
        case ErrorCode::NotFound: return 404;
        case ErrorCode::DuplicateSatellite: return 409;
        case ErrorCode::SourceUnavailable: return 502;
        case ErrorCode::StaleElements:
        case ErrorCode::Busy: return 503;
        case ErrorCode::DecayedOrbit:
        case ErrorCode::Io:
        case ErrorCode::Internal: return 500;
    }
    return 500;
}

std::string satellites(const Catalog& catalog) {
    json list = json::array();
    for (const auto& [id, rec] : catalog.satellites) {
        json bands = json::array();
        for (const auto& b : rec.spec.bands) bands.push_back(json_io::to_json(b));
        json s{{"id", id},
               {"norad_id", rec.norad_id},
               {"name", rec.spec.name},
               {"scan_type", std::string(to_string(rec.spec.scan_type))},
               {"scan_period_s", rec.spec.scan_period_s},
               {"open_loop", rec.spec.open_loop},
               {"bands", bands},
               {"element_sets", rec.history.size()},
               {"latest_epoch", format_iso8601(rec.latest().epoch)}};
        if (rec.last_fetch) s["last_fetch"] = format_iso8601(*rec.last_fetch);
        list.push_back(std::move(s));
    }
    return render({{"satellites", list}});
}

std::string darktimes(const Catalog& catalog, std::string_view body) {
    const json doc = parse_body(body);
    const Query q = parse_query(catalog, Node(doc, ""));
    const QueryResult r = run_query(catalog, q);
    json windows = json::object();
    for (const auto& [id, list] : r.windows) {
        json a = json::array();
        for (const auto& t : list) a.push_back(window_json(t));
        windows[id] = std::move(a);
    }
    return render({{"query", query_echo(q)},
                   {"matched_satellites", r.matched},
                   {"windows", windows},
                   {"merged", merged_json(r.merged)},
                   {"availability", json_io::to_json(r.report)}});
}

std::string availability(const Catalog& catalog, std::string_view body) {
    const json doc = parse_body(body);
    const Query q = parse_query(catalog, Node(doc, ""));
    const QueryResult r = run_query(catalog, q);
    json per = json::object();
    for (const auto& [id, list] : r.windows) {
        double total = 0.0;
        for (const auto& t : list) total += to_seconds(t.window.length());
        per[id] = {{"windows", list.size()}, {"dark_s", total}};
    }
    return render({{"query", query_echo(q)},
                   {"matched_satellites", r.matched},
                   {"per_satellite", per},
                   {"merged", merged_json(r.merged)},
                   {"availability", json_io::to_json(r.report)}});
}

std::string geofence(const Catalog& catalog, std::string_view body) {
    const json doc = parse_body(body);
    const Node root(doc, "");
    const Query q = parse_query(catalog, root);
    const std::string sat = root.at("satellite").string();
    const Node idx = root.at("traversal");
    const long traversal = idx.integer();
    if (traversal < 0) idx.fail("must be >= 0");
    if (std::find(q.satellites.begin(), q.satellites.end(), sat) == q.satellites.end()) {
        root.at("satellite").fail("not among the queried satellites");
    }
    Query single = q;
    single.satellites = {sat};
    const QueryResult r = run_query(catalog, single);
    const auto it = r.windows.find(sat);
    const std::size_t count = it == r.windows.end() ? 0 : it->second.size();
    if (static_cast<std::size_t>(traversal) >= count) {
        throw Error(ErrorCode::NotFound, "no traversal " + std::to_string(traversal) + " for " + sat + " (" +
                                             std::to_string(count) + " in range)");
    }
    const TaggedWindow& tw = it->second[static_cast<std::size_t>(traversal)];
    const DarkTimeWindow& w = tw.window;
    const SatelliteRecord& rec = lookup_satellite(catalog, sat);
    const RadiometerSpec& spec = rec.spec;
    const double hw = geofence_halfwidth(spec, tw.band, q.geofence);
    const Duration period = from_seconds(spec.scan_period_s);

    json features = json::array();
    SatelliteState mid_state;
    for (int k = 0; k < w.scanline_count; ++k) {
        const Instant t = w.start + k * period + period / 2;
        const auto tle = select_elements(catalog, sat, t);
        if (!tle) continue;
        const SatelliteState s = propagate(*tle, t);
        if (k == w.scanline_count / 2) mid_state = s;
        const SwathArc arc = scanline_arc(s, spec, tw.band, q.geofence);
        const bool guard = k < w.guard_scanlines || k >= w.scanline_count - w.guard_scanlines;
        features.push_back(feature(polygon_geometry(buffer_polyline(thin(arc.trace, 160), hw)),
                                   {{"role", guard ? "guard" : "center"},
                                    {"satellite", sat},
                                    {"scanline", k},
                                    {"time", format_iso8601(t)},
                                    {"half_width_km", hw}}));
    }

    // Two geofenced pixels across the scan, one half-width along the track.
    const Footprint& fov = spec.footprint(tw.band);
    const double along_half = q.geofence.pixel_scale * fov.along_km;
    const double across_bearing = spec.scan_type == ScanType::Conical
                                      ? initial_bearing_deg(q.tx.location, mid_state.subpoint)
                                      : ground_heading_deg(mid_state);
    std::vector<GeoPoint> box;
    double reach = 0.0;
    for (const auto& [sa, sb] : std::array<std::pair<double, double>, 4>{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}) {
        const GeoPoint p = destination(destination(q.tx.location, across_bearing, sa * hw),
                                       across_bearing + 90.0, sb * along_half);
        reach = std::max(reach, great_circle_km(q.tx.location, p));
        box.push_back(p);
    }
    features.push_back(feature(polygon_geometry(box), {{"role", "geofence-area"},
                                                       {"satellite", sat},
                                                       {"transmitter", {round6(q.tx.location.lon_deg),
                                                                        round6(q.tx.location.lat_deg)}},
                                                       {"geofenced_pixel_km", {{"along_scan", along_half},
                                                                               {"cross_scan", q.geofence.pixel_scale *
                                                                                                  fov.cross_km}}},
                                                       {"max_extent_km", reach}}));
    return render({{"type", "FeatureCollection"},
                   {"features", features},
                   {"window", window_json(tw)}});
}

std::string coastal_filter(const Catalog& catalog, std::string_view body) {
    const json doc = parse_body(body);
    const Node root(doc, "");
    root.object();
    const FrequencyRange freq = frequency_from(root.at("frequency"));
    const auto sats = satellites_from(catalog, root);
    GeofenceSpec gf = catalog.geofence;
    if (auto g = root.find("geofence")) gf = json_io::geofence_from(*g);

    std::vector<Transmitter> txs;
    if (auto list = root.find("transmitters")) {
        for (std::size_t i = 0; i < list->size(); ++i) txs.push_back(json_io::transmitter_from((*list)[i]));
    } else {
        for (const auto& [id, t] : catalog.transmitters) txs.push_back(t);
    }

    double threshold = -1.0;
    std::vector<std::string> matched;
    for (const auto& id : sats) {
        const auto& spec = lookup_satellite(catalog, id).spec;
        bool any = false;
        for (const auto& b : spec.bands) {
            if (!band_overlap(freq, b)) continue;
            threshold = std::max(threshold, coastal_threshold_km(spec, b, gf));
            any = true;
        }
        if (any) matched.push_back(id);
    }
    if (matched.empty()) root.at("frequency").fail("no selected satellite measures in this range");
    if (catalog.coastline.empty()) throw Error(ErrorCode::InvalidGeometry, "catalog has no coastline loaded");

    json coastal = json::array(), inland = json::array();
    for (const auto& t : txs) {
        const double d = distance_to_coastline_km(catalog.coastline, t.location);
        json j = json_io::to_json(t);
        j["distance_km"] = round6(d);
        (d <= threshold ? coastal : inland).push_back(std::move(j));
    }
    return render({{"threshold_km", threshold},
                   {"matched_satellites", matched},
                   {"coastal", coastal},
                   {"excluded", inland}});
}

std::string mitigation(std::string_view body) {
    const json doc = parse_body(body);
    const Node root(doc, "");
    root.object();
    const DarkTimeWindow w = json_io::window_from(root.at("window"));
    std::vector<CellSite> sites;
    const Node list = root.at("sites");
    for (std::size_t i = 0; i < list.size(); ++i) sites.push_back(json_io::site_from(list[i]));
    const TrafficProfile profile =
        root.find("profile") ? json_io::profile_from(root.at("profile")) : TrafficProfile::defaults();
    const MitigationPolicy policy = root.find("policy") ? json_io::policy_from(root.at("policy")) : MitigationPolicy{};
    return render(json_io::to_json(plan_mitigation(w, sites, profile, policy)));
}

}  // namespace api

Service::Service(std::shared_ptr<CatalogStore> store, ServiceOptions options)
    : store_(std::move(store)), options_(options), slots_(options.max_concurrent_computations) {}

HttpResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) {
    using Handler = std::string (*)(const Catalog&, std::string_view);
    static const std::map<std::string_view, Handler> posts{
        {"/v1/darktimes", &api::darktimes},
        {"/v1/availability", &api::availability},
        {"/v1/geofence", &api::geofence},
        {"/v1/coastal-filter", &api::coastal_filter},
        {"/v1/mitigation", [](const Catalog&, std::string_view b) { return api::mitigation(b); }},
    };
    try {
        if (path == "/v1/satellites") {
            if (method != "GET") return {405, api::error_body(ErrorCode::InvalidArgument, "use GET")};
            return {200, api::satellites(*store_->snapshot())};
        }
        const auto it = posts.find(path);
        if (it == posts.end()) {
            return {404, api::error_body(ErrorCode::NotFound, "no route " + std::string(path))};
        }
        if (method != "POST") return {405, api::error_body(ErrorCode::InvalidArgument, "use POST")};
        if (!slots_.try_acquire_for(options_.queue_wait)) {
            return {503, api::error_body(ErrorCode::Busy, "too many computations in progress")};
        }
        struct Release {
            std::counting_semaphore<1024>& s;
            ~Release() { s.release(); }
        } release{slots_};
        const auto snapshot = store_->snapshot();
        return {200, it->second(*snapshot, body)};
    } catch (const Error& e) {
        return {api::http_status(e.code()), api::error_body(e.code(), e.what())};
    } catch (const std::exception&) {
        return {500, api::error_body(ErrorCode::Internal, "internal error")};
    }
}

}  // namespace rgss
