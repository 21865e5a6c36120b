#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rgss/darktime.hpp"
#include "rgss/error.hpp"

namespace rgss {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::InvalidGeometry, path + ": " + what);
}

GeoPoint position(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) {
        bad(path, "position must be [lon, lat]");
    }
    const double lon = j[0].get<double>();
    const double lat = j[1].get<double>();
    if (std::abs(lat) > 90.0 || std::abs(lon) > 180.0) bad(path, "position out of range");
    return {lat, normalize_lon(lon)};
}

std::vector<GeoPoint> line_string(const json& j, const std::string& path, std::size_t min_points) {
    if (!j.is_array()) bad(path, "expected an array of positions");
    std::vector<GeoPoint> pts;
    pts.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) pts.push_back(position(j[i], path + "[" + std::to_string(i) + "]"));
    if (pts.size() < min_points) bad(path, "needs at least " + std::to_string(min_points) + " positions");
    return pts;
}

void polygon(const json& rings, const std::string& path, CoastlineSet& out) {
    if (!rings.is_array() || rings.empty()) bad(path, "polygon needs at least one ring");
    for (std::size_t r = 0; r < rings.size(); ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        auto ring = line_string(rings[r], rp, 4);
        if (!(ring.front() == ring.back())) bad(rp, "linear ring is not closed");
        out.lines.push_back(std::move(ring));
    }
}

void geometry(const json& g, const std::string& path, CoastlineSet& out) {
    if (!g.is_object() || !g.contains("type")) bad(path, "geometry object without type");
    const std::string type = g["type"].get<std::string>();
    if (type == "GeometryCollection") {
        const auto& gs = g.at("geometries");
        for (std::size_t i = 0; i < gs.size(); ++i) geometry(gs[i], path + ".geometries[" + std::to_string(i) + "]", out);
        return;
    }
    if (!g.contains("coordinates")) bad(path, "geometry without coordinates");
    const json& c = g["coordinates"];
    const std::string cp = path + ".coordinates";
    if (type == "LineString") {
        out.lines.push_back(line_string(c, cp, 2));
    } else if (type == "MultiLineString") {
        if (!c.is_array()) bad(cp, "expected an array of line strings");
        for (std::size_t i = 0; i < c.size(); ++i) out.lines.push_back(line_string(c[i], cp + "[" + std::to_string(i) + "]", 2));
    } else if (type == "Polygon") {
        polygon(c, cp, out);
    } else if (type == "MultiPolygon") {
        if (!c.is_array()) bad(cp, "expected an array of polygons");
        for (std::size_t i = 0; i < c.size(); ++i) polygon(c[i], cp + "[" + std::to_string(i) + "]", out);
    } else {
        bad(path, "unsupported geometry type " + type);
    }
}

void any(const json& j, const std::string& path, CoastlineSet& out) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) bad(path, "not a GeoJSON object");
    const std::string type = j["type"].get<std::string>();
    if (type == "FeatureCollection") {
        const auto& fs = j.at("features");
        for (std::size_t i = 0; i < fs.size(); ++i) any(fs[i], path + ".features[" + std::to_string(i) + "]", out);
    } else if (type == "Feature") {
        if (j.contains("geometry") && !j["geometry"].is_null()) geometry(j["geometry"], path + ".geometry", out);
    } else {
        geometry(j, path, out);
    }
}

}  // namespace

CoastlineSet parse_coastline_geojson(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidGeometry, std::string("coastline is not valid JSON: ") + e.what());
    }
    CoastlineSet out;
    try {
        any(doc, "$", out);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidGeometry, std::string("malformed coastline GeoJSON: ") + e.what());
    }
    if (out.empty()) throw Error(ErrorCode::InvalidGeometry, "coastline contains no line geometry");
    return out;
}

CoastlineSet load_coastline_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read coastline file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_coastline_geojson(ss.str());
}

}  // namespace rgss
