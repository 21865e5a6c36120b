#include "rgss/geo.hpp"

#include <algorithm>

namespace rgss {

double normalize_lon(double lon_deg) {
    double lon = std::fmod(lon_deg, 360.0);
    if (lon <= -180.0) lon += 360.0;
    if (lon > 180.0) lon -= 360.0;
    return lon;
}

Vec3 to_unit_vector(GeoPoint p) {
    const double lat = p.lat_deg * kDegToRad;
    const double lon = p.lon_deg * kDegToRad;
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

GeoPoint from_vector(Vec3 v) {
    const double r = norm(v);
    return {std::asin(std::clamp(v.z / r, -1.0, 1.0)) * kRadToDeg, normalize_lon(std::atan2(v.y, v.x) * kRadToDeg)};
}

double central_angle(GeoPoint a, GeoPoint b) {
    // atan2 form stays accurate for both tiny and near-antipodal separations.
    const Vec3 ua = to_unit_vector(a);
    const Vec3 ub = to_unit_vector(b);
    return std::atan2(norm(cross(ua, ub)), dot(ua, ub));
}

double great_circle_km(GeoPoint a, GeoPoint b) { return kEarthRadiusKm * central_angle(a, b); }

double initial_bearing_deg(GeoPoint a, GeoPoint b) {
    const double lat1 = a.lat_deg * kDegToRad;
    const double lat2 = b.lat_deg * kDegToRad;
    const double dlon = (b.lon_deg - a.lon_deg) * kDegToRad;
    const double y = std::sin(dlon) * std::cos(lat2);
    const double x = std::cos(lat1) * std::sin(lat2) - std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
    double brg = std::atan2(y, x) * kRadToDeg;
    if (brg < 0.0) brg += 360.0;
    return brg;
}

GeoPoint destination(GeoPoint origin, double bearing_deg, double distance_km) {
    const double delta = distance_km / kEarthRadiusKm;
    const double theta = bearing_deg * kDegToRad;
    const double lat1 = origin.lat_deg * kDegToRad;
    const double lon1 = origin.lon_deg * kDegToRad;
    const double sin_lat2 = std::sin(lat1) * std::cos(delta) + std::cos(lat1) * std::sin(delta) * std::cos(theta);
    const double lat2 = std::asin(std::clamp(sin_lat2, -1.0, 1.0));
    const double lon2 = lon1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                                          std::cos(delta) - std::sin(lat1) * sin_lat2);
    return {lat2 * kRadToDeg, normalize_lon(lon2 * kRadToDeg)};
}

double point_to_arc_km(GeoPoint p, GeoPoint a, GeoPoint b) {
    const Vec3 up = to_unit_vector(p);
    const Vec3 ua = to_unit_vector(a);
    const Vec3 ub = to_unit_vector(b);
    const Vec3 n = cross(ua, ub);
    const double n_len = norm(n);
    const double end_dist = std::min(great_circle_km(p, a), great_circle_km(p, b));
    if (n_len < 1e-12) {
        return end_dist;  // degenerate segment
    }
    const Vec3 nh = (1.0 / n_len) * n;
    // Foot of the perpendicular lies within the arc iff it is on the a->b side
    // of both end meridians.
    const Vec3 foot = up - dot(up, nh) * nh;
    if (norm(foot) < 1e-12) {
        return end_dist;  // p is a pole of the great circle
    }
    const Vec3 fh = normalized(foot);
    const bool within = dot(cross(ua, fh), nh) >= 0.0 && dot(cross(fh, ub), nh) >= 0.0;
    if (!within) {
        return end_dist;
    }
    const double cross_track = std::asin(std::clamp(std::abs(dot(up, nh)), 0.0, 1.0));
    return kEarthRadiusKm * cross_track;
}

}  // namespace rgss
