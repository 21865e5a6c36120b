#pragma once

#include <array>
#include <cmath>
#include <numbers>

// Spherical-Earth geodesy. All downstream geometry (subpoints, scan arcs,
// geofences, coastline distances) uses a sphere of radius 6371.0 km. The
// ellipsoidal error is a few km at most, well inside the one-pixel guard
// band, so nothing here models flattening.

namespace rgss {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return s * a; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

/// Geodetic (here: spherical) position in degrees. Longitude in (-180, 180].
struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

double normalize_lon(double lon_deg);

/// Unit vector of a point on the sphere (earth-fixed frame).
Vec3 to_unit_vector(GeoPoint p);
GeoPoint from_vector(Vec3 v);

/// Central angle in radians between two points.
double central_angle(GeoPoint a, GeoPoint b);
double great_circle_km(GeoPoint a, GeoPoint b);

/// Initial bearing from `a` toward `b`, degrees clockwise from north in [0, 360).
double initial_bearing_deg(GeoPoint a, GeoPoint b);

/// Point reached travelling `distance_km` along the great circle leaving
/// `origin` at `bearing_deg`.
GeoPoint destination(GeoPoint origin, double bearing_deg, double distance_km);

/// Shortest distance (km) from `p` to the minor great-circle arc `a`-`b`.
double point_to_arc_km(GeoPoint p, GeoPoint a, GeoPoint b);

}  // namespace rgss
