#pragma once

#include <string>

#include "rgss/geo.hpp"
#include "rgss/orbit.hpp"
#include "rgss/scan_geometry.hpp"
#include "support/sgp4_vectors.hpp"

namespace rgss::testing {

inline std::string data_root() { return RGSS_DATA_DIR; }

inline TwoLineElements fixture_tle(int norad_id) {
    return parse_tle(read_file(data_root() + "/tles/" + std::to_string(norad_id) + ".tle"));
}

inline const MeasurementBand kSstBand{7.3, 0.35};

// Mirrors the geometry and SST band of the shipped catalog entry (checked in test_catalog).
inline RadiometerSpec amsr2_spec() {
    RadiometerSpec s;
    s.name = "AMSR2";
    s.scan_type = ScanType::Conical;
    s.off_nadir_deg = 47.5;
    s.scan_period_s = 1.5;
    s.active_scan_deg = 122.0;
    s.open_loop = true;
    s.bands = {{6.925, 0.35}, kSstBand};
    s.fov = {{45.0, 7.0}, {45.0, 7.0}};
    return s;
}

inline RadiometerSpec atms_spec() {
    RadiometerSpec s;
    s.name = "ATMS";
    s.scan_type = ScanType::CrossTrack;
    s.max_scan_deg = 52.725;
    s.scan_period_s = 8.0 / 3.0;
    s.active_scan_deg = 105.45;
    s.open_loop = true;
    s.bands = {{23.8, 0.27}};
    s.fov = {{74.8, 74.8}};
    return s;
}

/// Synthetic state over `p` at `altitude_km`, moving on `heading_deg`.
inline SatelliteState state_over(GeoPoint p, double altitude_km, double heading_deg = 0.0) {
    const Vec3 up = to_unit_vector(p);
    Vec3 east = cross(Vec3{0.0, 0.0, 1.0}, up);
    if (norm(east) < 1e-12) east = {0.0, 1.0, 0.0};
    east = normalized(east);
    const Vec3 north = cross(up, east);
    const double h = heading_deg * kDegToRad;
    SatelliteState s;
    s.position_ecef_km = (kEarthRadiusKm + altitude_km) * up;
    s.velocity_ecef_km_s = 7.5 * (std::cos(h) * north + std::sin(h) * east);
    s.subpoint = from_vector(s.position_ecef_km);
    s.altitude_km = altitude_km;
    return s;
}

inline double polyline_km(const std::vector<GeoPoint>& pts) {
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += great_circle_km(pts[i - 1], pts[i]);
    return total;
}

}  // namespace rgss::testing
