#include "rgss/scan_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rgss/error.hpp"

namespace rgss {

namespace {

constexpr double kMaxStepDeg = 0.5;

[[noreturn]] void schema_error(std::string_view path, const char* field, const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, std::string(path) + field + ": " + what);
}

double wrap_pi(double a) {
    a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a - std::numbers::pi;
}

// Horizontal unit vectors at the subpoint: along-track and to its right.
void track_frame(const SatelliteState& s, Vec3& up, Vec3& fwd, Vec3& right) {
    up = normalized(s.position_ecef_km);
    const Vec3 v = s.velocity_ecef_km_s;
    fwd = normalized(v - dot(v, up) * up);
    right = cross(fwd, up);
}

double pixel_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf) {
    const Footprint& f = spec.footprint(band);
    return gf.pixel_scale * std::min(f.along_km, f.cross_km);
}

}  // namespace

std::string_view to_string(ScanType t) { return t == ScanType::Conical ? "conical" : "cross_track"; }

void RadiometerSpec::validate(std::string_view path) const {
    if (!(scan_period_s > 0.0)) schema_error(path, "scan_period_s", "must be > 0");
    if (!(active_scan_deg > 0.0)) schema_error(path, "active_scan_deg", "must be > 0");
    if (scan_type == ScanType::Conical) {
        if (active_scan_deg > 360.0) schema_error(path, "active_scan_deg", "must be <= 360 for conical scans");
        if (!(off_nadir_deg > 0.0 && off_nadir_deg < 90.0)) schema_error(path, "off_nadir_deg", "must be in (0, 90)");
    } else {
        if (active_scan_deg > 180.0) schema_error(path, "active_scan_deg", "must be <= 180 for cross-track scans");
        if (!(max_scan_deg > 0.0 && max_scan_deg < 90.0)) schema_error(path, "max_scan_deg", "must be in (0, 90)");
        if (active_scan_deg / 2.0 > max_scan_deg + 1e-9) {
            schema_error(path, "active_scan_deg", "half the active scan exceeds max_scan_deg");
        }
    }
    if (fov.size() != bands.size()) schema_error(path, "fov", "needs one entry per band");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const std::string idx = "[" + std::to_string(i) + "]";
        if (!(bands[i].width_ghz > 0.0)) schema_error(path, ("bands" + idx + ".width_ghz").c_str(), "must be > 0");
        if (!(bands[i].center_ghz > 0.0)) schema_error(path, ("bands" + idx + ".center_ghz").c_str(), "must be > 0");
        if (!(fov[i].along_km > 0.0)) schema_error(path, ("fov" + idx + ".along_km").c_str(), "must be > 0");
        if (!(fov[i].cross_km > 0.0)) schema_error(path, ("fov" + idx + ".cross_km").c_str(), "must be > 0");
    }
}

const Footprint& RadiometerSpec::footprint(const MeasurementBand& band) const {
    for (std::size_t i = 0; i < bands.size() && i < fov.size(); ++i) {
        if (bands[i] == band) return fov[i];
    }
    throw Error(ErrorCode::UnknownBand, name + " has no band at " + std::to_string(band.center_ghz) + " GHz");
}

void GeofenceSpec::validate(std::string_view path) const {
    if (!(pixel_scale >= 1.0)) schema_error(path, "pixel_scale", "must be >= 1");
    if (guard_pixels < 0) schema_error(path, "guard_pixels", "must be >= 0");
    if (open_loop_guard_scanlines < 0) schema_error(path, "open_loop_guard_scanlines", "must be >= 0");
}

double ground_heading_deg(const SatelliteState& state) {
    Vec3 up, fwd, right;
    track_frame(state, up, fwd, right);
    const Vec3 east = normalized(cross(Vec3{0.0, 0.0, 1.0}, up));
    const Vec3 north = cross(up, east);
    double h = std::atan2(dot(fwd, east), dot(fwd, north)) * kRadToDeg;
    if (h < 0.0) h += 360.0;
    return h;
}

double horizon_limit_deg(double altitude_km) {
    return std::asin(kEarthRadiusKm / (kEarthRadiusKm + altitude_km)) * kRadToDeg;
}

double ground_central_angle(double altitude_km, double off_nadir_deg) {
    const double theta = std::abs(off_nadir_deg) * kDegToRad;
    const double s = (kEarthRadiusKm + altitude_km) / kEarthRadiusKm * std::sin(theta);
    if (s >= 1.0) {
        throw Error(ErrorCode::BeyondHorizon, "off-nadir angle " + std::to_string(off_nadir_deg) +
                                                  " deg misses the Earth from " + std::to_string(altitude_km) + " km");
    }
    return std::asin(s) - theta;
}

GeoPoint boresight_ground_point(const SatelliteState& state, double azimuth_deg, double off_nadir_deg) {
    Vec3 up, fwd, right;
    track_frame(state, up, fwd, right);
    const double psi = azimuth_deg * kDegToRad;
    const double theta = off_nadir_deg * kDegToRad;
    const Vec3 horiz = std::cos(psi) * fwd + std::sin(psi) * right;
    const Vec3 d = std::cos(theta) * (-1.0 * up) + std::sin(theta) * horiz;
    const Vec3& r = state.position_ecef_km;
    const double b = dot(r, d);
    const double c = dot(r, r) - kEarthRadiusKm * kEarthRadiusKm;
    const double disc = b * b - c;
    if (disc < 0.0 || off_nadir_deg >= horizon_limit_deg(norm(r) - kEarthRadiusKm)) {
        throw Error(ErrorCode::BeyondHorizon, "boresight at " + std::to_string(off_nadir_deg) + " deg off nadir misses the Earth");
    }
    const double s = -b - std::sqrt(disc);
    return from_vector(r + s * d);
}

double geofence_halfwidth(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf) {
    const double pixel = gf.pixel_scale * spec.footprint(band).cross_km;
    return pixel / 2.0 + gf.guard_pixels * pixel;
}

double geofenced_extent_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf,
                           double scan_azimuth_deg, int pixels) {
    const Footprint& f = spec.footprint(band);
    const double phi = scan_azimuth_deg * kDegToRad;
    const double a = gf.pixel_scale * f.along_km * std::cos(phi);
    const double c = gf.pixel_scale * f.cross_km * std::sin(phi);
    return pixels * std::hypot(a, c);
}

double max_geofenced_extent_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf,
                               int pixels) {
    if (spec.scan_type == ScanType::CrossTrack) {
        // Along-scan axis stays across track for every footprint.
        return geofenced_extent_km(spec, band, gf, 0.0, pixels);
    }
    const double half = std::min(spec.active_scan_deg / 2.0, 180.0);
    double best = 0.0;
    for (double az = 0.0; az <= half + 1e-9; az += 0.1) {
        best = std::max(best, geofenced_extent_km(spec, band, gf, az, pixels));
    }
    return best;
}

double beam_containment(double fwhm_multiples) {
    if (std::isinf(fwhm_multiples)) return 1.0;
    // sigma = FWHM / (2 sqrt(2 ln 2)); half-width m*FWHM/2 is m*sqrt(2 ln 2) sigma.
    return std::erf(fwhm_multiples * std::sqrt(std::log(2.0)));
}

namespace {

SwathArc make_arc(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                  const GeofenceSpec& gf, bool with_trace) {
    SwathArc arc;
    arc.mid_time = state.time;
    arc.scan_type = spec.scan_type;
    arc.subpoint = state.subpoint;
    arc.heading_deg = ground_heading_deg(state);
    arc.half_width_km = geofence_halfwidth(spec, band, gf);

    const double ext_km = gf.guard_pixels * gf.pixel_scale * spec.footprint(band).along_km;
    const double max_spacing_km = pixel_km(spec, band, gf) / 2.0;

    if (spec.scan_type == ScanType::Conical) {
        const double rho = ground_central_angle(state.altitude_km, spec.off_nadir_deg);
        const double circle_r_km = kEarthRadiusKm * std::sin(rho);
        const double half = std::min(spec.active_scan_deg / 2.0 * kDegToRad + ext_km / circle_r_km,
                                     std::numbers::pi);
        arc.radius_rad = rho;
        arc.half_span_rad = half;
        if (!with_trace) {
            arc.end_a = destination(arc.subpoint, arc.heading_deg - half * kRadToDeg, kEarthRadiusKm * rho);
            arc.end_b = destination(arc.subpoint, arc.heading_deg + half * kRadToDeg, kEarthRadiusKm * rho);
            return arc;
        }
        const double span_km = 2.0 * half * circle_r_km;
        const int n = std::max({2, static_cast<int>(std::ceil(2.0 * half * kRadToDeg / kMaxStepDeg)),
                                static_cast<int>(std::ceil(span_km / max_spacing_km))});
        arc.trace.reserve(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double psi = -half + 2.0 * half * i / n;
            arc.trace.push_back(destination(arc.subpoint, arc.heading_deg + psi * kRadToDeg, kEarthRadiusKm * rho));
        }
    } else {
        const double edge = spec.active_scan_deg / 2.0;
        const double reach_km = kEarthRadiusKm * ground_central_angle(state.altitude_km, edge) + ext_km;
        if (!with_trace) {
            arc.end_a = destination(arc.subpoint, arc.heading_deg - 90.0, reach_km);
            arc.end_b = destination(arc.subpoint, arc.heading_deg + 90.0, reach_km);
            return arc;
        }
        const int n = std::max({2, static_cast<int>(std::ceil(spec.active_scan_deg / kMaxStepDeg)),
                                static_cast<int>(std::ceil(2.0 * reach_km / max_spacing_km))});
        arc.trace.reserve(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double along = -reach_km + 2.0 * reach_km * i / n;
            arc.trace.push_back(along < 0.0 ? destination(arc.subpoint, arc.heading_deg - 90.0, -along)
                                            : destination(arc.subpoint, arc.heading_deg + 90.0, along));
        }
    }
    arc.end_a = arc.trace.front();
    arc.end_b = arc.trace.back();
    return arc;
}

}  // namespace

SwathArc scanline_arc(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                      const GeofenceSpec& gf) {
    return make_arc(state, spec, band, gf, true);
}

SwathArc scanline_arc_geometry(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                               const GeofenceSpec& gf) {
    return make_arc(state, spec, band, gf, false);
}

double distance_to_arc_km(const SwathArc& arc, GeoPoint p) {
    if (arc.scan_type == ScanType::CrossTrack) {
        return point_to_arc_km(p, arc.end_a, arc.end_b);
    }
    const double delta = central_angle(arc.subpoint, p);
    if (arc.half_span_rad >= std::numbers::pi) {
        return kEarthRadiusKm * std::abs(delta - arc.radius_rad);
    }
    const double beta = wrap_pi((initial_bearing_deg(arc.subpoint, p) - arc.heading_deg) * kDegToRad);
    if (std::abs(beta) <= arc.half_span_rad || delta < 1e-9) {
        return kEarthRadiusKm * std::abs(delta - arc.radius_rad);
    }
    return std::min(great_circle_km(p, arc.end_a), great_circle_km(p, arc.end_b));
}

}  // namespace rgss
