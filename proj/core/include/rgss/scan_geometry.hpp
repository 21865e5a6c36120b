#pragma once

#include <string>
#include <vector>

#include "rgss/geo.hpp"
#include "rgss/orbit.hpp"
#include "rgss/time.hpp"

namespace rgss {

enum class ScanType { Conical, CrossTrack };
std::string_view to_string(ScanType t);

struct MeasurementBand {
    double center_ghz = 0.0;
    double width_ghz = 0.0;

    double low_ghz() const { return center_ghz - width_ghz / 2.0; }
    double high_ghz() const { return center_ghz + width_ghz / 2.0; }

    friend bool operator==(const MeasurementBand&, const MeasurementBand&) = default;
};

/// Half-power beam footprint on the ground. `along_km` is measured along the
/// scan direction, `cross_km` perpendicular to it.
struct Footprint {
    double along_km = 0.0;
    double cross_km = 0.0;

    friend bool operator==(const Footprint&, const Footprint&) = default;
};

struct RadiometerSpec {
    std::string name;
    ScanType scan_type = ScanType::Conical;
    double off_nadir_deg = 0.0;  // conical: cone half-angle
    double max_scan_deg = 0.0;   // cross-track: largest off-nadir angle
    double scan_period_s = 0.0;
    double active_scan_deg = 0.0;  // full active sweep
    bool open_loop = true;
    std::vector<MeasurementBand> bands;
    std::vector<Footprint> fov;  // parallel to `bands`

    /// Throws Error(SchemaViolation) naming the offending field, prefixed
    /// with `path` (e.g. "satellites[2].").
    void validate(std::string_view path = {}) const;

    /// Footprint of the listed band matching `band` exactly; Error(UnknownBand) otherwise.
    const Footprint& footprint(const MeasurementBand& band) const;

    friend bool operator==(const RadiometerSpec&, const RadiometerSpec&) = default;
};

struct GeofenceSpec {
    double pixel_scale = 2.0;  // geofenced pixel = pixel_scale x FWHM
    int guard_pixels = 1;
    int open_loop_guard_scanlines = 1;

    void validate(std::string_view path = {}) const;

    friend bool operator==(const GeofenceSpec&, const GeofenceSpec&) = default;
};

/// Ground trace of one scan line. The trace is a dense polyline of
/// footprint centres; the geometric description next to it is what the
/// distance test uses, so results do not depend on sampling density.
struct SwathArc {
    Instant mid_time;
    std::vector<GeoPoint> trace;
    double half_width_km = 0.0;

    ScanType scan_type = ScanType::Conical;
    GeoPoint subpoint;
    double heading_deg = 0.0;       // ground track bearing
    double radius_rad = 0.0;        // conical: angular radius of the scan circle
    double half_span_rad = 0.0;     // conical: half the swept azimuth incl. guard extension
    GeoPoint end_a;                 // first and last trace points (extended)
    GeoPoint end_b;
};

/// Ground bearing of the sub-satellite track, degrees clockwise from north.
double ground_heading_deg(const SatelliteState& state);

/// Largest off-nadir angle that still meets the sphere, degrees.
double horizon_limit_deg(double altitude_km);

/// Earth central angle (radians) between subpoint and the boresight hit
/// point for a given off-nadir angle.
double ground_central_angle(double altitude_km, double off_nadir_deg);

/// Nearer intersection of the boresight with the sphere. `azimuth_deg` is
/// measured clockwise from the along-track direction.
GeoPoint boresight_ground_point(const SatelliteState& state, double azimuth_deg, double off_nadir_deg);

/// Cross-scan half-width of the geofence around a scan line:
/// half a geofenced pixel plus the guard pixels.
double geofence_halfwidth(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf);

/// Extent of `pixels` adjacent geofenced pixels measured across the ground
/// track, for a footprint at `scan_azimuth_deg` from the along-track axis.
/// The pixel ellipse rotates with the scan, so the extent shrinks from the
/// along-scan size at the centre towards the cross-scan size at the edges.
double geofenced_extent_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf,
                           double scan_azimuth_deg, int pixels = 2);

/// Largest `geofenced_extent_km` over the active scan.
double max_geofenced_extent_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf,
                               int pixels = 2);

/// Fraction of a one-dimensional Gaussian beam's power inside a total width
/// of `fwhm_multiples` x FWHM.
double beam_containment(double fwhm_multiples);

SwathArc scanline_arc(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                      const GeofenceSpec& gf);

/// Same geometry as `scanline_arc` without materialising the polyline.
SwathArc scanline_arc_geometry(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                               const GeofenceSpec& gf);

/// Great-circle distance from `p` to the (extended) trace of `arc`.
double distance_to_arc_km(const SwathArc& arc, GeoPoint p);

}  // namespace rgss
