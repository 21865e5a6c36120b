#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgss/geo.hpp"
#include "rgss/orbit.hpp"
#include "rgss/scan_geometry.hpp"
#include "rgss/time.hpp"

namespace rgss {

struct FrequencyRange {
    double low_ghz = 0.0;
    double high_ghz = 0.0;

    double width_ghz() const { return high_ghz - low_ghz; }

    friend bool operator==(const FrequencyRange&, const FrequencyRange&) = default;
};

struct Transmitter {
    std::string id;  // NGCI or synthetic id; case-sensitive
    GeoPoint location;
    FrequencyRange tx_band;

    /// Throws Error(InvalidArgument). Normalises nothing; call `normalized()` first.
    void validate() const;
    Transmitter normalized() const;

    friend bool operator==(const Transmitter&, const Transmitter&) = default;
};

struct DarkTimeWindow {
    std::string satellite;
    Instant start;
    Instant end;
    int scanline_count = 0;   // core + guard lines
    int guard_scanlines = 0;  // per side
    double scan_period_s = 0.0;
    Direction direction = Direction::Ascending;

    int core_scanlines() const { return scanline_count - 2 * guard_scanlines; }
    Duration length() const { return end - start; }
};

/// A piece of the union of windows across satellites.
struct MergedWindow {
    Instant start;
    Instant end;
    std::vector<std::string> satellites;  // sorted, unique

    Duration length() const { return end - start; }
};

struct AvailabilityReport {
    TimeInterval period;
    std::vector<MergedWindow> windows;  // clipped to the period, disjoint, ordered
    double total_dark_s = 0.0;
    double availability = 1.0;
};

struct DarkTimeOptions {
    PropagationOptions propagation;
    /// Upper bound on how fast the distance to the geofence can change,
    /// used for adaptive stepping (km/s). Ground speed, heading rotation
    /// near the poles and Earth rotation together stay below this.
    double max_closing_speed_km_s = 20.0;
    /// Scan-line grid origin; defaults to the range start. Callers that split
    /// one query into segments pass the query start so the grids line up.
    std::optional<Instant> grid_origin;
};

/// Open-loop specs test against the full active arc; closed-loop specs use
/// the same arc (azimuth restriction is not modelled).
bool scanline_is_dark(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                      const GeofenceSpec& gf, const Transmitter& tx);

/// Furthest ground distance from the subpoint at which this scan line can
/// still darken a transmitter. Used to size the coarse pass search.
double geofence_reach_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf,
                         double altitude_km);

/// Dark-time windows for one satellite and one transmitter. The scan-line
/// grid is anchored at `range.start` (or `options.grid_origin`); every line whose
/// duration touches a dark instant belongs to the core, open-loop specs add
/// `open_loop_guard_scanlines` whole lines on each side.
std::vector<DarkTimeWindow> compute_dark_windows(const TwoLineElements& tle, const RadiometerSpec& spec,
                                                 const MeasurementBand& band, const GeofenceSpec& gf,
                                                 const Transmitter& tx, TimeInterval range,
                                                 std::string_view satellite_id = {},
                                                 const DarkTimeOptions& options = {});

/// Interval union over any number of per-satellite lists.
std::vector<MergedWindow> merge_windows(const std::vector<std::vector<DarkTimeWindow>>& lists);
std::vector<MergedWindow> merge_windows(std::vector<MergedWindow> windows);

/// Throws Error(EmptyPeriod) when the period has no length. Windows are
/// merged and clipped to the period first.
AvailabilityReport availability(const std::vector<MergedWindow>& windows, TimeInterval period);

/// True iff `tx_band` widened by `adjacency_guard_ghz` on both sides overlaps
/// the measurement band with positive width. Touching edges do not overlap.
bool band_overlap(FrequencyRange tx_band, const MeasurementBand& band, double adjacency_guard_ghz = 0.0);

/// Coastline as a set of polylines (polygon rings are closed polylines).
struct CoastlineSet {
    std::vector<std::vector<GeoPoint>> lines;

    bool empty() const { return lines.empty(); }
};

/// Reads RFC 7946 LineString / MultiLineString / Polygon / MultiPolygon
/// geometries, bare or inside Features and FeatureCollections.
/// Throws Error(InvalidGeometry).
CoastlineSet parse_coastline_geojson(std::string_view text);
CoastlineSet load_coastline_file(const std::string& path);

double distance_to_coastline_km(const CoastlineSet& coast, GeoPoint p);

/// Coastal-zone threshold: the widest two-pixel geofenced extent over the scan.
double coastal_threshold_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf);

/// Transmitters within `coastal_threshold_km` of the coastline (ties kept).
std::vector<Transmitter> coastal_filter(const std::vector<Transmitter>& transmitters, const CoastlineSet& coast,
                                        const RadiometerSpec& spec, const MeasurementBand& band,
                                        const GeofenceSpec& gf);

}  // namespace rgss
