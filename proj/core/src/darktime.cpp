#include "rgss/darktime.hpp"

#include <algorithm>
#include <cmath>

#include "rgss/error.hpp"

namespace rgss {

namespace {

constexpr double kMu = 398600.8;  // km^3/s^2, WGS-72 like the element sets
constexpr double kReachMarginKm = 50.0;
const Duration kMinStep = std::chrono::milliseconds(10);
const Duration kEdgeTolerance = std::chrono::milliseconds(1);

double apogee_altitude_km(const TwoLineElements& tle) {
    const double n = tle.mean_motion_rev_per_day * 2.0 * std::numbers::pi / 86400.0;
    const double a = std::cbrt(kMu / (n * n));
    return a * (1.0 + tle.eccentricity) - kEarthRadiusKm;
}

struct CoreRange {
    long first;
    long last;
};

}  // namespace

void Transmitter::validate() const {
    if (!(std::abs(location.lat_deg) <= 90.0)) {
        throw Error(ErrorCode::InvalidArgument, "transmitter " + id + ": latitude out of range");
    }
    if (!(location.lon_deg > -180.0 && location.lon_deg <= 180.0)) {
        throw Error(ErrorCode::InvalidArgument, "transmitter " + id + ": longitude not normalised");
    }
    if (!(tx_band.width_ghz() > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "transmitter " + id + ": band width must be > 0");
    }
}

Transmitter Transmitter::normalized() const {
    Transmitter t = *this;
    t.location.lon_deg = normalize_lon(location.lon_deg);
    return t;
}

bool scanline_is_dark(const SatelliteState& state, const RadiometerSpec& spec, const MeasurementBand& band,
                      const GeofenceSpec& gf, const Transmitter& tx) {
    const SwathArc arc = scanline_arc_geometry(state, spec, band, gf);
    return distance_to_arc_km(arc, tx.location) <= arc.half_width_km;
}

double geofence_reach_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf,
                         double altitude_km) {
    const double hw = geofence_halfwidth(spec, band, gf);
    if (spec.scan_type == ScanType::Conical) {
        return kEarthRadiusKm * ground_central_angle(altitude_km, spec.off_nadir_deg) + hw;
    }
    const double ext = gf.guard_pixels * gf.pixel_scale * spec.footprint(band).along_km;
    return kEarthRadiusKm * ground_central_angle(altitude_km, spec.active_scan_deg / 2.0) + ext + hw;
}

std::vector<DarkTimeWindow> compute_dark_windows(const TwoLineElements& tle, const RadiometerSpec& spec,
                                                 const MeasurementBand& band, const GeofenceSpec& gf,
                                                 const Transmitter& raw_tx, TimeInterval range,
                                                 std::string_view satellite_id, const DarkTimeOptions& options) {
    spec.validate();
    gf.validate();
    const Transmitter tx = raw_tx.normalized();
    tx.validate();
    if (range.end < range.start) throw Error(ErrorCode::EmptyRange, "dark-time range ends before it starts");
    std::vector<DarkTimeWindow> out;
    if (range.empty()) return out;

    const std::string sat = satellite_id.empty() ? std::to_string(tle.norad_id) : std::string(satellite_id);
    const double reach = geofence_reach_km(spec, band, gf, apogee_altitude_km(tle) + kReachMarginKm) + kReachMarginKm;
    const auto passes = find_passes(tle, tx.location, reach, range, options.propagation);

    const Sgp4Model model(tle);
    const double hw = geofence_halfwidth(spec, band, gf);
    auto margin = [&](Instant t) {
        const SatelliteState s = propagate(model, tle, t, options.propagation);
        return distance_to_arc_km(scanline_arc_geometry(s, spec, band, gf), tx.location) - hw;
    };

    const Duration period = from_seconds(spec.scan_period_s);
    const Instant origin = options.grid_origin.value_or(range.start);
    // Floor division; t may precede the origin.
    auto line_of = [&](Instant t) {
        const auto q = (t - origin) / period;
        return static_cast<long>(origin + q * period > t ? q - 1 : q);
    };
    const int guard = spec.open_loop ? gf.open_loop_guard_scanlines : 0;
    const double max_rate = options.max_closing_speed_km_s;

    for (const PassInterval& pass : passes) {
        // Continuous dark intervals, found by Lipschitz-safe stepping.
        std::vector<TimeInterval> dark;
        Instant t = pass.start;
        double v = margin(t);
        bool in = v <= 0.0;
        Instant open = t;
        while (t < pass.end) {
            const Duration step = std::max(kMinStep, from_seconds(std::abs(v) / max_rate));
            const Instant t2 = std::min(t + step, pass.end);
            const double v2 = margin(t2);
            const bool in2 = v2 <= 0.0;
            if (in2 != in) {
                // Keep the outer bound on both edges so the interval never shrinks.
                Instant lo = t, hi = t2;
                while (hi - lo > kEdgeTolerance) {
                    const Instant mid = lo + (hi - lo) / 2;
                    ((margin(mid) <= 0.0) == in ? lo : hi) = mid;
                }
                if (in2) {
                    open = lo;
                } else {
                    dark.push_back({open, hi});
                }
            }
            t = t2;
            v = v2;
            in = in2;
        }
        if (in) dark.push_back({open, pass.end});
        if (dark.empty()) continue;

        // Scan-line indices touched by each interval, then guard expansion.
        std::vector<CoreRange> cores;
        for (const auto& d : dark) {
            const long first = line_of(d.start);
            const long last = line_of(d.end);
            if (!cores.empty() && first - guard <= cores.back().last + guard) {
                cores.back().last = std::max(cores.back().last, last);
            } else {
                cores.push_back({first, last});
            }
        }
        for (const auto& c : cores) {
            DarkTimeWindow w;
            w.satellite = sat;
            w.start = origin + (c.first - guard) * period;
            w.end = origin + (c.last + 1 + guard) * period;
            w.scanline_count = static_cast<int>(c.last - c.first + 1) + 2 * guard;
            w.guard_scanlines = guard;
            w.scan_period_s = spec.scan_period_s;
            w.direction = pass.direction;
            if (!out.empty() && w.start < out.back().end) {
                // Guard lines of back-to-back passes overlap: fold into one window.
                DarkTimeWindow& prev = out.back();
                prev.end = std::max(prev.end, w.end);
                prev.scanline_count = static_cast<int>(std::ceil(to_seconds(prev.length()) / spec.scan_period_s - 1e-9));
                continue;
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::vector<MergedWindow> merge_windows(std::vector<MergedWindow> windows) {
    std::sort(windows.begin(), windows.end(), [](const MergedWindow& a, const MergedWindow& b) {
        return a.start < b.start || (a.start == b.start && a.end < b.end);
    });
    std::vector<MergedWindow> out;
    for (auto& w : windows) {
        if (w.end <= w.start) continue;
        if (!out.empty() && w.start <= out.back().end) {
            auto& cur = out.back();
            cur.end = std::max(cur.end, w.end);
            cur.satellites.insert(cur.satellites.end(), w.satellites.begin(), w.satellites.end());
        } else {
            out.push_back(std::move(w));
        }
    }
    for (auto& w : out) {
        std::sort(w.satellites.begin(), w.satellites.end());
        w.satellites.erase(std::unique(w.satellites.begin(), w.satellites.end()), w.satellites.end());
    }
    return out;
}

std::vector<MergedWindow> merge_windows(const std::vector<std::vector<DarkTimeWindow>>& lists) {
    std::vector<MergedWindow> all;
    for (const auto& list : lists) {
        for (const auto& w : list) all.push_back({w.start, w.end, {w.satellite}});
    }
    return merge_windows(std::move(all));
}

AvailabilityReport availability(const std::vector<MergedWindow>& windows, TimeInterval period) {
    if (period.empty()) throw Error(ErrorCode::EmptyPeriod, "availability period has no length");
    std::vector<MergedWindow> clipped;
    clipped.reserve(windows.size());
    for (const auto& w : windows) {
        MergedWindow c = w;
        c.start = std::max(c.start, period.start);
        c.end = std::min(c.end, period.end);
        if (c.end > c.start) clipped.push_back(std::move(c));
    }
    AvailabilityReport r;
    r.period = period;
    r.windows = merge_windows(std::move(clipped));
    Duration total{0};
    for (const auto& w : r.windows) total += w.length();
    r.total_dark_s = to_seconds(total);
    r.availability = 1.0 - r.total_dark_s / to_seconds(period.length());
    return r;
}

bool band_overlap(FrequencyRange tx_band, const MeasurementBand& band, double adjacency_guard_ghz) {
    if (adjacency_guard_ghz < 0.0) throw Error(ErrorCode::InvalidArgument, "adjacency guard must be >= 0");
    // Compare in integer hertz so that touching edges built from decimal
    // GHz values do not overlap by a rounding error.
    auto hz = [](double ghz) { return std::llround(ghz * 1e9); };
    const long long lo = std::max(hz(tx_band.low_ghz) - hz(adjacency_guard_ghz), hz(band.low_ghz()));
    const long long hi = std::min(hz(tx_band.high_ghz) + hz(adjacency_guard_ghz), hz(band.high_ghz()));
    return hi > lo;
}

double distance_to_coastline_km(const CoastlineSet& coast, GeoPoint p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : coast.lines) {
        for (std::size_t i = 1; i < line.size(); ++i) {
            const double to_a = great_circle_km(p, line[i - 1]);
            const double seg = great_circle_km(line[i - 1], line[i]);
            if (to_a - seg >= best) continue;  // triangle inequality bound
            best = std::min(best, point_to_arc_km(p, line[i - 1], line[i]));
        }
        if (line.size() == 1) best = std::min(best, great_circle_km(p, line[0]));
    }
    return best;
}

double coastal_threshold_km(const RadiometerSpec& spec, const MeasurementBand& band, const GeofenceSpec& gf) {
    return max_geofenced_extent_km(spec, band, gf, 2);
}

std::vector<Transmitter> coastal_filter(const std::vector<Transmitter>& transmitters, const CoastlineSet& coast,
                                        const RadiometerSpec& spec, const MeasurementBand& band,
                                        const GeofenceSpec& gf) {
    if (coast.empty()) throw Error(ErrorCode::InvalidGeometry, "coastline set is empty");
    const double threshold = coastal_threshold_km(spec, band, gf);
    std::vector<Transmitter> kept;
    for (const auto& tx : transmitters) {
        if (distance_to_coastline_km(coast, tx.location) <= threshold) kept.push_back(tx);
    }
    return kept;
}

}  // namespace rgss
