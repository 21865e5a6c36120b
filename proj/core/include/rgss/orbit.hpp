#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgss/geo.hpp"
#include "rgss/time.hpp"

namespace rgss {

/// A NORAD two-line element set. Only validated instances are produced by
/// `parse_tle`; the raw lines are kept so the set can be persisted verbatim.
struct TwoLineElements {
    int norad_id = 0;
    std::string name;
    std::string line1;
    std::string line2;
    Instant epoch;
    JulianDate epoch_jd{};  // exact epoch as decoded, used by the propagator

    // Decoded mean elements (degrees, revs/day, as printed in the set).
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_per_day = 0.0;
    double mean_motion_dot = 0.0;   // rev/day^2 / 2
    double mean_motion_ddot = 0.0;  // rev/day^3 / 6
    double bstar = 0.0;

    friend bool operator==(const TwoLineElements& a, const TwoLineElements& b) {
        return a.line1 == b.line1 && a.line2 == b.line2 && a.name == b.name;
    }
};

struct TleParseOptions {
    bool verify_checksum = true;
};

/// Parses an optional name line followed by two data lines. Only the first
/// 69 columns of each data line are significant; trailing carriage returns
/// are stripped. Errors carry the offending line number.
TwoLineElements parse_tle(std::string_view text, TleParseOptions options = {});

/// Splits a multi-set file (history files, archive dumps) into element sets.
std::vector<TwoLineElements> parse_tle_stream(std::string_view text, TleParseOptions options = {});

/// Modulo-10 checksum over the first 68 columns ('-' counts as 1).
int tle_checksum(std::string_view line);

/// Renders the set back to text: name line (if any) plus the two data lines.
std::string format_tle(const TwoLineElements& tle);

enum class Direction { Ascending, Descending };
std::string_view to_string(Direction d);

struct SatelliteState {
    Instant time;
    Vec3 position_teme_km;
    Vec3 velocity_teme_km_s;
    Vec3 position_ecef_km;
    Vec3 velocity_ecef_km_s;  // earth-relative
    GeoPoint subpoint;
    double altitude_km = 0.0;  // above the 6371 km sphere
};

/// Raw SGP4/SDP4 model initialised from one element set (WGS-72 constants,
/// improved operation mode). Exposed separately from `propagate` so the
/// verification vectors can be checked without staleness rules.
class Sgp4Model {
public:
    explicit Sgp4Model(const TwoLineElements& tle);

    struct Result {
        int error = 0;  // 0 ok; 1..4 element divergence; 6 decayed
        Vec3 position_km;
        Vec3 velocity_km_s;
    };

    /// Minutes since epoch.
    Result propagate_minutes(double tsince) const;

    double orbital_period_minutes() const;
    bool deep_space() const;

    struct Record;  // opaque model state

private:
    std::shared_ptr<const Record> rec_;
};

struct PropagationOptions {
    /// Maximum |t - epoch|; nullopt disables the staleness guard.
    std::optional<std::chrono::seconds> max_element_age = std::chrono::days(14);
};

/// Greenwich mean sidereal time (IAU-82), radians.
double gmst_radians(Instant t);

/// Propagates to `t`. Throws Error(StaleElements) when the set is too old
/// and Error(DecayedOrbit) when the model fails or the altitude is <= 0.
SatelliteState propagate(const TwoLineElements& tle, Instant t, PropagationOptions options = {});
SatelliteState propagate(const Sgp4Model& model, const TwoLineElements& tle, Instant t,
                         PropagationOptions options = {});

struct PassInterval {
    int norad_id = 0;
    Instant start;
    Instant end;
    Direction direction = Direction::Ascending;
};

/// Time intervals during which the sub-satellite point lies within
/// `radius_km` of `center`. Sampled on a 1 s grid anchored at `range.start`
/// (with provably-safe skipping while far away); edges refined to 10 ms.
std::vector<PassInterval> find_passes(const TwoLineElements& tle, GeoPoint center, double radius_km,
                                      TimeInterval range, PropagationOptions options = {});

}  // namespace rgss
