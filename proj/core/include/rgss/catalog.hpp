#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgss/darktime.hpp"
#include "rgss/orbit.hpp"
#include "rgss/scan_geometry.hpp"

namespace rgss {

struct SatelliteRecord {
    std::string id;  // catalog key, e.g. "amsr2"
    int norad_id = 0;
    RadiometerSpec spec;
    std::vector<TwoLineElements> history;  // ascending epoch, never shrinks
    std::optional<Instant> last_fetch;

    const TwoLineElements& latest() const { return history.back(); }
};

/// Manual orbit override. With `replacement` set, that element set governs
/// propagation inside `valid`; without it the satellite is treated as not
/// measuring inside `valid` and produces no dark time there.
struct OrbitOverride {
    std::string satellite;
    std::optional<TwoLineElements> replacement;
    TimeInterval valid;
    std::string reason;
    std::string author;

    bool excludes() const { return !replacement.has_value(); }
    bool active_at(Instant t) const { return valid.start <= t && t < valid.end; }
};

struct Catalog {
    std::map<std::string, SatelliteRecord> satellites;
    std::map<std::string, Transmitter> transmitters;  // keyed by NGCI
    std::vector<OrbitOverride> overrides;
    GeofenceSpec geofence;
    std::string tle_dir = "tles";  // relative to the config file
    std::string coastline_path;    // relative to the config file; empty if none
    CoastlineSet coastline;
    std::optional<GeoPoint> reference_site;  // default location for batch reports
};

/// Parses a catalog document. Element-set histories are read from
/// `<base_dir>/<tle_dir>/<norad_id>.tle`; the coastline from `coastline_path`.
/// Throws Error(SchemaViolation) naming the field path, Error(DuplicateSatellite),
/// Error(NotFound) when a satellite has no element sets.
Catalog parse_catalog(std::string_view json_text, const std::filesystem::path& base_dir);
Catalog load_catalog(const std::filesystem::path& config_path);

/// Writes the document and appends element sets missing from each history
/// file. Existing history lines are never rewritten.
void save_catalog(const Catalog& catalog, const std::filesystem::path& config_path);

std::string catalog_to_json(const Catalog& catalog);

const SatelliteRecord& lookup_satellite(const Catalog& catalog, std::string_view id);

/// Case-sensitive; Error(NotFound) for unknown ids.
const Transmitter& lookup_transmitter(const Catalog& catalog, std::string_view ngci);

/// Elements governing propagation at `t`: an active replacement override,
/// else the latest epoch <= t, else the earliest set. `nullopt` when an
/// exclusion override is active.
std::optional<TwoLineElements> select_elements(const Catalog& catalog, std::string_view satellite, Instant t);

/// compute_dark_windows over the catalog's element history and overrides.
/// The range is split where the governing element set changes; all pieces
/// share one scan-line grid anchored at `range.start`.
std::vector<DarkTimeWindow> catalog_dark_windows(const Catalog& catalog, std::string_view satellite,
                                                 const MeasurementBand& band, const GeofenceSpec& gf,
                                                 const Transmitter& tx, TimeInterval range,
                                                 const DarkTimeOptions& options = {});

/// Element-set fetch client. `fetch` returns the current set for a catalog
/// number or throws Error(SourceUnavailable).
class ElementSetSource {
public:
    virtual ~ElementSetSource() = default;
    virtual TwoLineElements fetch(int norad_id) = 0;
};

/// HTTP GET on a URL template in which `{norad}` is replaced by the catalog
/// number; the body is TLE text.
class HttpElementSource : public ElementSetSource {
public:
    explicit HttpElementSource(std::string url_template);
    /// Template from RGSS_TLE_SOURCE, or the public celestrak GP endpoint.
    static std::string default_template();
    TwoLineElements fetch(int norad_id) override;

private:
    std::string template_;
};

enum class RefreshOutcome { Appended, Unchanged, Failed };
std::string_view to_string(RefreshOutcome o);

struct RefreshStatus {
    std::string satellite;
    RefreshOutcome outcome = RefreshOutcome::Unchanged;
    std::string message;
    bool overridden = false;  // an override still governs propagation
};

struct RefreshReport {
    std::vector<RefreshStatus> results;
    std::vector<std::string> stale;  // satellites whose fetch failed
    bool outage() const { return !results.empty() && stale.size() == results.size(); }
};

struct RefreshResult {
    Catalog catalog;
    RefreshReport report;
};

/// Fetches once per catalog number and appends sets with a new epoch.
/// Failures are recorded per satellite and never abort the others.
RefreshResult refresh_tles(Catalog catalog, ElementSetSource& source, Instant now);

/// Single writer, many readers. Readers hold an immutable snapshot for the
/// lifetime of a request; writers build a new catalog and swap it in.
class CatalogStore {
public:
    explicit CatalogStore(Catalog initial, std::optional<std::filesystem::path> config_path = std::nullopt);

    std::shared_ptr<const Catalog> snapshot() const;
    void replace(Catalog next);

    /// Refreshes, persists (when a config path is set) and swaps.
    RefreshReport refresh(ElementSetSource& source, Instant now);
    void add_override(OrbitOverride o);

private:
    void publish(Catalog next);

    mutable std::mutex read_mu_;
    std::mutex write_mu_;
    std::shared_ptr<const Catalog> current_;
    std::optional<std::filesystem::path> config_path_;
};

}  // namespace rgss
