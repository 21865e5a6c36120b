#include "rgss/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "rgss/error.hpp"

namespace rgss {

namespace fs = std::filesystem;
using json_io::json;
using json_io::Node;

namespace {

std::string read_text(const fs::path& path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + std::string(what) + " " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path history_path(const fs::path& base_dir, const std::string& tle_dir, int norad_id) {
    return base_dir / tle_dir / (std::to_string(norad_id) + ".tle");
}

bool epoch_less(const TwoLineElements& a, const TwoLineElements& b) { return a.epoch < b.epoch; }

// Sorted by epoch, first set kept when two share an epoch.
std::vector<TwoLineElements> ordered_history(std::vector<TwoLineElements> sets) {
    std::stable_sort(sets.begin(), sets.end(), epoch_less);
    sets.erase(std::unique(sets.begin(), sets.end(),
                           [](const TwoLineElements& a, const TwoLineElements& b) { return a.epoch == b.epoch; }),
               sets.end());
    return sets;
}

OrbitOverride override_from(const Node& n, const Catalog& catalog) {
    OrbitOverride o;
    const Node sat = n.at("satellite");
    o.satellite = sat.string();
    if (!catalog.satellites.contains(o.satellite)) sat.fail("unknown satellite '" + o.satellite + "'");
    o.valid = json_io::interval_from(n.at("valid"));
    if (auto r = n.find("reason")) o.reason = r->string();
    if (auto a = n.find("author")) o.author = a->string();
    const bool exclude = n.find("exclude") ? n.at("exclude").boolean() : false;
    const auto tle = n.find("tle");
    if (exclude == tle.has_value()) n.fail("needs exactly one of 'tle' or 'exclude: true'");
    if (tle) {
        try {
            o.replacement = parse_tle(tle->string());
        } catch (const Error& e) {
            tle->fail(e.what());
        }
        if (o.replacement->norad_id != catalog.satellites.at(o.satellite).norad_id) {
            tle->fail("catalog number does not match the satellite");
        }
    }
    return o;
}

json override_to_json(const OrbitOverride& o) {
    json j{{"satellite", o.satellite}, {"valid", json_io::to_json(o.valid)}};
    if (!o.reason.empty()) j["reason"] = o.reason;
    if (!o.author.empty()) j["author"] = o.author;
    if (o.replacement) {
        j["tle"] = o.replacement->line1 + "\n" + o.replacement->line2;
    } else {
        j["exclude"] = true;
    }
    return j;
}

}  // namespace

Catalog parse_catalog(std::string_view json_text, const fs::path& base_dir) {
    const json doc = json_io::parse_document(json_text, "catalog document");
    const Node root(doc, "");
    root.object();
    Catalog c;
    if (auto d = root.find("tle_dir")) c.tle_dir = d->string();
    if (auto g = root.find("geofence")) c.geofence = json_io::geofence_from(*g);

    if (auto sats = root.find("satellites")) {
        for (std::size_t i = 0; i < sats->size(); ++i) {
            const Node n = (*sats)[i];
            SatelliteRecord r;
            const Node id = n.at("id");
            r.id = id.string();
            if (r.id.empty()) id.fail("must not be empty");
            const Node norad = n.at("norad_id");
            const long catnr = norad.integer();
            if (catnr <= 0 || catnr > 99999) norad.fail("must be in 1..99999");
            r.norad_id = static_cast<int>(catnr);
            r.spec = json_io::spec_from(n);
            if (auto lf = n.find("last_fetch")) r.last_fetch = json_io::instant_from(*lf);
            if (c.satellites.contains(r.id)) {
                throw Error(ErrorCode::DuplicateSatellite, n.path() + ".id: duplicate satellite id '" + r.id + "'");
            }
            c.satellites.emplace(r.id, std::move(r));
        }
    }

    if (auto txs = root.find("transmitters")) {
        for (std::size_t i = 0; i < txs->size(); ++i) {
            Transmitter t = json_io::transmitter_from((*txs)[i]);
            if (c.transmitters.contains(t.id)) (*txs)[i].at("ngci").fail("duplicate NGCI '" + t.id + "'");
            c.transmitters.emplace(t.id, std::move(t));
        }
    }

    if (auto ovs = root.find("overrides")) {
        for (std::size_t i = 0; i < ovs->size(); ++i) c.overrides.push_back(override_from((*ovs)[i], c));
    }

    for (auto& [id, rec] : c.satellites) {
        const fs::path p = history_path(base_dir, c.tle_dir, rec.norad_id);
        std::ifstream probe(p);
        if (!probe) throw Error(ErrorCode::NotFound, "satellite " + id + ": no element-set history at " + p.string());
        try {
            rec.history = ordered_history(parse_tle_stream(read_text(p, "element-set history")));
        } catch (const Error& e) {
            throw Error(e.code(), p.string() + ": " + e.what());
        }
        if (rec.history.empty()) throw Error(ErrorCode::NotFound, "satellite " + id + ": " + p.string() + " is empty");
        for (const auto& tle : rec.history) {
            if (tle.norad_id != rec.norad_id) {
                throw Error(ErrorCode::TleCatalogMismatch, p.string() + ": element set for " +
                                                               std::to_string(tle.norad_id) + " in history of " +
                                                               std::to_string(rec.norad_id));
            }
        }
    }

    if (auto rs = root.find("reference_site")) {
        const Node lat = rs->at("lat");
        const Node lon = rs->at("lon");
        if (std::abs(lat.number()) > 90.0) lat.fail("must be in [-90, 90]");
        if (std::abs(lon.number()) > 180.0) lon.fail("must be in [-180, 180]");
        c.reference_site = GeoPoint{lat.number(), normalize_lon(lon.number())};
    }

    if (auto cp = root.find("coastline")) {
        c.coastline_path = cp->string();
        if (!c.coastline_path.empty()) c.coastline = load_coastline_file((base_dir / c.coastline_path).string());
    }
    return c;
}

Catalog load_catalog(const fs::path& config_path) {
    const std::string text = read_text(config_path, "catalog config");
    return parse_catalog(text, config_path.parent_path());
}

std::string catalog_to_json(const Catalog& c) {
    json j;
    j["tle_dir"] = c.tle_dir;
    if (!c.coastline_path.empty()) j["coastline"] = c.coastline_path;
    j["geofence"] = json_io::to_json(c.geofence);
    if (c.reference_site) j["reference_site"] = {{"lat", c.reference_site->lat_deg}, {"lon", c.reference_site->lon_deg}};
    j["satellites"] = json::array();
    for (const auto& [id, r] : c.satellites) {
        json s = json_io::to_json(r.spec);
        s["id"] = r.id;
        s["norad_id"] = r.norad_id;
        if (r.last_fetch) s["last_fetch"] = format_iso8601(*r.last_fetch);
        j["satellites"].push_back(std::move(s));
    }
    j["transmitters"] = json::array();
    for (const auto& [id, t] : c.transmitters) j["transmitters"].push_back(json_io::to_json(t));
    j["overrides"] = json::array();
    for (const auto& o : c.overrides) j["overrides"].push_back(override_to_json(o));
    return j.dump(2) + "\n";
}

void save_catalog(const Catalog& c, const fs::path& config_path) {
    const fs::path base = config_path.parent_path();
    std::error_code ec;
    fs::create_directories(base / c.tle_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + (base / c.tle_dir).string() + ": " + ec.message());

    std::set<int> done;
    for (const auto& [id, r] : c.satellites) {
        if (!done.insert(r.norad_id).second) continue;
        const fs::path p = history_path(base, c.tle_dir, r.norad_id);
        std::set<std::pair<std::string, std::string>> present;
        if (fs::exists(p)) {
            for (const auto& t : parse_tle_stream(read_text(p, "element-set history"))) {
                present.emplace(t.line1, t.line2);
            }
        }
        std::ofstream out(p, std::ios::app | std::ios::binary);
        if (!out) throw Error(ErrorCode::Io, "cannot append to " + p.string());
        for (const auto& t : r.history) {
            if (!present.contains({t.line1, t.line2})) out << format_tle(t);
        }
        if (!out) throw Error(ErrorCode::Io, "write failed for " + p.string());
    }

    const fs::path tmp = fs::path(config_path).concat(".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        out << catalog_to_json(c);
        if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
    }
    fs::rename(tmp, config_path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot replace " + config_path.string() + ": " + ec.message());
}

const SatelliteRecord& lookup_satellite(const Catalog& c, std::string_view id) {
    auto it = c.satellites.find(std::string(id));
    if (it == c.satellites.end()) throw Error(ErrorCode::NotFound, "unknown satellite '" + std::string(id) + "'");
    return it->second;
}

const Transmitter& lookup_transmitter(const Catalog& c, std::string_view ngci) {
    auto it = c.transmitters.find(std::string(ngci));
    if (it == c.transmitters.end()) throw Error(ErrorCode::NotFound, "unknown NGCI '" + std::string(ngci) + "'");
    return it->second;
}

std::optional<TwoLineElements> select_elements(const Catalog& c, std::string_view satellite, Instant t) {
    const SatelliteRecord& r = lookup_satellite(c, satellite);
    // Later overrides take precedence over earlier ones.
    for (auto it = c.overrides.rbegin(); it != c.overrides.rend(); ++it) {
        if (it->satellite != satellite || !it->active_at(t)) continue;
        if (it->excludes()) return std::nullopt;
        return it->replacement;
    }
    auto after = std::upper_bound(r.history.begin(), r.history.end(), t,
                                  [](Instant v, const TwoLineElements& e) { return v < e.epoch; });
    return after == r.history.begin() ? r.history.front() : *(after - 1);
}

std::vector<DarkTimeWindow> catalog_dark_windows(const Catalog& c, std::string_view satellite,
                                                 const MeasurementBand& band, const GeofenceSpec& gf,
                                                 const Transmitter& tx, TimeInterval range,
                                                 const DarkTimeOptions& options) {
    const SatelliteRecord& r = lookup_satellite(c, satellite);
    if (range.end < range.start) throw Error(ErrorCode::EmptyRange, "dark-time range ends before it starts");
    std::vector<DarkTimeWindow> out;
    if (range.empty()) return out;

    std::vector<Instant> cuts{range.start, range.end};
    auto cut = [&](Instant t) {
        if (range.start < t && t < range.end) cuts.push_back(t);
    };
    for (const auto& tle : r.history) cut(tle.epoch);
    for (const auto& o : c.overrides) {
        if (o.satellite != satellite) continue;
        cut(o.valid.start);
        cut(o.valid.end);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    DarkTimeOptions opts = options;
    opts.grid_origin = options.grid_origin.value_or(range.start);
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const TimeInterval piece{cuts[i - 1], cuts[i]};
        const auto tle = select_elements(c, satellite, piece.start);
        if (!tle) continue;
        std::vector<DarkTimeWindow> ws;
        try {
            ws = compute_dark_windows(*tle, r.spec, band, gf, tx, piece, r.id, opts);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::StaleElements) throw;
            throw Error(ErrorCode::StaleElements, "satellite " + r.id + ": " + e.what());
        }
        for (auto& w : ws) {
            if (!out.empty() && w.start < out.back().end) {
                // A pass cut by an element-set change: both halves share the grid.
                DarkTimeWindow& prev = out.back();
                prev.end = std::max(prev.end, w.end);
                prev.scanline_count =
                    static_cast<int>(std::llround(to_seconds(prev.length()) / r.spec.scan_period_s));
                continue;
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::string_view to_string(RefreshOutcome o) {
    switch (o) {
        case RefreshOutcome::Appended: return "appended";
        case RefreshOutcome::Unchanged: return "unchanged";
        case RefreshOutcome::Failed: return "failed";
    }
    return "unknown";
}

RefreshResult refresh_tles(Catalog catalog, ElementSetSource& source, Instant now) {
    RefreshReport report;
    std::map<int, TwoLineElements> fetched;
    std::map<int, std::string> failed;
    for (auto& [id, rec] : catalog.satellites) {
        RefreshStatus st;
        st.satellite = id;
        if (!fetched.contains(rec.norad_id) && !failed.contains(rec.norad_id)) {
            try {
                TwoLineElements tle = source.fetch(rec.norad_id);
                if (tle.norad_id != rec.norad_id) {
                    throw Error(ErrorCode::TleCatalogMismatch,
                                "source returned catalog number " + std::to_string(tle.norad_id));
                }
                fetched.emplace(rec.norad_id, std::move(tle));
            } catch (const Error& e) {
                failed.emplace(rec.norad_id, e.what());
            }
        }
        if (auto f = failed.find(rec.norad_id); f != failed.end()) {
            st.outcome = RefreshOutcome::Failed;
            st.message = f->second;
            report.stale.push_back(id);
        } else {
            const TwoLineElements& tle = fetched.at(rec.norad_id);
            rec.last_fetch = now;
            const bool known = std::any_of(rec.history.begin(), rec.history.end(),
                                           [&](const TwoLineElements& h) { return h.epoch == tle.epoch; });
            if (known) {
                st.outcome = RefreshOutcome::Unchanged;
            } else {
                rec.history.insert(std::upper_bound(rec.history.begin(), rec.history.end(), tle, epoch_less), tle);
                st.outcome = RefreshOutcome::Appended;
                st.message = "epoch " + format_iso8601(tle.epoch);
            }
        }
        st.overridden = std::any_of(catalog.overrides.begin(), catalog.overrides.end(),
                                    [&](const OrbitOverride& o) { return o.satellite == id && o.active_at(now); });
        report.results.push_back(std::move(st));
    }
    return {std::move(catalog), std::move(report)};
}

CatalogStore::CatalogStore(Catalog initial, std::optional<fs::path> config_path)
    : current_(std::make_shared<const Catalog>(std::move(initial))), config_path_(std::move(config_path)) {}

std::shared_ptr<const Catalog> CatalogStore::snapshot() const {
    std::lock_guard lock(read_mu_);
    return current_;
}

void CatalogStore::publish(Catalog next) {
    auto p = std::make_shared<const Catalog>(std::move(next));
    std::lock_guard lock(read_mu_);
    current_ = std::move(p);
}

void CatalogStore::replace(Catalog next) {
    std::lock_guard lock(write_mu_);
    publish(std::move(next));
}

RefreshReport CatalogStore::refresh(ElementSetSource& source, Instant now) {
    std::lock_guard lock(write_mu_);
    RefreshResult r = refresh_tles(*snapshot(), source, now);
    if (config_path_) save_catalog(r.catalog, *config_path_);
    publish(std::move(r.catalog));
    return r.report;
}

void CatalogStore::add_override(OrbitOverride o) {
    std::lock_guard lock(write_mu_);
    Catalog next = *snapshot();
    lookup_satellite(next, o.satellite);
    next.overrides.push_back(std::move(o));
    if (config_path_) save_catalog(next, *config_path_);
    publish(std::move(next));
}

}  // namespace rgss
