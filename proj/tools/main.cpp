// rgss command-line front end. Every query subcommand builds the same JSON
// body the HTTP API accepts and prints the API's response body.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rgss/catalog.hpp"
#include "rgss/error.hpp"
#include "rgss/service.hpp"

namespace {

using nlohmann::json;
using rgss::Error;
using rgss::ErrorCode;

struct QueryFlags {
    std::optional<double> lat;
    std::optional<double> lon;
    std::optional<std::string> ngci;
    std::optional<std::string> date;
    std::optional<int> days;
    std::optional<std::string> start;
    std::optional<std::string> end;
    std::string band = "7.125:7.475";
    std::string satellites = "all";
    std::optional<double> pixel_scale;
    std::optional<int> guard_pixels;
    std::optional<double> adjacency_guard;
};

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : std::move(fallback);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error&) {
        throw Error(ErrorCode::SchemaViolation, path + " is not valid JSON");
    }
}

json parse_band(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        return {{"low_ghz", std::stod(text.substr(0, colon))}, {"high_ghz", std::stod(text.substr(colon + 1))}};
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "--band expects LOW:HIGH in GHz, got '" + text + "'");
    }
}

json parse_satellites(const std::string& text) {
    if (text == "all") return "all";
    json ids = json::array();
    std::stringstream ss(text);
    for (std::string id; std::getline(ss, id, ',');) {
        if (!id.empty()) ids.push_back(id);
    }
    return ids;
}

void add_query_flags(CLI::App* cmd, QueryFlags& f) {
    cmd->add_option("--lat", f.lat, "Transmitter latitude, degrees");
    cmd->add_option("--lon", f.lon, "Transmitter longitude, degrees");
    cmd->add_option("--ngci", f.ngci, "Registered transmitter id (instead of --lat/--lon)");
    cmd->add_option("--date", f.date, "First UTC day, YYYY-MM-DD");
    cmd->add_option("--days", f.days, "Number of days from --date");
    cmd->add_option("--start", f.start, "Range start, ISO-8601 (with --end, instead of --date)");
    cmd->add_option("--end", f.end, "Range end, ISO-8601");
    cmd->add_option("--band", f.band, "Transmit band LOW:HIGH in GHz")->capture_default_str();
    cmd->add_option("--satellites", f.satellites, "'all' or comma-separated ids")->capture_default_str();
    cmd->add_option("--pixel-scale", f.pixel_scale, "Geofenced pixel size in FWHM");
    cmd->add_option("--guard-pixels", f.guard_pixels, "Guard pixels around each scan line");
    cmd->add_option("--adjacency-guard", f.adjacency_guard, "Extra GHz on each side of the transmit band");
}

// Newest element-set day among the selected satellites.
std::string default_date(const rgss::Catalog& c, const json& sats) {
    rgss::Instant newest{};
    for (const auto& [id, rec] : c.satellites) {
        if (sats.is_array() && std::find(sats.begin(), sats.end(), id) == sats.end()) continue;
        newest = std::max(newest, rec.latest().epoch);
    }
    if (newest == rgss::Instant{}) throw Error(ErrorCode::InvalidArgument, "no satellites to pick a default date from");
    return rgss::format_iso8601(newest).substr(0, 10);
}

json build_query(const rgss::Catalog& c, const QueryFlags& f) {
    json q;
    if (f.ngci) {
        if (f.lat || f.lon) throw Error(ErrorCode::InvalidArgument, "--ngci excludes --lat/--lon");
        q["ngci"] = *f.ngci;
    } else if (f.lat || f.lon) {
        if (!f.lat || !f.lon) throw Error(ErrorCode::InvalidArgument, "--lat and --lon go together");
        q["location"] = {{"lat", *f.lat}, {"lon", *f.lon}};
    } else if (c.reference_site) {
        q["location"] = {{"lat", c.reference_site->lat_deg}, {"lon", c.reference_site->lon_deg}};
    } else {
        throw Error(ErrorCode::InvalidArgument, "give --lat/--lon or --ngci (catalog has no reference_site)");
    }
    q["frequency"] = parse_band(f.band);
    q["satellites"] = parse_satellites(f.satellites);
    if (f.start || f.end) {
        if (!f.start || !f.end || f.date || f.days) {
            throw Error(ErrorCode::InvalidArgument, "--start and --end go together and exclude --date/--days");
        }
        q["range"] = {{"start", *f.start}, {"end", *f.end}};
    } else {
        q["date"] = f.date ? *f.date : default_date(c, q["satellites"]);
        if (f.days) q["days"] = *f.days;
    }
    if (f.pixel_scale || f.guard_pixels) {
        json g = json::object();
        if (f.pixel_scale) g["pixel_scale"] = *f.pixel_scale;
        if (f.guard_pixels) g["guard_pixels"] = *f.guard_pixels;
        g["open_loop_guard_scanlines"] = c.geofence.open_loop_guard_scanlines;
        if (!f.pixel_scale) g["pixel_scale"] = c.geofence.pixel_scale;
        if (!f.guard_pixels) g["guard_pixels"] = c.geofence.guard_pixels;
        q["geofence"] = g;
    }
    if (f.adjacency_guard) q["adjacency_guard_ghz"] = *f.adjacency_guard;
    return q;
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
}

int fail(ErrorCode code, const std::string& message, int status) {
    std::cerr << rgss::api::error_body(code, message);
    return status;
}

rgss::HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geofenced spectrum sharing engine: dark-time windows, availability, geofences, mitigation"};
    app.require_subcommand(1);
    std::string config = env_or("RGSS_CONFIG", "data/catalog.json");
    std::string output;
    app.add_option("--config", config, "Catalog document (env RGSS_CONFIG)")->capture_default_str();
    app.add_option("-o,--output", output, "Write the result here instead of stdout");

    QueryFlags dq, aq, gq;
    auto* darktimes = app.add_subcommand("darktimes", "Dark-time windows for one transmitter");
    add_query_flags(darktimes, dq);
    auto* avail = app.add_subcommand("availability", "Band availability over a period");
    add_query_flags(avail, aq);
    auto* geofence = app.add_subcommand("geofence", "GeoJSON of one traversal's scan lines and geofenced area");
    add_query_flags(geofence, gq);
    std::string gf_satellite;
    int traversal = 0;
    geofence->add_option("--satellite", gf_satellite, "Satellite id")->required();
    geofence->add_option("--traversal", traversal, "Zero-based window index")->capture_default_str();

    auto* coastal = app.add_subcommand("coastal-filter", "Transmitters inside the coastal zone");
    std::string cf_band = "7.125:7.475", cf_sats = "all", cf_transmitters;
    coastal->add_option("--band", cf_band, "Transmit band LOW:HIGH in GHz")->capture_default_str();
    coastal->add_option("--satellites", cf_sats, "'all' or comma-separated ids")->capture_default_str();
    coastal->add_option("--transmitters", cf_transmitters, "JSON array of transmitters (default: the registry)");

    auto* plan = app.add_subcommand("plan-mitigation", "Per-site mitigation plan for one dark-time window");
    std::string pm_input, pm_window, pm_sites, pm_profile, pm_policy;
    plan->add_option("--input", pm_input, "Complete request document");
    plan->add_option("--window", pm_window, "Window JSON (as in darktimes output)");
    plan->add_option("--sites", pm_sites, "JSON array of cell sites");
    plan->add_option("--profile", pm_profile, "Traffic profile JSON");
    plan->add_option("--policy", pm_policy, "Mitigation policy JSON");

    auto* refresh = app.add_subcommand("refresh-tles", "Fetch current element sets and append them to the history");
    std::string source = rgss::HttpElementSource::default_template();
    refresh->add_option("--source", source, "URL template with {norad} (env RGSS_TLE_SOURCE)")->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Run the JSON HTTP service");
    std::string listen = env_or("RGSS_LISTEN", "127.0.0.1:8080");
    int workers = 4;
    serve->add_option("--listen", listen, "host:port (env RGSS_LISTEN)")->capture_default_str();
    serve->add_option("--max-concurrent", workers, "Heavy requests computed at once")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(ErrorCode::InvalidArgument, e.what(), 2);
    }

    try {
        if (*plan) {
            json body;
            if (!pm_input.empty()) {
                body = read_json(pm_input);
            } else {
                if (pm_window.empty() || pm_sites.empty()) {
                    return fail(ErrorCode::InvalidArgument, "give --input, or --window and --sites", 2);
                }
                body = {{"window", read_json(pm_window)}, {"sites", read_json(pm_sites)}};
                if (!pm_profile.empty()) body["profile"] = read_json(pm_profile);
                if (!pm_policy.empty()) body["policy"] = read_json(pm_policy);
            }
            write_output(output, rgss::api::mitigation(body.dump()));
            return 0;
        }

        if (*refresh) {
            auto store = std::make_shared<rgss::CatalogStore>(rgss::load_catalog(config), config);
            rgss::HttpElementSource src(source);
            const auto now = std::chrono::time_point_cast<std::chrono::microseconds>(std::chrono::system_clock::now());
            const auto report = store->refresh(src, now);
            json results = json::array();
            for (const auto& r : report.results) {
                results.push_back({{"satellite", r.satellite},
                                   {"outcome", std::string(rgss::to_string(r.outcome))},
                                   {"message", r.message},
                                   {"overridden", r.overridden}});
            }
            if (report.outage()) {
                std::cerr << json{{"error",
                                   {{"code", std::string(rgss::to_string(ErrorCode::SourceUnavailable))},
                                    {"message", "element-set source unreachable for every satellite"},
                                    {"stale", report.stale}}}}
                                 .dump(2)
                          << "\n";
                return 1;
            }
            write_output(output, json{{"results", results}, {"stale", report.stale}}.dump(2) + "\n");
            return 0;
        }

        const rgss::Catalog catalog = rgss::load_catalog(config);

        if (*serve) {
            auto store = std::make_shared<rgss::CatalogStore>(catalog, config);
            rgss::Service service(store, {.max_concurrent_computations = std::max(1, workers)});
            rgss::HttpServer server(service);
            const int port = server.bind(listen);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << listen.substr(0, listen.rfind(':')) << ":" << port << std::endl;
            server.run();
            g_server = nullptr;
            return 0;
        }

        std::string body;
        if (*darktimes) {
            body = rgss::api::darktimes(catalog, build_query(catalog, dq).dump());
        } else if (*avail) {
            body = rgss::api::availability(catalog, build_query(catalog, aq).dump());
        } else if (*geofence) {
            json q = build_query(catalog, gq);
            q["satellite"] = gf_satellite;
            q["traversal"] = traversal;
            body = rgss::api::geofence(catalog, q.dump());
        } else if (*coastal) {
            json q{{"frequency", parse_band(cf_band)}, {"satellites", parse_satellites(cf_sats)}};
            if (!cf_transmitters.empty()) q["transmitters"] = read_json(cf_transmitters);
            body = rgss::api::coastal_filter(catalog, q.dump());
        }
        write_output(output, body);
        return 0;
    } catch (const Error& e) {
        return fail(e.code(), e.what(), 1);
    } catch (const std::exception& e) {
        return fail(ErrorCode::Internal, e.what(), 1);
    }
}
