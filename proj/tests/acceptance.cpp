// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// here; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "rgss/catalog.hpp"
#include "rgss/error.hpp"
#include "rgss/mitigation.hpp"
#include "rgss/service.hpp"
#include "support/sgp4_vectors.hpp"

using namespace rgss;
using namespace std::chrono_literals;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr int kAc1Lines = 14, kAc1LinesTol = 3;
constexpr double kAc1Seconds = 21.0, kAc1SecondsTol = 4.5;
constexpr double kAc1NightLocal = 2.0, kAc1NightTolH = 2.0;
constexpr double kAc1RuntimeS = 10.0;
constexpr double kAc2Low = 0.9994, kAc2High = 0.9999;
constexpr double kAc3Low = 85.0, kAc3High = 190.0, kAc3StatedLow = 90.0, kAc3StatedHigh = 180.0;
// The stated span is approximate; read it as rounded to 10 km.
constexpr double kAc3Rounding = 5.0;
constexpr double kAc4Target = 0.981, kAc4Tol = 0.001;
constexpr double kAc5MaxKm = 1.0;
constexpr int kAc6Cases = 100;
constexpr double kAc6MinFraction = 0.95;
constexpr int kAc7Scenarios = 20;
constexpr int kAc8Sets = 1000;
constexpr double kAc9NightLoad = 0.12;

const std::string kConfig = std::string(RGSS_DATA_DIR) + "/catalog.json";
const std::string kFixtures = std::string(RGSS_DATA_DIR) + "/fixtures";

int g_failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
    std::cout << id << " " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
    if (!pass) ++g_failures;
}

// Runs `body`, turning any exception into a failed criterion.
void criterion(const char* id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(prec);
    ss << v;
    return ss.str();
}

double solar_local_hour(Instant t, double lon_deg) {
    return local_hour(t, lon_deg / 15.0);
}

// A line is dark if the predicate holds at any 5 ms sample of its duration.
bool line_dark(const Sgp4Model& model, const TwoLineElements& tle, const RadiometerSpec& spec,
               const MeasurementBand& band, const GeofenceSpec& gf, const Transmitter& tx, Instant ls,
               Duration period) {
    for (Instant t = ls; t <= ls + period; t += 5ms) {
        if (scanline_is_dark(propagate(model, tle, t, {.max_element_age = std::nullopt}), spec, band, gf, tx)) {
            return true;
        }
    }
    return false;
}

Instant random_day(std::mt19937_64& rng, Instant epoch, int spread_days) {
    std::uniform_int_distribution<int> d(-spread_days, spread_days);
    const auto day = std::chrono::floor<std::chrono::days>(epoch + std::chrono::days(d(rng)));
    return Instant(std::chrono::duration_cast<Duration>(day.time_since_epoch()));
}

// ---------------------------------------------------------------------------

void ac1(const Catalog& cat) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& rec = lookup_satellite(cat, "amsr2");
    const Transmitter tx{"ref", {42.0, -74.0}, {7.125, 7.475}};
    const MeasurementBand band = rec.spec.bands.at(1);
    const TimeInterval day{utc_midnight(2024, 11, 26), utc_midnight(2024, 11, 27)};
    const auto ws = catalog_dark_windows(cat, "amsr2", band, cat.geofence, tx, day);
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int lines = 0;
    double seconds = 0.0;
    bool night = false, midday = false;
    for (const auto& w : ws) {
        lines += w.scanline_count;
        seconds += to_seconds(w.length());
        const double h = solar_local_hour(w.start + w.length() / 2, tx.location.lon_deg);
        const double from_two = std::abs(std::remainder(h - kAc1NightLocal, 24.0));
        night |= w.direction == Direction::Descending && from_two <= kAc1NightTolH;
        midday |= w.direction == Direction::Ascending && h >= 10.0 && h <= 16.0;
    }
    const bool pass = ws.size() == 2 && night && midday && std::abs(lines - kAc1Lines) <= kAc1LinesTol &&
                      std::abs(seconds - kAc1Seconds) <= kAc1SecondsTol && runtime < kAc1RuntimeS;
    report("AC1", pass,
           "windows=" + std::to_string(ws.size()) + " lines=" + std::to_string(lines) + " (14+-3) dark=" +
               fmt(seconds, 1) + "s (21+-4.5) descending-night=" + (night ? "yes" : "no") +
               " ascending-midday=" + (midday ? "yes" : "no") + " runtime=" + fmt(runtime, 2) + "s");
}

void ac2(const Catalog& cat) {
    json q{{"ngci", "310410-00000A1B002"},
           {"frequency", {{"low_ghz", 7.125}, {"high_ghz", 7.475}}},
           {"range", {{"start", "2024-11-23T00:00:00Z"}, {"end", "2024-11-30T00:00:00Z"}}},
           {"satellites", {"amsr2", "amsr3-sim"}}};
    const json r = json::parse(api::availability(cat, q.dump()));
    const double a = r.at("availability").at("availability");
    const double dark = r.at("availability").at("total_dark_s");
    report("AC2", a >= kAc2Low && a <= kAc2High,
           "availability=" + fmt(100 * a, 4) + "% over 7 d, 2 satellites, dark=" + fmt(dark, 1) +
               "s (bounds 99.94..99.99%)");
}

void ac3(const Catalog& cat) {
    const auto& spec = lookup_satellite(cat, "amsr2").spec;
    const MeasurementBand band = spec.bands.at(1);
    double lo = 1e9, hi = 0.0;
    const double half = spec.active_scan_deg / 2.0;
    for (double az = -half; az <= half + 1e-9; az += 0.05) {
        const double e = geofenced_extent_km(spec, band, cat.geofence, az, 2);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    const bool in_bounds = lo >= kAc3Low && hi <= kAc3High;
    const bool brackets = lo <= kAc3StatedLow + kAc3Rounding && hi >= kAc3StatedHigh - kAc3Rounding;
    const bool strict = lo <= kAc3StatedLow && hi >= kAc3StatedHigh;
    report("AC3", in_bounds && brackets,
           "two-pixel extent min=" + fmt(lo, 1) + "km max=" + fmt(hi, 1) +
               "km (within 85..190, brackets ~90..~180 at 10 km rounding; exact 90..180: " +
               (strict ? "yes" : "no") + ")");
}

void ac4() {
    // Independent oracle: Simpson integration of a unit-FWHM Gaussian.
    const double sigma = 1.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    auto simpson = [&](double m) {
        auto g = [&](double x) { return std::exp(-x * x / (2 * sigma * sigma)) / (sigma * std::sqrt(2 * M_PI)); };
        const int n = 20000;
        const double a = -m / 2, h = m / n;
        double s = g(a) + g(-a);
        for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    const double two = beam_containment(2.0), one = beam_containment(1.0);
    const bool pass = std::abs(two - kAc4Target) <= kAc4Tol && std::abs(two - simpson(2.0)) < 1e-6 &&
                      std::abs(one - simpson(1.0)) < 1e-6;
    report("AC4", pass,
           "within 2xFWHM=" + fmt(two, 4) + " (0.981+-0.001); within 1xFWHM=" + fmt(one, 4) +
               " vs stated 68% (documented discrepancy)");
}

void ac5() {
    const auto cases = testing::load_reference_cases(RGSS_TEST_DATA);
    double worst = 0.0;
    int rows = 0, bad = 0;
    for (const auto& c : cases) {
        TwoLineElements tle;
        try {
            tle = parse_tle(c.line1 + "\n" + c.line2, {.verify_checksum = false});
        } catch (const Error&) {
            if (!c.rows.empty()) ++bad;
            continue;
        }
        const Sgp4Model model(tle);
        for (const auto& r : c.rows) {
            const auto out = model.propagate_minutes(r.tsince_min);
            if (c.error_case && out.error != 0) break;
            if (out.error != 0) {
                ++bad;
                break;
            }
            const double err = norm(out.position_km - Vec3{r.x, r.y, r.z});
            worst = std::max(worst, err);
            bad += err >= kAc5MaxKm;
            ++rows;
        }
    }
    report("AC5", bad == 0 && rows > 500,
           std::to_string(cases.size()) + " element sets, " + std::to_string(rows) + " rows, worst " +
               fmt(worst * 1000.0, 4) + " m (limit 1 km)");
}

void ac6(const Catalog& cat) {
    std::vector<std::string> ids;
    for (const auto& [id, rec] : cat.satellites) {
        if (rec.spec.open_loop && rec.spec.scan_type == ScanType::Conical) ids.push_back(id);
    }
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> lat(-70.0, 70.0), lon(-180.0, 180.0);
    int windows = 0, guard_ok = 0, clean_edges = 0;
    for (int i = 0; i < kAc6Cases; ++i) {
        const auto& rec = cat.satellites.at(ids[i % ids.size()]);
        const auto& tle = rec.latest();
        const MeasurementBand band = rec.spec.bands.at(1);
        const Transmitter tx{"rnd", {lat(rng), lon(rng)}, {band.center_ghz - 0.01, band.center_ghz + 0.01}};
        const Instant day = random_day(rng, tle.epoch, 5);
        const auto ws = compute_dark_windows(tle, rec.spec, band, cat.geofence, tx, {day, day + 24h}, rec.id);
        const Sgp4Model model(tle);
        const Duration period = from_seconds(rec.spec.scan_period_s);
        for (const auto& w : ws) {
            ++windows;
            guard_ok += w.scanline_count >= w.core_scanlines() + 2 && w.core_scanlines() >= 1;
            const bool first = line_dark(model, tle, rec.spec, band, cat.geofence, tx, w.start, period);
            const bool last = line_dark(model, tle, rec.spec, band, cat.geofence, tx, w.end - period, period);
            clean_edges += !first && !last;
        }
    }
    const double frac = windows ? static_cast<double>(clean_edges) / windows : 0.0;
    report("AC6", windows > 0 && guard_ok == windows && frac >= kAc6MinFraction,
           std::to_string(kAc6Cases) + " cases, " + std::to_string(windows) + " windows, count>=core+2 in " +
               std::to_string(guard_ok) + ", non-dark edge lines in " + fmt(100 * frac, 1) + "% (>=95%)");
}

void ac7(const Catalog& cat) {
    std::vector<std::string> ids;
    for (const auto& [id, rec] : cat.satellites) ids.push_back(id);
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> lat(-70.0, 70.0), lon(-180.0, 180.0);
    long swept = 0, dark_lines = 0, misses = 0;
    for (int i = 0; i < kAc7Scenarios; ++i) {
        const auto& rec = cat.satellites.at(ids[i % ids.size()]);
        const auto& tle = rec.latest();
        const MeasurementBand band = rec.spec.bands.front();
        const Transmitter tx{"rnd", {lat(rng), lon(rng)}, {band.center_ghz - 0.01, band.center_ghz + 0.01}};
        const Instant day = random_day(rng, tle.epoch, 5);
        const TimeInterval range{day, day + 24h};
        const auto ws = compute_dark_windows(tle, rec.spec, band, cat.geofence, tx, range, rec.id);
        const Sgp4Model model(tle);
        const Duration period = from_seconds(rec.spec.scan_period_s);
        // Every scan line of the engine's grid; far-away lines are skipped by a
        // reach bound with one line of travel as margin.
        for (Instant ls = range.start; ls < range.end; ls += period) {
            const auto s = propagate(model, tle, ls, {.max_element_age = std::nullopt});
            const double reach = geofence_reach_km(rec.spec, band, cat.geofence, s.altitude_km) + 25.0;
            if (great_circle_km(s.subpoint, tx.location) > reach) continue;
            ++swept;
            if (!line_dark(model, tle, rec.spec, band, cat.geofence, tx, ls, period)) continue;
            ++dark_lines;
            bool covered = false;
            for (const auto& w : ws) {
                covered |= w.start + w.guard_scanlines * period <= ls && ls + period <= w.end - w.guard_scanlines * period;
            }
            misses += !covered;
        }
    }
    report("AC7", misses == 0 && dark_lines > 0,
           std::to_string(kAc7Scenarios) + " scenarios, " + std::to_string(swept) + " lines swept, " +
               std::to_string(dark_lines) + " dark, " + std::to_string(misses) + " outside a window core");
}

void ac8() {
    std::mt19937_64 rng(808);
    const Instant t0 = utc_midnight(2024, 11, 26);
    int failures = 0;
    for (int set = 0; set < kAc8Sets; ++set) {
        std::uniform_int_distribution<int> count(0, 12), start(0, 3600), len(0, 600), sat(0, 3);
        std::vector<MergedWindow> in;
        const int n = count(rng);
        for (int k = 0; k < n; ++k) {
            const int a = start(rng);
            in.push_back({t0 + std::chrono::seconds(a), t0 + std::chrono::seconds(a + len(rng)),
                          {"s" + std::to_string(sat(rng))}});
        }
        const auto once = merge_windows(in);
        const auto twice = merge_windows(once);
        auto shuffled = in;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto perm = merge_windows(shuffled);
        auto same = [](const std::vector<MergedWindow>& a, const std::vector<MergedWindow>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].start != b[i].start || a[i].end != b[i].end || a[i].satellites != b[i].satellites) return false;
            }
            return true;
        };
        // 1 s raster: second i is dark iff some input covers [i, i+1).
        std::vector<bool> raster(4200, false), merged(4200, false);
        for (const auto& w : in) {
            for (auto t = w.start; t < w.end; t += 1s) raster[(t - t0) / 1s] = true;
        }
        for (const auto& w : once) {
            for (auto t = w.start; t < w.end; t += 1s) merged[(t - t0) / 1s] = true;
        }
        bool ordered = true;
        for (std::size_t i = 1; i < once.size(); ++i) ordered &= once[i - 1].end < once[i].start;
        if (!same(once, twice) || !same(once, perm) || raster != merged || !ordered) ++failures;
    }
    report("AC8", failures == 0,
           std::to_string(kAc8Sets) + " random interval sets; idempotence, permutation invariance, 1 s raster: " +
               std::to_string(failures) + " failures");
}

void ac9() {
    auto load = [](const std::string& name) {
        std::ifstream in(kFixtures + "/" + name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const json night = json::parse(api::mitigation(load("mitigation_2am.json")));
    bool all_sleep = !night.at("actions").empty();
    bool night_load = true;
    for (const auto& a : night.at("actions")) {
        all_sleep &= a.at("action") == "sleep";
        night_load &= std::abs(a.at("load").get<double>() - kAc9NightLoad) < 1e-9;
    }
    const bool night_ok = all_sleep && night_load && night.at("impact").get<double>() == 0.0;

    const json day = json::parse(api::mitigation(load("mitigation_1330.json")));
    bool day_ok = !day.at("actions").empty();
    bool any_shed = false;
    for (const auto& a : day.at("actions")) {
        const auto& shed = a.at("shed");
        day_ok &= shed.at("urllc") == 0 && shed.at("real_time") == 0;
        day_ok &= a.at("handed_over").at("urllc") == a.at("active").at("urllc");
        any_shed |= shed.at("best_effort").get<long>() > 0;
    }
    day_ok &= any_shed;

    const auto p = TrafficProfile::defaults();
    const double l4 = diurnal_load(4.0, p), l21 = diurnal_load(21.0, p);
    const bool curve_ok = l4 >= 0.10 && l4 <= 0.15 && l21 == 1.0;
    report("AC9", night_ok && day_ok && curve_ok,
           std::string("2 AM plan all-sleep impact 0: ") + (night_ok ? "yes" : "no") +
               "; 13:30 plan sheds only best-effort, all URLLC handed over: " + (day_ok ? "yes" : "no") +
               "; load(4)=" + fmt(l4, 3) + " load(21)=" + fmt(l21, 3));
}

// --- RFC 7946 structure check, written independently of the engine. --------

bool is_position(const json& p) {
    if (!p.is_array() || p.size() < 2 || p.size() > 3) return false;
    for (const auto& v : p) {
        if (!v.is_number() || !std::isfinite(v.get<double>())) return false;
    }
    const double lon = p[0], lat = p[1];
    return lon >= -180.0 && lon <= 180.0 && lat >= -90.0 && lat <= 90.0;
}

double signed_area(const json& ring) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        s += ring[i][0].get<double>() * ring[i + 1][1].get<double>() - ring[i + 1][0].get<double>() * ring[i][1].get<double>();
    }
    return s / 2.0;
}

bool segments_cross(const json& a, const json& b, const json& c, const json& d) {
    auto orient = [](const json& p, const json& q, const json& r) {
        const double v = (q[0].get<double>() - p[0].get<double>()) * (r[1].get<double>() - p[1].get<double>()) -
                         (q[1].get<double>() - p[1].get<double>()) * (r[0].get<double>() - p[0].get<double>());
        return (v > 1e-12) - (v < -1e-12);
    };
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

std::string check_ring(const json& ring, bool exterior) {
    if (!ring.is_array() || ring.size() < 4) return "ring with fewer than 4 positions";
    for (const auto& p : ring) {
        if (!is_position(p)) return "bad position";
    }
    if (ring.front() != ring.back()) return "ring not closed";
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        if (std::abs(ring[i + 1][0].get<double>() - ring[i][0].get<double>()) > 180.0) return "edge crosses antimeridian";
    }
    const double area = signed_area(ring);
    if (exterior ? area <= 0.0 : area >= 0.0) return exterior ? "exterior ring not counterclockwise" : "hole not clockwise";
    const std::size_t n = ring.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_cross(ring[i], ring[i + 1], ring[j], ring[j + 1])) return "self-intersecting ring";
        }
    }
    return {};
}

std::string check_polygon(const json& rings) {
    if (!rings.is_array() || rings.empty()) return "polygon without rings";
    for (std::size_t i = 0; i < rings.size(); ++i) {
        if (auto e = check_ring(rings[i], i == 0); !e.empty()) return e;
    }
    return {};
}

std::string check_geometry(const json& g) {
    if (g.is_null()) return {};
    if (!g.is_object() || !g.contains("type") || !g.contains("coordinates")) return "geometry missing type/coordinates";
    const std::string type = g.at("type");
    const json& c = g.at("coordinates");
    if (type == "Point") return is_position(c) ? "" : "bad point";
    if (type == "LineString") {
        if (!c.is_array() || c.size() < 2) return "short linestring";
        for (const auto& p : c) {
            if (!is_position(p)) return "bad position";
        }
        return {};
    }
    if (type == "Polygon") return check_polygon(c);
    if (type == "MultiPolygon") {
        if (!c.is_array() || c.empty()) return "empty multipolygon";
        for (const auto& poly : c) {
            if (auto e = check_polygon(poly); !e.empty()) return e;
        }
        return {};
    }
    return "unexpected geometry type " + type;
}

std::string check_feature_collection(const json& fc) {
    if (!fc.is_object() || fc.value("type", "") != "FeatureCollection") return "not a FeatureCollection";
    if (!fc.contains("features") || !fc.at("features").is_array()) return "features is not an array";
    if (fc.at("features").empty()) return "no features";
    for (const auto& f : fc.at("features")) {
        if (!f.is_object() || f.value("type", "") != "Feature") return "member is not a Feature";
        if (!f.contains("geometry") || !f.contains("properties")) return "feature missing geometry/properties";
        if (!f.at("properties").is_object() && !f.at("properties").is_null()) return "properties not an object";
        if (auto e = check_geometry(f.at("geometry")); !e.empty()) return e;
    }
    return {};
}

// ---------------------------------------------------------------------------

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::string cmd = std::string("'") + RGSS_CLI_PATH + "' --config '" + kConfig + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    r.status = pclose(pipe);
    return r;
}

void ac10() {
    auto store = std::make_shared<CatalogStore>(load_catalog(kConfig));
    Service service(store);
    HttpServer server(service);
    const int port = server.bind("127.0.0.1:0");
    std::thread th([&] { server.run(); });
    httplib::Client client("127.0.0.1", port);
    client.set_read_timeout(120, 0);

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(kFixtures + "/queries")) files.push_back(e.path());
    std::sort(files.begin(), files.end());

    int identical = 0, geojson_checked = 0;
    std::string problems;
    for (const auto& f : files) {
        std::ifstream in(f);
        const json fx = json::parse(in);
        std::vector<std::string> args;
        for (const auto& a : fx.at("cli")) {
            std::string s = a;
            if (auto pos = s.find("{fixtures}"); pos != std::string::npos) s.replace(pos, 10, kFixtures);
            args.push_back(s);
        }
        const auto cli = run_cli(args);
        const auto res = client.Post(fx.at("endpoint").get<std::string>(), fx.at("body").dump(), "application/json");
        const std::string name = f.stem().string();
        if (!res || res->status != 200 || cli.status != 0) {
            problems += " " + name + ":error";
            continue;
        }
        const bool same = json::parse(cli.out) == json::parse(res->body);
        identical += same;
        if (!same) problems += " " + name + ":differs";
        if (fx.at("endpoint") == "/v1/geofence") {
            ++geojson_checked;
            if (auto e = check_feature_collection(json::parse(res->body)); !e.empty()) {
                problems += " " + name + ":geojson(" + e + ")";
            }
        }
    }
    server.stop();
    th.join();
    report("AC10", files.size() == 10 && identical == 10 && problems.empty() && geojson_checked > 0,
           std::to_string(identical) + "/" + std::to_string(files.size()) + " fixtures content-identical, " +
               std::to_string(geojson_checked) + " geofence outputs RFC 7946 checked" +
               (problems.empty() ? "" : ";" + problems));
}

}  // namespace

int main() {
    Catalog cat;
    try {
        cat = load_catalog(kConfig);
    } catch (const std::exception& e) {
        std::cout << "catalog failed to load: " << e.what() << std::endl;
        return 1;
    }
    criterion("AC1", [&] { ac1(cat); });
    criterion("AC2", [&] { ac2(cat); });
    criterion("AC3", [&] { ac3(cat); });
    criterion("AC4", [] { ac4(); });
    criterion("AC5", [] { ac5(); });
    criterion("AC6", [&] { ac6(cat); });
    criterion("AC7", [&] { ac7(cat); });
    criterion("AC8", [] { ac8(); });
    criterion("AC9", [] { ac9(); });
    criterion("AC10", [] { ac10(); });
    std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
