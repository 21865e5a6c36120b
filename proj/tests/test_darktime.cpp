#include <algorithm>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "rgss/darktime.hpp"
#include "rgss/error.hpp"
#include "support/fixtures.hpp"

using namespace rgss;
using namespace std::chrono_literals;
using rgss::testing::amsr2_spec;
using rgss::testing::kSstBand;

namespace {

const TimeInterval kDay{utc_midnight(2024, 11, 26), utc_midnight(2024, 11, 27)};
const Transmitter kSite{"site", {42.0, -74.0}, {7.125, 7.475}};

double total_seconds(const std::vector<DarkTimeWindow>& ws) {
    double s = 0.0;
    for (const auto& w : ws) s += to_seconds(w.length());
    return s;
}

// Membership of a whole second on the grid anchored at `origin`.
std::vector<bool> rasterize(const std::vector<MergedWindow>& ws, Instant origin, int seconds) {
    std::vector<bool> bits(static_cast<std::size_t>(seconds), false);
    for (const auto& w : ws) {
        for (int i = 0; i < seconds; ++i) {
            const Instant t = origin + std::chrono::seconds(i);
            if (w.start <= t && t < w.end) bits[static_cast<std::size_t>(i)] = true;
        }
    }
    return bits;
}

}  // namespace

TEST_CASE("scanline_is_dark basic cases") {
    const auto spec = amsr2_spec();
    const auto s = rgss::testing::state_over({35.0, -60.0}, 705.0, 195.0);
    const SwathArc arc = scanline_arc(s, spec, kSstBand, {});
    const double hw = geofence_halfwidth(spec, kSstBand, {});

    SUBCASE("transmitter at the arc midpoint") {
        const Transmitter tx{"mid", arc.trace[arc.trace.size() / 2], {7.2, 7.3}};
        CHECK(scanline_is_dark(s, spec, kSstBand, {}, tx));
    }
    SUBCASE("transmitter just outside the half-width") {
        const double rho_km = kEarthRadiusKm * arc.radius_rad;
        for (double az : {0.0, 30.0, -45.0}) {
            const GeoPoint p = destination(s.subpoint, arc.heading_deg + az, rho_km + hw + 1.0);
            double brute = 1e9;
            for (double psi = -80.0; psi <= 80.0; psi += 0.002) {
                brute = std::min(brute, great_circle_km(p, boresight_ground_point(s, psi, spec.off_nadir_deg)));
            }
            REQUIRE(brute > hw);
            CHECK_FALSE(scanline_is_dark(s, spec, kSstBand, {}, {"out", p, {7.2, 7.3}}));
        }
    }
    SUBCASE("antipode of the subpoint") {
        const GeoPoint anti{-s.subpoint.lat_deg, normalize_lon(s.subpoint.lon_deg + 180.0)};
        CHECK_FALSE(scanline_is_dark(s, spec, kSstBand, {}, {"anti", anti, {7.2, 7.3}}));
    }
}

TEST_CASE("reference site windows") {
    const auto tle = rgss::testing::fixture_tle(38337);
    const auto spec = amsr2_spec();
    const auto ws = compute_dark_windows(tle, spec, kSstBand, {}, kSite, kDay, "amsr2");
    REQUIRE(ws.size() == 2);
    CHECK(ws[0].direction == Direction::Descending);
    CHECK(ws[1].direction == Direction::Ascending);
    int lines = 0;
    for (const auto& w : ws) {
        CHECK(w.satellite == "amsr2");
        CHECK(w.scanline_count >= 3);
        CHECK(w.guard_scanlines == 1);
        CHECK(to_seconds(w.length()) == doctest::Approx(w.scanline_count * spec.scan_period_s).epsilon(1e-6));
        lines += w.scanline_count;
    }
    CHECK(ws[0].end < ws[1].start);
    // passes/day x (core + 2 guard) x period lands near 21 s
    CHECK(std::abs(total_seconds(ws) - 21.0) <= 2 * spec.scan_period_s);
    CHECK(std::abs(lines - 14) <= 3);
}

TEST_CASE("degenerate ranges and closed loop") {
    const auto tle = rgss::testing::fixture_tle(38337);
    auto spec = amsr2_spec();
    CHECK(compute_dark_windows(tle, spec, kSstBand, {}, kSite, {kDay.start, kDay.start}).empty());
    CHECK_THROWS_AS(compute_dark_windows(tle, spec, kSstBand, {}, kSite, {kDay.end, kDay.start}), Error);
    spec.open_loop = false;
    const auto ws = compute_dark_windows(tle, spec, kSstBand, {}, kSite, kDay);
    REQUIRE(!ws.empty());
    for (const auto& w : ws) {
        CHECK(w.guard_scanlines == 0);
        CHECK(w.scanline_count >= 1);
        CHECK(w.satellite == "38337");
    }
}

TEST_CASE("coverage soundness on a per-scan-line sweep") {
    const auto tle = rgss::testing::fixture_tle(38337);
    const auto spec = amsr2_spec();
    const Sgp4Model model(tle);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lat(25.0, 50.0), lon(-100.0, -60.0);
    for (int trial = 0; trial < 3; ++trial) {
        const Transmitter tx{"rnd", {lat(rng), lon(rng)}, {7.2, 7.3}};
        CAPTURE(tx.location.lat_deg);
        CAPTURE(tx.location.lon_deg);
        const auto ws = compute_dark_windows(tle, spec, kSstBand, {}, tx, kDay);
        const Duration period = from_seconds(spec.scan_period_s);
        // Sweep at a quarter-line phase offset so the grid differs from the engine's.
        for (Instant t = kDay.start + period / 4; t < kDay.end; t += period) {
            const auto s = propagate(model, tle, t);
            if (great_circle_km(s.subpoint, tx.location) > 1200.0) continue;
            if (!scanline_is_dark(s, spec, kSstBand, {}, tx)) continue;
            bool covered = false;
            for (const auto& w : ws) {
                const Instant core_start = w.start + w.guard_scanlines * period;
                const Instant core_end = w.end - w.guard_scanlines * period;
                covered |= core_start <= t && t <= core_end;
            }
            CHECK(covered);
        }
        for (const auto& w : ws) {
            // Core lines touch a dark instant; guard lines do not.
            for (int k = 0; k < w.scanline_count; ++k) {
                const Instant ls = w.start + k * period;
                bool any = false;
                for (Instant t = ls; t <= ls + period; t += 10ms) {
                    any |= scanline_is_dark(propagate(model, tle, t), spec, kSstBand, {}, tx);
                }
                const bool guard = k < w.guard_scanlines || k >= w.scanline_count - w.guard_scanlines;
                CHECK(any == !guard);
            }
        }
    }
}

TEST_CASE("enlarging the geofence never shrinks dark time") {
    const auto tle = rgss::testing::fixture_tle(38337);
    const auto spec = amsr2_spec();
    const Transmitter tx{"m", {39.0, -76.5}, {7.2, 7.3}};
    double prev = 0.0;
    std::vector<DarkTimeWindow> prev_ws;
    for (const GeofenceSpec gf : {GeofenceSpec{1.0, 0, 1}, GeofenceSpec{2.0, 0, 1}, GeofenceSpec{2.0, 1, 1},
                                  GeofenceSpec{3.0, 1, 1}, GeofenceSpec{3.0, 2, 1}}) {
        const auto ws = compute_dark_windows(tle, spec, kSstBand, gf, tx, kDay);
        const double total = total_seconds(ws);
        CHECK(total >= prev);
        for (const auto& old : prev_ws) {
            bool contained = false;
            for (const auto& w : ws) contained |= w.start <= old.start && old.end <= w.end;
            CHECK(contained);
        }
        prev = total;
        prev_ws = ws;
    }
}

TEST_CASE("merge_windows") {
    const Instant t0 = kDay.start + 10h;
    auto mw = [&](int a_min, int b_min, std::string sat = "x") {
        return MergedWindow{t0 + std::chrono::minutes(a_min), t0 + std::chrono::minutes(b_min), {sat}};
    };
    SUBCASE("identical windows collapse") {
        const auto out = merge_windows({mw(0, 10), mw(0, 10)});
        REQUIRE(out.size() == 1);
        CHECK(out[0].length() == 10min);
    }
    SUBCASE("overlap") {
        const auto out = merge_windows({mw(0, 10, "a"), mw(5, 20, "b")});
        REQUIRE(out.size() == 1);
        CHECK(out[0].start == t0);
        CHECK(out[0].end == t0 + 20min);
        CHECK(out[0].satellites == std::vector<std::string>{"a", "b"});
    }
    SUBCASE("per-satellite lists") {
        DarkTimeWindow a{"a", t0, t0 + 21s, 14, 1, 1.5, Direction::Ascending};
        DarkTimeWindow b{"b", t0 + 1h, t0 + 1h + 21s, 14, 1, 1.5, Direction::Descending};
        const auto out = merge_windows(std::vector<std::vector<DarkTimeWindow>>{{a}, {b}, {a}});
        REQUIRE(out.size() == 2);
        CHECK(out[0].satellites == std::vector<std::string>{"a"});
    }
    SUBCASE("disjoint inputs against a 1 s raster") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<MergedWindow> in;
            int cursor = 0;
            double total = 0.0;
            for (int i = 0; i < 8; ++i) {
                cursor += 1 + static_cast<int>(rng() % 200);
                const int len = 1 + static_cast<int>(rng() % 100);
                in.push_back({t0 + std::chrono::seconds(cursor), t0 + std::chrono::seconds(cursor + len), {"s"}});
                total += len;
                cursor += len;
            }
            std::shuffle(in.begin(), in.end(), rng);
            const auto out = merge_windows(in);
            double merged = 0.0;
            for (const auto& w : out) merged += to_seconds(w.length());
            CHECK(merged == doctest::Approx(total));
            CHECK(rasterize(out, t0, cursor + 5) == rasterize(in, t0, cursor + 5));
        }
    }
}

TEST_CASE("availability") {
    const TimeInterval period = kDay;
    CHECK(availability({}, period).availability == 1.0);
    CHECK(availability({{period.start, period.end, {"a"}}}, period).availability == 0.0);
    CHECK(availability({{period.start - 1h, period.end + 1h, {"a"}}}, period).availability == 0.0);
    CHECK_THROWS_AS(availability({}, {period.start, period.start}), Error);

    const Instant t = period.start + 3h;
    const std::vector<MergedWindow> ws{{t, t + 21s, {"a"}}, {t + 5h, t + 5h + 21s, {"b"}}};
    const auto r = availability(ws, period);
    CHECK(r.total_dark_s == doctest::Approx(42.0));
    CHECK(r.availability == doctest::Approx(1.0 - 42.0 / 86400.0));
    const std::vector<MergedWindow> swapped{ws[1], ws[0]};
    CHECK(availability(swapped, period).availability == r.availability);
    const std::vector<MergedWindow> split{{t, t + 10s, {"a"}}, {t + 10s, t + 21s, {"a"}}, ws[1]};
    CHECK(availability(split, period).availability == r.availability);
    CHECK(availability(split, period).windows.size() == 2);
}

TEST_CASE("band_overlap") {
    const MeasurementBand sst{7.3, 0.35};
    CHECK(band_overlap({7.125, 7.475}, sst));
    CHECK_FALSE(band_overlap({7.5, 7.6}, sst));
    CHECK_FALSE(band_overlap({7.475, 7.5}, sst));
    CHECK(band_overlap({7.475, 7.5}, sst, 0.01));
    CHECK_FALSE(band_overlap({6.0, 7.125}, sst));
    CHECK(band_overlap({7.0, 7.2}, sst));
    CHECK_THROWS_AS(band_overlap({7.0, 7.2}, sst, -0.1), Error);

    SUBCASE("agrees with interval arithmetic") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> mhz(6900, 7700), w(1, 200), g(0, 50);
        for (int i = 0; i < 2000; ++i) {
            const int lo = mhz(rng), hi = lo + w(rng), guard = g(rng);
            // Oracle in integer MHz: widened [lo-g, hi+g] against [7125, 7475].
            const bool expect = std::min(hi + guard, 7475) > std::max(lo - guard, 7125);
            CHECK(band_overlap({lo / 1000.0, hi / 1000.0}, sst, guard / 1000.0) == expect);
        }
    }
}

TEST_CASE("coastal filter") {
    const std::string path = rgss::testing::data_root() + "/coastline/us_east_great_lakes.geojson";
    const CoastlineSet all = load_coastline_file(path);
    const auto spec = amsr2_spec();
    const double threshold = coastal_threshold_km(spec, kSstBand, {});
    CHECK(threshold == doctest::Approx(180.0).epsilon(0.02));

    const GeoPoint coast_vertex{39.8, -74.1};
    const Transmitter near_coast{"nj", destination(coast_vertex, 270.0, 50.0), {7.2, 7.3}};
    const Transmitter inland{"tn", {36.5, -86.0}, {7.2, 7.3}};
    const Transmitter chicago{"chi", {41.88, -87.63}, {7.2, 7.3}};
    CHECK(distance_to_coastline_km(all, near_coast.location) <= 50.0 + 1e-6);
    CHECK(distance_to_coastline_km(all, inland.location) >= 500.0);

    const auto kept = coastal_filter({near_coast, inland, chicago}, all, spec, kSstBand, {});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].id == "nj");
    CHECK(kept[1].id == "chi");

    SUBCASE("without the lakes the lake shore drops out") {
        auto doc = nlohmann::json::parse(rgss::testing::read_file(path));
        auto& fs = doc["features"];
        fs.erase(std::remove_if(fs.begin(), fs.end(), [](const auto& f) { return f["properties"]["kind"] != "ocean"; }),
                 fs.end());
        const CoastlineSet ocean = parse_coastline_geojson(doc.dump());
        const auto k2 = coastal_filter({near_coast, inland, chicago}, ocean, spec, kSstBand, {});
        REQUIRE(k2.size() == 1);
        CHECK(k2[0].id == "nj");
    }

    SUBCASE("tie at the threshold is inside") {
        const CoastlineSet single{{{{0.0, 0.0}, {0.0, 0.0}}}};
        const Transmitter edge{"edge", destination({0.0, 0.0}, 90.0, threshold), {7.2, 7.3}};
        CHECK(distance_to_coastline_km(single, edge.location) == doctest::Approx(threshold));
    }

    SUBCASE("monotone in pixel scale") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> lat(30.0, 47.0), lon(-90.0, -68.0);
        std::vector<Transmitter> txs;
        for (int i = 0; i < 200; ++i) txs.push_back({"t" + std::to_string(i), {lat(rng), lon(rng)}, {7.2, 7.3}});
        std::size_t prev = 0;
        for (double scale : {1.0, 1.5, 2.0, 2.5, 3.0}) {
            const auto k = coastal_filter(txs, all, spec, kSstBand, {scale, 1, 1});
            CHECK(k.size() >= prev);
            prev = k.size();
        }
    }

    SUBCASE("invalid geometry") {
        CHECK_THROWS_AS(coastal_filter({inland}, CoastlineSet{}, spec, kSstBand, {}), Error);
        CHECK_THROWS_AS(parse_coastline_geojson(R"({"type":"LineString","coordinates":[[0,0]]})"), Error);
        CHECK_THROWS_AS(parse_coastline_geojson(R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1]]]})"),
                        Error);
        CHECK_THROWS_AS(parse_coastline_geojson("not json"), Error);
    }
}
