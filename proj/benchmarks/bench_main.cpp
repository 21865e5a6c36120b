#include <benchmark/benchmark.h>

#include <random>

#include "rgss/catalog.hpp"
#include "rgss/service.hpp"

using namespace rgss;

namespace {

const Catalog& shipped() {
    static const Catalog c = load_catalog(std::string(RGSS_DATA_DIR) + "/catalog.json");
    return c;
}

const Transmitter kTx{"ref", {42.0, -74.0}, {7.125, 7.475}};

void BM_Propagate(benchmark::State& state) {
    const auto& tle = lookup_satellite(shipped(), "amsr2").latest();
    const Sgp4Model model(tle);
    Instant t = tle.epoch;
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(model, tle, t));
        t += std::chrono::milliseconds(1500);
    }
}
BENCHMARK(BM_Propagate);

void BM_ScanlineIsDark(benchmark::State& state) {
    const auto& rec = lookup_satellite(shipped(), "amsr2");
    const auto s = propagate(rec.latest(), rec.latest().epoch);
    const Transmitter tx{"near", s.subpoint, kTx.tx_band};
    for (auto _ : state) {
        benchmark::DoNotOptimize(scanline_is_dark(s, rec.spec, rec.spec.bands[1], shipped().geofence, tx));
    }
}
BENCHMARK(BM_ScanlineIsDark);

void BM_DarkWindowsPerDay(benchmark::State& state) {
    const auto& rec = lookup_satellite(shipped(), "amsr2");
    const TimeInterval days{utc_midnight(2024, 11, 26), utc_midnight(2024, 11, 26) + std::chrono::days(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            compute_dark_windows(rec.latest(), rec.spec, rec.spec.bands[1], shipped().geofence, kTx, days, "amsr2"));
    }
}
BENCHMARK(BM_DarkWindowsPerDay)->Arg(1)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_MergeWindows(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> start(0, 86400), len(1, 60);
    const Instant t0 = utc_midnight(2024, 11, 26);
    std::vector<MergedWindow> in;
    for (int i = 0; i < state.range(0); ++i) {
        const int a = start(rng);
        in.push_back({t0 + std::chrono::seconds(a), t0 + std::chrono::seconds(a + len(rng)), {"s"}});
    }
    for (auto _ : state) benchmark::DoNotOptimize(merge_windows(in));
}
BENCHMARK(BM_MergeWindows)->Arg(100)->Arg(10000);

void BM_DarktimesQueryAllSatellites(benchmark::State& state) {
    const std::string body =
        R"({"location":{"lat":42.0,"lon":-74.0},"frequency":{"low_ghz":7.125,"high_ghz":7.475},"date":"2024-11-26"})";
    for (auto _ : state) benchmark::DoNotOptimize(api::darktimes(shipped(), body));
}
BENCHMARK(BM_DarktimesQueryAllSatellites)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
