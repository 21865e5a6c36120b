#include <random>
#include <tuple>

#include "doctest.h"
#include "rgss/error.hpp"
#include "rgss/mitigation.hpp"

using namespace rgss;
using namespace std::chrono_literals;

namespace {

// Window whose midpoint sits at `local` hours on 2024-11-26 for a UTC-5 site.
DarkTimeWindow window_at_local(double local) {
    const Instant mid = utc_midnight(2024, 11, 26) + from_seconds((local + 5.0) * 3600.0);
    return {"amsr2", mid - 10500ms, mid + 10500ms, 7, 1, 1.5, Direction::Descending};
}

CellSite site(std::string id, SessionCounts s, long spare) { return {std::move(id), "tx", s, spare, -5.0}; }

TrafficProfile flat(double load) { return {{{0.0, load}}}; }

// Lexicographically best handover allocation, found by enumeration.
std::tuple<long, long, long> brute_force_handover(SessionCounts active, long spare) {
    std::tuple<long, long, long> best{-1, -1, -1};
    for (long u = 0; u <= active.urllc; ++u) {
        for (long r = 0; r <= active.real_time; ++r) {
            for (long b = 0; b <= active.best_effort; ++b) {
                if (u + r + b <= spare) best = std::max(best, std::tuple{u, r, b});
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("diurnal_load default profile") {
    const auto p = TrafficProfile::defaults();
    CHECK(diurnal_load(4.0, p) >= 0.10);
    CHECK(diurnal_load(4.0, p) <= 0.15);
    CHECK(diurnal_load(21.0, p) == 1.0);
    CHECK(diurnal_load(17.5, p) == doctest::Approx((diurnal_load(14.0, p) + 1.0) / 2.0));
    CHECK(diurnal_load(24.0, p) == doctest::Approx(diurnal_load(0.0, p)));
    CHECK(diurnal_load(-1.0, p) == doctest::Approx(diurnal_load(23.0, p)));
    for (double h = 21.0; h < 28.0; h += 0.1) {
        CHECK(diurnal_load(h + 0.1, p) <= diurnal_load(h, p) + 1e-12);
    }
    for (double h = 14.0; h < 21.0; h += 0.1) {
        CHECK(diurnal_load(h + 0.1, p) >= diurnal_load(h, p) - 1e-12);
    }
    for (double h = 0.0; h < 24.0; h += 0.01) {
        const double v = diurnal_load(h, p);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(std::abs(diurnal_load(h + 0.001, p) - v) < 0.01);
    }
}

TEST_CASE("profile validation") {
    CHECK_NOTHROW(TrafficProfile::defaults().validate());
    CHECK_THROWS_AS(TrafficProfile{}.validate(), Error);
    CHECK_THROWS_AS((TrafficProfile{{{3.0, 0.2}, {2.0, 0.3}}}.validate()), Error);
    try {
        TrafficProfile{{{0.0, 1.2}}}.validate("profile.");
        FAIL("expected");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("profile.anchors[0].fraction") != std::string::npos);
    }
    MitigationPolicy bad;
    bad.handover_failure_probability = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("sleep window wraps") {
    MitigationPolicy p;
    CHECK(p.in_sleep_window(1.0));
    CHECK(p.in_sleep_window(4.99));
    CHECK_FALSE(p.in_sleep_window(5.0));
    p.sleep_start_hour = 23.0;
    p.sleep_end_hour = 2.0;
    CHECK(p.in_sleep_window(23.5));
    CHECK(p.in_sleep_window(1.0));
    CHECK_FALSE(p.in_sleep_window(12.0));
}

TEST_CASE("2 AM window sleeps every site") {
    const TrafficProfile profile{{{2.0, 0.12}, {14.0, 0.6}, {21.0, 1.0}}};
    MitigationPolicy policy;
    policy.handover_failure_probability = 0.01;
    const std::vector<CellSite> sites{site("a", {10, 50, 400}, 0), site("b", {5, 5, 5}, 1000)};
    const auto plan = plan_mitigation(window_at_local(2.0), sites, profile, policy);
    REQUIRE(plan.actions.size() == 2);
    for (const auto& a : plan.actions) {
        CHECK(a.kind == ActionKind::Sleep);
        CHECK(a.load == doctest::Approx(0.12));
        CHECK(a.local_hour == doctest::Approx(2.0));
        CHECK(a.impact == 0.0);
        CHECK(a.shed.total() == 0);
    }
    CHECK(plan.impact == 0.0);
    CHECK(impact_score(plan) == 0.0);
}

TEST_CASE("midday window hands over") {
    MitigationPolicy policy;
    policy.handover_failure_probability = 0.01;
    const auto w = window_at_local(13.5);
    SUBCASE("ample spare capacity") {
        const auto plan = plan_mitigation(w, {site("a", {100, 200, 700}, 10000)}, flat(0.5), policy);
        const auto& a = plan.actions.at(0);
        CHECK(a.kind == ActionKind::Handover);
        CHECK(a.active == SessionCounts{50, 100, 350});
        CHECK(a.handed_over == a.active);
        CHECK(plan.impact == doctest::Approx(500 * 0.01));
    }
    SUBCASE("spare covers URLLC and real-time only") {
        const auto plan = plan_mitigation(w, {site("a", {100, 200, 700}, 150)}, flat(0.5), policy);
        const auto& a = plan.actions.at(0);
        CHECK(a.kind == ActionKind::Shed);
        CHECK(a.handed_over == SessionCounts{50, 100, 0});
        CHECK(a.shed == SessionCounts{0, 0, 350});
        CHECK(plan.impact == doctest::Approx(350 + 150 * 0.01));
    }
    SUBCASE("night above threshold does not sleep") {
        const auto plan = plan_mitigation(window_at_local(2.0), {site("a", {1, 1, 1}, 10)}, flat(0.3), policy);
        CHECK(plan.actions.at(0).kind == ActionKind::Handover);
    }
}

TEST_CASE("impact_score arithmetic") {
    MitigationPlan p;
    p.handover_failure_probability = 0.01;
    SiteAction a;
    a.kind = ActionKind::Handover;
    a.handed_over = {0, 0, 100};
    p.actions = {a};
    CHECK(impact_score(p) == doctest::Approx(1.0));
    a.kind = ActionKind::Shed;
    a.handed_over = {};
    a.shed = {0, 0, 10};
    p.actions = {a};
    CHECK(impact_score(p) == 10.0);
    p.actions = {SiteAction{}};
    CHECK(impact_score(p) == 0.0);
}

TEST_CASE("rounding is half up") {
    CHECK(active_sessions({1, 3, 5}, 0.5) == SessionCounts{1, 2, 3});
    CHECK(active_sessions({10, 0, 0}, 0.149) == SessionCounts{1, 0, 0});
}

TEST_CASE("greedy fill matches enumeration oracle") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> n(0, 12), spare(0, 40);
    MitigationPolicy policy;
    policy.handover_failure_probability = 0.05;
    for (int i = 0; i < 300; ++i) {
        const SessionCounts s{n(rng), n(rng), n(rng)};
        const long cap = spare(rng);
        const auto a = plan_mitigation(window_at_local(13.5), {site("x", s, cap)}, flat(1.0), policy).actions.at(0);
        const auto [u, r, b] = brute_force_handover(s, cap);
        CHECK(a.handed_over == SessionCounts{u, r, b});
        CHECK(a.handed_over.total() + a.shed.total() == s.total());
        // A shed URLLC session means every lower class is fully shed.
        if (a.shed.urllc > 0) {
            CHECK(a.handed_over.real_time == 0);
            CHECK(a.handed_over.best_effort == 0);
        }
    }
}

TEST_CASE("impact monotonicity and scale equivariance") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> n(0, 400), spare(0, 1200);
    MitigationPolicy policy;
    policy.handover_failure_probability = 0.02;
    for (int i = 0; i < 200; ++i) {
        const SessionCounts s{n(rng), n(rng), n(rng)};
        const long cap = spare(rng);
        const auto w = window_at_local(13.5);
        const double base = plan_mitigation(w, {site("x", s, cap)}, flat(0.6), policy).impact;
        CHECK(plan_mitigation(w, {site("x", s, cap + 50)}, flat(0.6), policy).impact <= base + 1e-9);
        CHECK(plan_mitigation(w, {site("x", s, cap)}, flat(0.7), policy).impact >= base - 1e-9);

        // Loads of 1/4 on counts divisible by 4 keep the active estimate exact.
        const SessionCounts s4{4 * s.urllc, 4 * s.real_time, 4 * s.best_effort};
        const SessionCounts s8{8 * s.urllc, 8 * s.real_time, 8 * s.best_effort};
        const auto p1 = plan_mitigation(w, {site("x", s4, cap)}, flat(0.25), policy).actions.at(0);
        const auto p2 = plan_mitigation(w, {site("x", s8, 2 * cap)}, flat(0.25), policy).actions.at(0);
        CHECK(p2.shed == SessionCounts{2 * p1.shed.urllc, 2 * p1.shed.real_time, 2 * p1.shed.best_effort});
        CHECK(p2.handed_over.total() == 2 * p1.handed_over.total());
        CHECK(p2.impact == doctest::Approx(2 * p1.impact));
    }
}

TEST_CASE("sleep dominates regardless of spare capacity") {
    const TrafficProfile profile{{{0.0, 0.1}}};
    for (long cap : {0L, 10L, 100000L}) {
        const auto plan = plan_mitigation(window_at_local(3.0), {site("x", {500, 500, 500}, cap)}, profile, {});
        CHECK(plan.actions.at(0).kind == ActionKind::Sleep);
        CHECK(plan.impact == 0.0);
    }
}

TEST_CASE("invalid site rejected with field path") {
    try {
        plan_mitigation(window_at_local(12.0), {site("a", {1, 1, 1}, 1), site("b", {1, -1, 1}, 1)},
                        TrafficProfile::defaults(), {});
        FAIL("expected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SchemaViolation);
        CHECK(std::string(e.what()).find("sites[1].sessions.real_time") != std::string::npos);
    }
}
