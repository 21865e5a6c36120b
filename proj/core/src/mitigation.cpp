#include "rgss/mitigation.hpp"

#include <algorithm>
#include <cmath>

#include "rgss/error.hpp"

namespace rgss {

namespace {

[[noreturn]] void schema(std::string_view path, const std::string& field, const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, std::string(path) + field + ": " + what);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

double wrap_hour(double h) {
    h = std::fmod(h, 24.0);
    return h < 0.0 ? h + 24.0 : h;
}

}  // namespace

TrafficProfile TrafficProfile::defaults() {
    return {{{0.0, 0.30}, {2.0, 0.14}, {4.0, 0.125}, {9.0, 0.45}, {14.0, 0.55}, {21.0, 1.0}}};
}

void TrafficProfile::validate(std::string_view path) const {
    if (anchors.empty()) schema(path, "anchors", "at least one anchor required");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const std::string at = "anchors[" + std::to_string(i) + "]";
        if (!(anchors[i].hour >= 0.0 && anchors[i].hour < 24.0)) schema(path, at + ".hour", "must be in [0, 24)");
        if (!in_unit(anchors[i].fraction)) schema(path, at + ".fraction", "must be in [0, 1]");
        if (i > 0 && !(anchors[i].hour > anchors[i - 1].hour)) schema(path, at + ".hour", "hours must increase");
    }
}

double diurnal_load(double local_hour, const TrafficProfile& profile) {
    const auto& a = profile.anchors;
    if (a.empty()) throw Error(ErrorCode::InvalidArgument, "traffic profile has no anchors");
    if (a.size() == 1) return a.front().fraction;
    const double h = wrap_hour(local_hour);
    auto it = std::upper_bound(a.begin(), a.end(), h, [](double v, const LoadAnchor& x) { return v < x.hour; });
    // Segment endpoints, wrapping from the last anchor to the first one a day later.
    const LoadAnchor lo = it == a.begin() ? LoadAnchor{a.back().hour - 24.0, a.back().fraction} : *(it - 1);
    const LoadAnchor hi = it == a.end() ? LoadAnchor{a.front().hour + 24.0, a.front().fraction} : *it;
    const double f = (h - lo.hour) / (hi.hour - lo.hour);
    return lo.fraction + f * (hi.fraction - lo.fraction);
}

std::string_view to_string(ServiceClass c) {
    switch (c) {
        case ServiceClass::Urllc: return "urllc";
        case ServiceClass::RealTime: return "real_time";
        case ServiceClass::BestEffort: return "best_effort";
    }
    return "unknown";
}

long& SessionCounts::operator[](ServiceClass c) {
    switch (c) {
        case ServiceClass::Urllc: return urllc;
        case ServiceClass::RealTime: return real_time;
        case ServiceClass::BestEffort: break;
    }
    return best_effort;
}

long SessionCounts::operator[](ServiceClass c) const {
    switch (c) {
        case ServiceClass::Urllc: return urllc;
        case ServiceClass::RealTime: return real_time;
        case ServiceClass::BestEffort: break;
    }
    return best_effort;
}

void CellSite::validate(std::string_view path) const {
    if (id.empty()) schema(path, "id", "must not be empty");
    if (sessions.urllc < 0) schema(path, "sessions.urllc", "must be >= 0");
    if (sessions.real_time < 0) schema(path, "sessions.real_time", "must be >= 0");
    if (sessions.best_effort < 0) schema(path, "sessions.best_effort", "must be >= 0");
    if (spare_capacity < 0) schema(path, "spare_capacity", "must be >= 0");
    if (!(std::abs(utc_offset_hours) <= 14.0)) schema(path, "utc_offset_hours", "must be within +/-14");
}

std::string_view to_string(HandoverMechanism m) { return m == HandoverMechanism::Daps ? "daps" : "l1l2"; }

void MitigationPolicy::validate(std::string_view path) const {
    if (!(sleep_start_hour >= 0.0 && sleep_start_hour < 24.0)) schema(path, "sleep_start_hour", "must be in [0, 24)");
    if (!(sleep_end_hour >= 0.0 && sleep_end_hour <= 24.0)) schema(path, "sleep_end_hour", "must be in [0, 24]");
    if (!in_unit(sleep_load_threshold)) schema(path, "sleep_load_threshold", "must be in [0, 1]");
    if (!in_unit(handover_failure_probability)) schema(path, "handover_failure_probability", "must be in [0, 1]");
}

bool MitigationPolicy::in_sleep_window(double local_hour) const {
    const double h = wrap_hour(local_hour);
    if (sleep_start_hour <= sleep_end_hour) return h >= sleep_start_hour && h < sleep_end_hour;
    return h >= sleep_start_hour || h < sleep_end_hour;
}

std::string_view to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Sleep: return "sleep";
        case ActionKind::Handover: return "handover";
        case ActionKind::Shed: return "shed";
    }
    return "unknown";
}

SessionCounts active_sessions(const SessionCounts& configured, double load) {
    SessionCounts out;
    for (ServiceClass c : kClassPriority) {
        out[c] = static_cast<long>(std::floor(static_cast<double>(configured[c]) * load + 0.5));
    }
    return out;
}

MitigationPlan plan_mitigation(const DarkTimeWindow& window, const std::vector<CellSite>& sites,
                               const TrafficProfile& profile, const MitigationPolicy& policy) {
    profile.validate();
    policy.validate();
    MitigationPlan plan;
    plan.satellite = window.satellite;
    plan.window_start = window.start;
    plan.window_end = window.end;
    plan.handover_failure_probability = policy.handover_failure_probability;
    const Instant mid = window.start + (window.end - window.start) / 2;

    for (std::size_t i = 0; i < sites.size(); ++i) {
        const CellSite& site = sites[i];
        site.validate("sites[" + std::to_string(i) + "].");
        SiteAction a;
        a.site_id = site.id;
        a.mechanism = policy.mechanism;
        a.local_hour = local_hour(mid, site.utc_offset_hours);
        a.load = diurnal_load(a.local_hour, profile);
        a.active = active_sessions(site.sessions, a.load);
        if (policy.in_sleep_window(a.local_hour) && a.load <= policy.sleep_load_threshold) {
            a.kind = ActionKind::Sleep;
        } else {
            long room = site.spare_capacity;
            for (ServiceClass c : kClassPriority) {
                a.handed_over[c] = std::min(a.active[c], room);
                a.shed[c] = a.active[c] - a.handed_over[c];
                room -= a.handed_over[c];
            }
            a.kind = a.shed.total() > 0 ? ActionKind::Shed : ActionKind::Handover;
            a.impact = static_cast<double>(a.shed.total()) +
                       static_cast<double>(a.handed_over.total()) * policy.handover_failure_probability;
        }
        plan.actions.push_back(std::move(a));
    }
    plan.impact = impact_score(plan);
    return plan;
}

double impact_score(const MitigationPlan& plan) {
    double total = 0.0;
    for (const auto& a : plan.actions) {
        if (a.kind == ActionKind::Sleep) continue;
        total += static_cast<double>(a.shed.total()) +
                 static_cast<double>(a.handed_over.total()) * plan.handover_failure_probability;
    }
    return total;
}

}  // namespace rgss
