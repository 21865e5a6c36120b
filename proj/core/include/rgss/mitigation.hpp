#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rgss/darktime.hpp"

namespace rgss {

struct LoadAnchor {
    double hour = 0.0;      // local hour in [0, 24)
    double fraction = 0.0;  // of peak load

    friend bool operator==(const LoadAnchor&, const LoadAnchor&) = default;
};

/// Piecewise-linear diurnal load curve, periodic over 24 h.
struct TrafficProfile {
    std::vector<LoadAnchor> anchors;  // strictly increasing hours

    /// Trough of 0.125 at 04:00, linear ramp from 14:00 to the 21:00 peak,
    /// monotone descent from 21:00 back to 04:00.
    static TrafficProfile defaults();

    void validate(std::string_view path = {}) const;

    friend bool operator==(const TrafficProfile&, const TrafficProfile&) = default;
};

/// Fraction of peak load at `local_hour`. Hours outside [0, 24) wrap.
double diurnal_load(double local_hour, const TrafficProfile& profile);

enum class ServiceClass { Urllc, RealTime, BestEffort };
std::string_view to_string(ServiceClass c);

struct SessionCounts {
    long urllc = 0;
    long real_time = 0;
    long best_effort = 0;

    long total() const { return urllc + real_time + best_effort; }
    long& operator[](ServiceClass c);
    long operator[](ServiceClass c) const;

    friend bool operator==(const SessionCounts&, const SessionCounts&) = default;
};

/// Order in which sessions are protected.
inline constexpr ServiceClass kClassPriority[] = {ServiceClass::Urllc, ServiceClass::RealTime,
                                                  ServiceClass::BestEffort};

struct CellSite {
    std::string id;
    std::string transmitter_id;
    SessionCounts sessions;      // configured (peak) sessions per class
    long spare_capacity = 0;     // sessions the alternate band can absorb
    double utc_offset_hours = 0.0;

    void validate(std::string_view path = {}) const;
};

enum class HandoverMechanism { Daps, L1L2 };
std::string_view to_string(HandoverMechanism m);

struct MitigationPolicy {
    double sleep_start_hour = 1.0;  // local, wraps past midnight if start > end
    double sleep_end_hour = 5.0;
    double sleep_load_threshold = 0.15;
    double handover_failure_probability = 0.0;
    HandoverMechanism mechanism = HandoverMechanism::Daps;

    void validate(std::string_view path = {}) const;
    bool in_sleep_window(double local_hour) const;
};

enum class ActionKind { Sleep, Handover, Shed };
std::string_view to_string(ActionKind k);

struct SiteAction {
    std::string site_id;
    ActionKind kind = ActionKind::Sleep;  // Shed: handover with some sessions dropped
    HandoverMechanism mechanism = HandoverMechanism::Daps;
    double local_hour = 0.0;
    double load = 0.0;
    SessionCounts active;
    SessionCounts handed_over;
    SessionCounts shed;
    double impact = 0.0;
};

struct MitigationPlan {
    std::string satellite;
    Instant window_start;
    Instant window_end;
    double handover_failure_probability = 0.0;
    std::vector<SiteAction> actions;
    double impact = 0.0;
};

/// Active sessions per class: configured counts x load, rounded half up.
SessionCounts active_sessions(const SessionCounts& configured, double load);

/// Local time is taken at the window midpoint. Sites sleep when that time is
/// inside the sleep window and the load is at or below the threshold;
/// otherwise every active session is handed over in priority order until the
/// spare capacity runs out, and the rest is shed.
MitigationPlan plan_mitigation(const DarkTimeWindow& window, const std::vector<CellSite>& sites,
                               const TrafficProfile& profile, const MitigationPolicy& policy);

/// Shed sessions plus handed-over sessions times the failure probability.
double impact_score(const MitigationPlan& plan);

}  // namespace rgss
