#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace rgss {

/// UTC instant with microsecond resolution. Leap seconds are ignored
/// (POSIX time), which is also what SGP4 element epochs assume.
using Instant = std::chrono::sys_time<std::chrono::microseconds>;
using Duration = std::chrono::microseconds;

struct TimeInterval {
    Instant start;
    Instant end;

    Duration length() const { return end - start; }
    bool empty() const { return end <= start; }
    bool contains(Instant t) const { return start <= t && t <= end; }
};

double to_seconds(Duration d);
Duration from_seconds(double seconds);

/// Full Julian date split as (whole, fraction) to keep precision.
struct JulianDate {
    double day;
    double fraction;

    double value() const { return day + fraction; }
};

JulianDate to_julian(Instant t);
Instant from_julian(double jd_day, double jd_fraction);

/// ISO-8601 with millisecond precision, always `Z`: 2024-11-26T07:04:12.500Z
std::string format_iso8601(Instant t);

/// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM[:SS[.fff]]` with optional `Z`
/// or `+HH:MM` offset. Throws rgss::Error(InvalidArgument) otherwise.
Instant parse_iso8601(std::string_view text);

/// Midnight UTC of the given civil date.
Instant utc_midnight(int year, unsigned month, unsigned day);

/// Fractional hour of day in [0, 24) at the given UTC offset.
double local_hour(Instant t, double utc_offset_hours);

}  // namespace rgss
