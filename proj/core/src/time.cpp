#include "rgss/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "rgss/error.hpp"

namespace rgss {

namespace {

constexpr double kUnixEpochJd = 2440587.5;
constexpr double kMicrosPerDay = 86400.0e6;

[[noreturn]] void bad_timestamp(std::string_view text) {
    throw Error(ErrorCode::InvalidArgument, "invalid ISO-8601 timestamp '" + std::string(text) + "'");
}

int read_int(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
    if (pos + len > text.size()) bad_timestamp(whole);
    int value = 0;
    auto first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc() || ptr != first + len) bad_timestamp(whole);
    return value;
}

}  // namespace

double to_seconds(Duration d) { return static_cast<double>(d.count()) * 1e-6; }

Duration from_seconds(double seconds) { return Duration(static_cast<std::int64_t>(std::llround(seconds * 1e6))); }

JulianDate to_julian(Instant t) {
    using namespace std::chrono;
    const auto day_start = floor<days>(t);
    const double whole_days = static_cast<double>(day_start.time_since_epoch().count());
    const double frac = static_cast<double>((t - day_start).count()) / kMicrosPerDay;
    // Julian days start at noon; keep the whole part on a .5 boundary like Vallado's jday.
    return {whole_days + kUnixEpochJd, frac};
}

Instant from_julian(double jd_day, double jd_fraction) {
    const double days_since_unix = (jd_day - kUnixEpochJd) + jd_fraction;
    const double whole = std::floor(days_since_unix);
    const double frac = days_since_unix - whole;
    const auto base = Instant(std::chrono::duration_cast<Duration>(std::chrono::days(static_cast<long>(whole))));
    return base + Duration(static_cast<std::int64_t>(std::llround(frac * kMicrosPerDay)));
}

std::string format_iso8601(Instant t) {
    using namespace std::chrono;
    const auto ms = floor<milliseconds>(t);
    const auto day = floor<days>(ms);
    const year_month_day ymd{day};
    const hh_mm_ss hms{ms - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()), static_cast<int>(hms.subseconds().count()));
    return buf;
}

Instant utc_midnight(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) {
        throw Error(ErrorCode::InvalidArgument, "invalid calendar date");
    }
    return Instant(sys_days(ymd));
}

Instant parse_iso8601(std::string_view text) {
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') bad_timestamp(text);
    const int y = read_int(text, 0, 4, text);
    const int mo = read_int(text, 5, 2, text);
    const int d = read_int(text, 8, 2, text);
    if (mo < 1 || mo > 12 || d < 1 || d > 31) bad_timestamp(text);
    Instant t;
    try {
        t = utc_midnight(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
    } catch (const Error&) {
        bad_timestamp(text);
    }
    if (text.size() == 10) return t;

    if (text[10] != 'T' && text[10] != ' ') bad_timestamp(text);
    if (text.size() < 16 || text[13] != ':') bad_timestamp(text);
    const int hh = read_int(text, 11, 2, text);
    const int mm = read_int(text, 14, 2, text);
    std::size_t pos = 16;
    std::int64_t micros = 0;
    int ss = 0;
    if (pos < text.size() && text[pos] == ':') {
        ss = read_int(text, pos + 1, 2, text);
        pos += 3;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            std::int64_t scale = 100000;
            const std::size_t digits_start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                micros += (text[pos] - '0') * scale;
                scale /= 10;
                ++pos;
            }
            if (pos == digits_start) bad_timestamp(text);
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) bad_timestamp(text);

    std::int64_t offset_minutes = 0;
    if (pos < text.size()) {
        const char c = text[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            if (pos + 6 != text.size() || text[pos + 3] != ':') bad_timestamp(text);
            const int oh = read_int(text, pos + 1, 2, text);
            const int om = read_int(text, pos + 4, 2, text);
            offset_minutes = (c == '+' ? 1 : -1) * (oh * 60 + om);
            pos += 6;
        }
    }
    if (pos != text.size()) bad_timestamp(text);

    using namespace std::chrono;
    t += hours(hh) + minutes(mm) + seconds(ss) + microseconds(micros);
    t -= minutes(offset_minutes);
    return t;
}

double local_hour(Instant t, double utc_offset_hours) {
    using namespace std::chrono;
    const auto local = t + from_seconds(utc_offset_hours * 3600.0);
    const auto since_midnight = local - floor<days>(local);
    double h = to_seconds(since_midnight) / 3600.0;
    if (h >= 24.0) h -= 24.0;
    return h;
}

}  // namespace rgss
