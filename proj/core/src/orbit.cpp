#include "rgss/orbit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "rgss/error.hpp"

namespace rgss {

namespace {

constexpr std::size_t kLineLength = 69;
// Earth rotation rate used for the TEME -> Earth-fixed velocity term (rad/s).
constexpr double kEarthRotation = 7.292115146706979e-5;

[[noreturn]] void tle_error(ErrorCode code, int line_no, const std::string& what) {
    throw Error(code, "TLE line " + std::to_string(line_no) + ": " + what);
}

std::string_view strip_cr(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double field_double(std::string_view line, std::size_t col, std::size_t len, int line_no, const char* name) {
    std::string_view f = trim(line.substr(col - 1, len));
    if (f.empty()) tle_error(ErrorCode::TleFormat, line_no, std::string("empty field ") + name);
    std::string buf(f);
    // from_chars rejects a leading '+' and a bare leading '.'; normalise first.
    if (buf.front() == '+') buf.erase(0, 1);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) {
        tle_error(ErrorCode::TleFormat, line_no, std::string("bad numeric field ") + name + " '" + buf + "'");
    }
    return v;
}

int field_int(std::string_view line, std::size_t col, std::size_t len, int line_no, const char* name) {
    std::string_view f = trim(line.substr(col - 1, len));
    int v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        tle_error(ErrorCode::TleFormat, line_no, std::string("bad integer field ") + name);
    }
    return v;
}

// " 12345-3" style: sign, mantissa with implied leading decimal point, exponent.
double field_exp(std::string_view line, std::size_t col, int line_no, const char* name) {
    std::string_view f = line.substr(col - 1, 8);
    if (trim(f).empty()) return 0.0;
    const char sign = f[0];
    std::string_view mant = trim(f.substr(1, 5));
    std::string_view ex = trim(f.substr(6, 2));
    if (sign != ' ' && sign != '-' && sign != '+') {
        tle_error(ErrorCode::TleFormat, line_no, std::string("bad sign in ") + name);
    }
    int m = 0, e = 0;
    auto r1 = std::from_chars(mant.data(), mant.data() + mant.size(), m);
    std::string exs(ex);
    if (!exs.empty() && exs.front() == '+') exs.erase(0, 1);
    auto r2 = std::from_chars(exs.data(), exs.data() + exs.size(), e);
    if (mant.empty() || r1.ec != std::errc() || r1.ptr != mant.data() + mant.size() || exs.empty() ||
        r2.ec != std::errc() || r2.ptr != exs.data() + exs.size()) {
        tle_error(ErrorCode::TleFormat, line_no, std::string("bad exponent field ") + name);
    }
    const double v = (m / std::pow(10.0, static_cast<double>(mant.size()))) * std::pow(10.0, e);
    return sign == '-' ? -v : v;
}

void check_data_line(std::string_view line, char expected, int line_no, bool verify_checksum) {
    if (line.size() < kLineLength) {
        tle_error(ErrorCode::TleLength, line_no,
                  "expected 69 characters, got " + std::to_string(line.size()));
    }
    if (line[0] != expected || line[1] != ' ') {
        tle_error(ErrorCode::TleFormat, line_no, std::string("expected line number '") + expected + "'");
    }
    if (verify_checksum) {
        const char c = line[68];
        if (c < '0' || c > '9' || tle_checksum(line) != c - '0') {
            tle_error(ErrorCode::TleChecksum, line_no,
                      "checksum mismatch (computed " + std::to_string(tle_checksum(line)) + ")");
        }
    }
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        line = strip_cr(line);
        if (!trim(line).empty()) out.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

TwoLineElements decode(std::string_view name, std::string_view l1, std::string_view l2, int first_line_no,
                       TleParseOptions options) {
    const int n1 = first_line_no;
    const int n2 = first_line_no + 1;
    check_data_line(l1, '1', n1, options.verify_checksum);
    check_data_line(l2, '2', n2, options.verify_checksum);
    l1 = l1.substr(0, kLineLength);
    l2 = l2.substr(0, kLineLength);

    TwoLineElements tle;
    tle.name = std::string(trim(name));
    if (!tle.name.empty() && tle.name.rfind("0 ", 0) == 0) tle.name = std::string(trim(tle.name.substr(2)));
    tle.line1 = std::string(l1);
    tle.line2 = std::string(l2);

    tle.norad_id = field_int(l1, 3, 5, n1, "catalog number");
    const int id2 = field_int(l2, 3, 5, n2, "catalog number");
    if (id2 != tle.norad_id) {
        tle_error(ErrorCode::TleCatalogMismatch, n2,
                  "catalog number " + std::to_string(id2) + " differs from line 1 (" +
                      std::to_string(tle.norad_id) + ")");
    }

    const int yy = field_int(l1, 19, 2, n1, "epoch year");
    const double epoch_days = field_double(l1, 21, 12, n1, "epoch day");
    if (epoch_days < 1.0 || epoch_days >= 367.0) tle_error(ErrorCode::TleFormat, n1, "epoch day out of range");
    const int year = yy < 57 ? 2000 + yy : 1900 + yy;
    tle.mean_motion_dot = field_double(l1, 34, 10, n1, "mean motion derivative");
    tle.mean_motion_ddot = field_exp(l1, 45, n1, "mean motion second derivative");
    tle.bstar = field_exp(l1, 54, n1, "bstar");

    tle.inclination_deg = field_double(l2, 9, 8, n2, "inclination");
    tle.raan_deg = field_double(l2, 18, 8, n2, "right ascension");
    tle.eccentricity = field_double(l2, 27, 7, n2, "eccentricity") * 1e-7;
    tle.arg_perigee_deg = field_double(l2, 35, 8, n2, "argument of perigee");
    tle.mean_anomaly_deg = field_double(l2, 44, 8, n2, "mean anomaly");
    tle.mean_motion_rev_per_day = field_double(l2, 53, 11, n2, "mean motion");
    if (tle.mean_motion_rev_per_day <= 0.0) tle_error(ErrorCode::TleFormat, n2, "mean motion must be positive");
    if (tle.eccentricity < 0.0 || tle.eccentricity >= 1.0) tle_error(ErrorCode::TleFormat, n2, "eccentricity out of range");

    // Day 1.0 is 00:00 on 1 January.
    const Instant jan1 = utc_midnight(year, 1, 1);
    const JulianDate jan1_jd = to_julian(jan1);
    const double whole = std::floor(epoch_days);
    tle.epoch_jd = {jan1_jd.day + (whole - 1.0), epoch_days - whole};
    tle.epoch = jan1 + from_seconds((epoch_days - 1.0) * 86400.0);
    return tle;
}

}  // namespace

int tle_checksum(std::string_view line) {
    int sum = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(68, line.size()); ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

TwoLineElements parse_tle(std::string_view text, TleParseOptions options) {
    const auto lines = split_lines(text);
    if (lines.size() == 2) return decode({}, lines[0], lines[1], 1, options);
    if (lines.size() == 3) return decode(lines[0], lines[1], lines[2], 2, options);
    throw Error(ErrorCode::TleFormat,
                "expected an optional name line plus two data lines, got " + std::to_string(lines.size()) + " lines");
}

std::vector<TwoLineElements> parse_tle_stream(std::string_view text, TleParseOptions options) {
    const auto lines = split_lines(text);
    std::vector<TwoLineElements> out;
    std::size_t i = 0;
    while (i < lines.size()) {
        const bool l1_here = lines[i].size() >= 2 && lines[i][0] == '1' && lines[i][1] == ' ';
        if (l1_here) {
            if (i + 1 >= lines.size()) tle_error(ErrorCode::TleFormat, static_cast<int>(i + 1), "missing line 2");
            out.push_back(decode({}, lines[i], lines[i + 1], static_cast<int>(i + 1), options));
            i += 2;
        } else {
            if (i + 2 >= lines.size()) tle_error(ErrorCode::TleFormat, static_cast<int>(i + 1), "truncated element set");
            out.push_back(decode(lines[i], lines[i + 1], lines[i + 2], static_cast<int>(i + 2), options));
            i += 3;
        }
    }
    return out;
}

std::string format_tle(const TwoLineElements& tle) {
    std::string out;
    if (!tle.name.empty()) out += tle.name + "\n";
    out += tle.line1 + "\n" + tle.line2 + "\n";
    return out;
}

std::string_view to_string(Direction d) { return d == Direction::Ascending ? "ascending" : "descending"; }

SatelliteState propagate(const Sgp4Model& model, const TwoLineElements& tle, Instant t, PropagationOptions options) {
    const double dt_s = to_seconds(t - tle.epoch);
    if (options.max_element_age && std::abs(dt_s) > static_cast<double>(options.max_element_age->count())) {
        throw Error(ErrorCode::StaleElements, "element set for " + std::to_string(tle.norad_id) + " is " +
                                                  std::to_string(std::abs(dt_s) / 86400.0) +
                                                  " days from the requested time");
    }
    // Use the exact decoded epoch, not the microsecond-rounded Instant.
    const JulianDate jd = to_julian(t);
    const double tsince_min =
        ((jd.day - tle.epoch_jd.day) + (jd.fraction - tle.epoch_jd.fraction)) * 1440.0;
    const auto r = model.propagate_minutes(tsince_min);
    if (r.error != 0) {
        throw Error(ErrorCode::DecayedOrbit,
                    "propagation failed for " + std::to_string(tle.norad_id) + " (code " + std::to_string(r.error) + ")");
    }

    SatelliteState s;
    s.time = t;
    s.position_teme_km = r.position_km;
    s.velocity_teme_km_s = r.velocity_km_s;

    const double g = gmst_radians(t);
    const double c = std::cos(g);
    const double sn = std::sin(g);
    const Vec3& p = r.position_km;
    const Vec3& v = r.velocity_km_s;
    s.position_ecef_km = {c * p.x + sn * p.y, -sn * p.x + c * p.y, p.z};
    const Vec3 v_rot{c * v.x + sn * v.y, -sn * v.x + c * v.y, v.z};
    const Vec3 omega{0.0, 0.0, kEarthRotation};
    s.velocity_ecef_km_s = v_rot - cross(omega, s.position_ecef_km);

    s.subpoint = from_vector(s.position_ecef_km);
    s.altitude_km = norm(s.position_ecef_km) - kEarthRadiusKm;
    if (s.altitude_km <= 0.0) {
        throw Error(ErrorCode::DecayedOrbit, "satellite " + std::to_string(tle.norad_id) + " below the surface");
    }
    return s;
}

SatelliteState propagate(const TwoLineElements& tle, Instant t, PropagationOptions options) {
    return propagate(Sgp4Model(tle), tle, t, options);
}

std::vector<PassInterval> find_passes(const TwoLineElements& tle, GeoPoint center, double radius_km,
                                      TimeInterval range, PropagationOptions options) {
    using std::chrono::milliseconds;
    using std::chrono::seconds;
    if (range.end < range.start) throw Error(ErrorCode::EmptyRange, "pass search range ends before it starts");
    if (!(radius_km > 0.0)) throw Error(ErrorCode::InvalidArgument, "pass radius must be positive");
    std::vector<PassInterval> passes;
    if (range.empty()) return passes;

    const Sgp4Model model(tle);
    auto dist = [&](Instant t) {
        return great_circle_km(propagate(model, tle, t, options).subpoint, center);
    };
    auto inside = [&](Instant t) { return dist(t) <= radius_km; };

    // Sub-satellite ground speed stays well under this bound for any LEO.
    constexpr double kMaxGroundSpeed = 12.0;
    const Duration step = seconds(1);
    const Duration tol = milliseconds(10);

    auto refine = [&](Instant out_t, Instant in_t) {
        while (std::chrono::abs(in_t - out_t) > tol) {
            const Instant mid = out_t + (in_t - out_t) / 2;
            (inside(mid) ? in_t : out_t) = mid;
        }
        return in_t;
    };

    Instant t = range.start;
    bool prev_in = false;
    Instant prev_t = t;
    Instant open_start{};
    bool first = true;

    auto close = [&](Instant s, Instant e) {
        PassInterval p;
        p.norad_id = tle.norad_id;
        p.start = s;
        p.end = e;
        const Instant mid = s + (e - s) / 2;
        const Instant a = mid - milliseconds(500);
        const Instant b = mid + milliseconds(500);
        const double lat_a = propagate(model, tle, a, options).subpoint.lat_deg;
        const double lat_b = propagate(model, tle, b, options).subpoint.lat_deg;
        p.direction = lat_b >= lat_a ? Direction::Ascending : Direction::Descending;
        if (p.end > p.start) passes.push_back(p);
    };

    while (true) {
        const double d = dist(t);
        const bool in = d <= radius_km;
        if (first) {
            if (in) open_start = t;
            first = false;
        } else if (in && !prev_in) {
            open_start = refine(prev_t, t);
        } else if (!in && prev_in) {
            close(open_start, refine(t, prev_t));
        }
        prev_in = in;
        prev_t = t;
        if (t >= range.end) break;

        // Skip whole grid steps that cannot reach the circle.
        Duration advance = step;
        if (!in) {
            const double slack = (d - radius_km) / kMaxGroundSpeed;
            if (slack > 2.0) advance = seconds(static_cast<long>(std::floor(slack)));
        }
        t = std::min(t + advance, range.end);
    }
    if (prev_in) close(open_start, range.end);
    return passes;
}

}  // namespace rgss
