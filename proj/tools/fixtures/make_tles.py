#!/usr/bin/env python3
"""Synthesize the element-set fixtures shipped under data/tles.

The public archives are not reachable from the build sandbox, so the shipped
sets are written from nominal orbit parameters (inclination, mean motion,
local time of the ascending node) at a fixed epoch. Mean anomalies were
picked with `--search` so that GCOM-W1 overflies the reference site
(42N, 74W) on 2024-11-26 in both its night and midday passes.

Requires the `sgp4` package (only for --search).
"""

import argparse
import math
import sys
from datetime import datetime, timedelta, timezone

EPOCH = datetime(2024, 11, 26, tzinfo=timezone.utc)


def checksum(line):
    s = 0
    for c in line[:68]:
        if c.isdigit():
            s += int(c)
        elif c == "-":
            s += 1
    return s % 10


def sun_ra_deg(t):
    # Low-precision solar right ascension (Astronomical Almanac).
    jd = t.timestamp() / 86400.0 + 2440587.5
    n = jd - 2451545.0
    L = (280.460 + 0.9856474 * n) % 360.0
    g = math.radians((357.528 + 0.9856003 * n) % 360.0)
    lam = math.radians(L + 1.915 * math.sin(g) + 0.020 * math.sin(2 * g))
    eps = math.radians(23.439 - 0.0000004 * n)
    return math.degrees(math.atan2(math.cos(eps) * math.sin(lam), math.cos(lam))) % 360.0


def raan_for_ltan(ltan_hours, t=EPOCH):
    return (sun_ra_deg(t) + (ltan_hours - 12.0) * 15.0) % 360.0


def format_tle(norad, intl, inc, raan, ecc, argp, ma, n, bstar=0.0, epoch=EPOCH, elset=999, rev=1000):
    doy = (epoch - datetime(epoch.year, 1, 1, tzinfo=timezone.utc)).total_seconds() / 86400.0 + 1.0
    if bstar == 0.0:
        bstar_field = " 00000-0"
    else:
        exp = math.floor(math.log10(abs(bstar))) + 1
        mant = round(abs(bstar) / 10 ** exp * 1e5)
        bstar_field = ("-" if bstar < 0 else " ") + "%05d" % mant + ("%+d" % exp if exp < 0 else "-0" if exp == 0 else "+%d" % exp)
    l1 = "1 %05dU %-8s %02d%012.8f  .00000000  00000-0 %s 0 %4d" % (
        norad, intl, epoch.year % 100, doy, bstar_field, elset)
    l2 = "2 %05d %8.4f %8.4f %07d %8.4f %8.4f %11.8f%5d" % (
        norad, inc, raan, round(ecc * 1e7), argp, ma, n, rev)
    l1 += str(checksum(l1))
    l2 += str(checksum(l2))
    assert len(l1) == 69 and len(l2) == 69, (l1, l2)
    return l1, l2


# name, norad, intl designator, inclination, mean motion, LTAN (h), mean anomaly, bstar
SATELLITES = [
    ("GCOM-W1", 38337, "12025A", 98.2000, 14.57100000, 13.5, None, 1.0e-5),
    # Synthetic second AMSR-class platform: GCOM-W1 orbit half a revolution ahead.
    ("AMSR3-SIM", 99337, "24999A", 98.2000, 14.57100000, 13.5, "gcom+180", 1.0e-5),
    ("NOAA 20 (JPSS-1)", 43013, "17073A", 98.7400, 14.19550000, 13.4, 40.0, 1.2e-5),
    ("NOAA 21 (JPSS-2)", 54234, "22150A", 98.7400, 14.19550000, 13.4, 220.0, 1.2e-5),
    ("SUOMI NPP", 37849, "11061A", 98.7500, 14.19540000, 13.4, 130.0, 1.3e-5),
    ("METOP-B", 38771, "12049A", 98.7000, 14.21500000, 21.5, 10.0, 1.1e-5),
    ("METOP-C", 43689, "18087A", 98.7000, 14.21500000, 21.5, 190.0, 1.1e-5),
]

GCOM_MEAN_ANOMALY = 31.5  # from --search


def search(site_lat=42.0, site_lon=-74.0):
    from sgp4.api import Satrec, jday

    name, norad, intl, inc, n, ltan, _, bstar = SATELLITES[0]
    raan = raan_for_ltan(ltan)
    best = []
    for ma10 in range(0, 3600, 5):
        ma = ma10 / 10.0
        l1, l2 = format_tle(norad, intl, inc, raan, 0.0002, 90.0, ma, n, bstar)
        sat = Satrec.twoline2rv(l1, l2)
        passes = {}
        for s in range(0, 86400, 20):
            t = EPOCH + timedelta(seconds=s)
            jd, fr = jday(t.year, t.month, t.day, t.hour, t.minute, t.second)
            e, r, v = sat.sgp4(jd, fr)
            gmst = gstime(jd + fr)
            x = r[0] * math.cos(gmst) + r[1] * math.sin(gmst)
            y = -r[0] * math.sin(gmst) + r[1] * math.cos(gmst)
            lat = math.degrees(math.asin(r[2] / math.sqrt(x * x + y * y + r[2] ** 2)))
            lon = math.degrees(math.atan2(y, x))
            d = gc_km(lat, lon, site_lat, site_lon)
            local = (s / 3600.0 - 5.0) % 24.0
            key = "night" if local < 6 else "midday" if 10 < local < 16 else None
            if key and d < passes.get(key, (1e9,))[0]:
                passes[key] = (d, local)
        if "night" in passes and "midday" in passes:
            score = max(passes["night"][0], passes["midday"][0])
            best.append((score, ma, passes))
    best.sort()
    for b in best[:10]:
        print(b)


def gstime(jdut1):
    tut1 = (jdut1 - 2451545.0) / 36525.0
    temp = -6.2e-6 * tut1 ** 3 + 0.093104 * tut1 ** 2 + (876600.0 * 3600 + 8640184.812866) * tut1 + 67310.54841
    return (math.radians(temp) / 240.0) % (2 * math.pi)


def gc_km(lat1, lon1, lat2, lon2):
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dl = math.radians(lon2 - lon1)
    c = math.sin(p1) * math.sin(p2) + math.cos(p1) * math.cos(p2) * math.cos(dl)
    return 6371.0 * math.acos(max(-1.0, min(1.0, c)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--search", action="store_true")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    if args.search:
        search()
        return
    out = []
    for name, norad, intl, inc, n, ltan, ma, bstar in SATELLITES:
        if ma is None:
            ma = GCOM_MEAN_ANOMALY
        elif ma == "gcom+180":
            ma = (GCOM_MEAN_ANOMALY + 180.0) % 360.0
        l1, l2 = format_tle(norad, intl, inc, raan_for_ltan(ltan), 0.0002, 90.0, ma, n, bstar)
        out.append((norad, name, l1, l2))
    for norad, name, l1, l2 in out:
        text = "%s\n%s\n%s\n" % (name, l1, l2)
        if args.out:
            with open("%s/%d.tle" % (args.out, norad), "w") as f:
                f.write(text)
        else:
            sys.stdout.write(text)


if __name__ == "__main__":
    main()
