#!/usr/bin/env python3
"""Independent spherical geodesy oracle.

Produces the reference values frozen into tests/geo_test.cpp and
tests/acceptance. Uses numpy vector algebra rather than the closed-form
trig used by the C++ code, so the two routes are independent.
"""
import json
import sys

import numpy as np

R_MI = 3958.8


def to_vec(lat, lon):
    la, lo = np.radians(lat), np.radians(lon)
    return np.array([np.cos(la) * np.cos(lo), np.cos(la) * np.sin(lo), np.sin(la)])


def to_latlon(v):
    v = v / np.linalg.norm(v)
    return float(np.degrees(np.arcsin(v[2]))), float(np.degrees(np.arctan2(v[1], v[0])))


def distance(a, b):
    va, vb = to_vec(*a), to_vec(*b)
    return R_MI * float(np.arctan2(np.linalg.norm(np.cross(va, vb)), np.dot(va, vb)))


def bearing(a, b):
    # Angle between local north and the great-circle tangent at a.
    va, vb = to_vec(*a), to_vec(*b)
    north_pole = np.array([0.0, 0.0, 1.0])
    east = np.cross(north_pole, va)
    east /= np.linalg.norm(east)
    north = np.cross(va, east)
    tangent = vb - np.dot(vb, va) * va
    return float(np.degrees(np.arctan2(np.dot(tangent, east), np.dot(tangent, north)))) % 360.0


def midpoint(a, b):
    return to_latlon(to_vec(*a) + to_vec(*b))


def main():
    atl = (33.749, -84.388)
    mia = (25.7617, -80.1918)
    out = {
        "atl_mia_distance": distance(atl, mia),
        "atl_mia_bearing": bearing(atl, mia),
        "atl_mia_midpoint": midpoint(atl, mia),
        "half_circumference": distance((0, 0), (0, 180)),
    }
    fixture = {
        "H1": (30.0, -90.0), "H2": (31.0, -88.0), "H3": (29.0, -88.0),
        "H4": (32.0, -91.0), "T": (30.0, -84.0),
    }
    mid = midpoint(fixture["H2"], fixture["T"])
    out["fixture_anchor_H1"] = bearing(fixture["H1"], mid)
    out["fixture_bearings_H1"] = {k: bearing(fixture["H1"], fixture[k]) for k in ("H2", "H3", "H4")}

    rng = np.random.default_rng(int(sys.argv[1]) if len(sys.argv) > 1 else 2024)
    pairs = []
    for _ in range(50):
        a = (float(rng.uniform(-80, 80)), float(rng.uniform(-179, 179)))
        b = (float(rng.uniform(-80, 80)), float(rng.uniform(-179, 179)))
        pairs.append({"a": a, "b": b, "distance": distance(a, b), "bearing": bearing(a, b),
                      "midpoint": midpoint(a, b)})
    out["random_pairs"] = pairs
    json.dump(out, sys.stdout, indent=1)


if __name__ == "__main__":
    main()
