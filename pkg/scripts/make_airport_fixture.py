#!/usr/bin/env python3
"""Generate the pinned airport snapshot used by the test suite.

Produces data/airport_snapshot/{airports.csv,routes.csv} with a fixed
seed: 3463 airports clustered around major regions, 25482 deduplicated
undirected routes whose longest leg is the planted Singapore - New York
pair and whose mean length is tuned to about 1952 km. The script prints
the summary statistics and sha256 checksums; it only needs rerunning if
the fixture format changes.
"""

from __future__ import annotations

import csv
import hashlib
import math
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qnetlim.scenario import great_circle_km  # noqa: E402

SEED = 20240817
N_AIRPORTS = 3463
N_ROUTES = 25482
MEAN_TARGET = 1952.0
MEAN_TOL = 25.0
LONGEST_KM_CAP = 15200.0  # everything except the planted pair stays below this

# rough regional hubs: (lat, lon, relative weight)
CLUSTERS = [
    (40.0, -95.0, 3.0),    # North America
    (50.0, 10.0, 3.0),     # Europe
    (30.0, 110.0, 3.0),    # East Asia
    (20.0, 78.0, 2.0),     # South Asia
    (2.0, 105.0, 1.5),     # Southeast Asia
    (-12.0, -55.0, 1.5),   # South America
    (-2.0, 22.0, 1.5),     # Central Africa
    (27.0, 45.0, 1.0),     # Middle East
    (-26.0, 135.0, 1.0),   # Australia
    (60.0, 95.0, 0.8),     # Siberia
    (64.0, -19.0, 0.4),    # North Atlantic
    (-40.0, 172.0, 0.4),   # New Zealand
]

PLANTED = [
    ("A0000", "Singapore Changi", 1.359, 103.989),
    ("A0001", "New York JFK", 40.64, -73.78),
]


def make_airports(rng):
    airports = list(PLANTED)
    weights = [c[2] for c in CLUSTERS]
    cluster_of = {0: 4, 1: 0}
    for i in range(len(PLANTED), N_AIRPORTS):
        ci = rng.choices(range(len(CLUSTERS)), weights=weights)[0]
        lat0, lon0, _ = CLUSTERS[ci]
        lat = max(-85.0, min(85.0, rng.gauss(lat0, 8.0)))
        lon = ((rng.gauss(lon0, 11.0) + 180.0) % 360.0) - 180.0
        airports.append((f"A{i:04d}", f"Airport {i:04d}", round(lat, 4), round(lon, 4)))
        cluster_of[i] = ci
    return airports, cluster_of


def route_len(airports, i, j):
    return great_circle_km(airports[i][2], airports[i][3], airports[j][2], airports[j][3])


def nearest_candidates(airports, cluster_of, rng, k=16):
    """Short routes: k nearest same-cluster neighbours per airport."""
    by_cluster = {}
    for i in range(N_AIRPORTS):
        by_cluster.setdefault(cluster_of[i], []).append(i)
    seen = set()
    out = []
    for members in by_cluster.values():
        for i in members:
            dists = sorted(
                ((route_len(airports, i, j), j) for j in members if j != i)
            )[:k]
            for d, j in dists:
                key = (min(i, j), max(i, j))
                if key not in seen:
                    seen.add(key)
                    out.append((d, key))
    rng.shuffle(out)
    return out, seen


def long_candidates(airports, cluster_of, rng, seen, count):
    out = []
    while len(out) < count:
        i = rng.randrange(N_AIRPORTS)
        j = rng.randrange(N_AIRPORTS)
        if i == j or cluster_of[i] == cluster_of[j]:
            continue
        key = (min(i, j), max(i, j))
        if key in seen:
            continue
        d = route_len(airports, *key)
        if d >= LONGEST_KM_CAP:
            continue
        seen.add(key)
        out.append((d, key))
    return out


def main():
    rng = random.Random(SEED)
    airports, cluster_of = make_airports(rng)
    short, seen = nearest_candidates(airports, cluster_of, rng)
    longc = long_candidates(airports, cluster_of, rng, seen, N_ROUTES)
    planted_key = (0, 1)
    planted_len = route_len(airports, 0, 1)

    # pick n_long long routes, fill the rest with short ones, and walk
    # n_long until the mean lands in the tolerance window
    n_long = N_ROUTES // 4
    lo, hi = 0, min(len(longc), N_ROUTES - 1)
    best = None
    while lo <= hi:
        n_long = (lo + hi) // 2
        n_short = N_ROUTES - 1 - n_long
        if n_short > len(short):
            lo = n_long + 1
            continue
        chosen = longc[:n_long] + short[:n_short]
        mean = (sum(d for d, _ in chosen) + planted_len) / N_ROUTES
        best = (n_long, mean)
        if abs(mean - MEAN_TARGET) <= MEAN_TOL:
            break
        if mean < MEAN_TARGET:
            lo = n_long + 1
        else:
            hi = n_long - 1
    n_long, mean = best
    n_short = N_ROUTES - 1 - n_long
    routes = [planted_key] + [key for _, key in longc[:n_long] + short[:n_short]]
    assert len(routes) == len(set(routes)) == N_ROUTES
    longest = max(route_len(airports, *k) for k in routes)
    assert longest == planted_len, (longest, planted_len)

    out_dir = os.path.join(os.path.dirname(__file__), "..", "data", "airport_snapshot")
    os.makedirs(out_dir, exist_ok=True)
    a_path = os.path.join(out_dir, "airports.csv")
    r_path = os.path.join(out_dir, "routes.csv")
    with open(a_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "name", "lat", "lon"])
        w.writerows(airports)
    with open(r_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["src_id", "dst_id"])
        for i, j in sorted(routes):
            w.writerow([airports[i][0], airports[j][0]])

    sums = {}
    for p in (a_path, r_path):
        with open(p, "rb") as fh:
            sums[os.path.basename(p)] = hashlib.sha256(fh.read()).hexdigest()
    with open(os.path.join(out_dir, "SHA256SUMS"), "w") as fh:
        for name, digest in sorted(sums.items()):
            fh.write(f"{digest}  {name}\n")
    print(f"airports: {len(airports)}  routes: {len(routes)}")
    print(f"n_long: {n_long}  n_short: {n_short}")
    print(f"mean route: {mean:.1f} km  longest: {longest:.1f} km")
    for name, digest in sorted(sums.items()):
        print(f"{digest}  {name}")


if __name__ == "__main__":
    main()
