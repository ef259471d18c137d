"""Real-world link calculators: atmosphere, satellite chains, airport routes.

The satellite yield composes independent loss factors (fiber, erasure,
source, Bell measurement, memory, thermal); each factor is exposed on its
own so the composed value can be cross-checked against their product.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from . import netgraph, qstate

EARTH_RADIUS_KM = 6371.0


@dataclass(frozen=True)
class AtmosphereParams:
    """Free-space optical link parameters.

    omega0 is the beam waist (m), z_rayleigh the Rayleigh range (m), z the
    link distance (m), r the receiving aperture radius (m). sigma_r and
    fresnel_ratio characterize turbulence; eta is the pointing-error ratio
    sigma_p / omega_at.
    """

    omega0: float
    z_rayleigh: float
    z: float
    r: float
    sigma_r: float
    fresnel_ratio: float
    xi_t: float = 1.0
    xi_r: float = 1.0
    xi_as: float = 1.0
    eta: float = 1.0

    def __post_init__(self):
        if self.omega0 <= 0 or self.z_rayleigh <= 0:
            raise ValueError("beam waist and Rayleigh range must be positive")
        if self.z < 0 or self.r < 0:
            raise ValueError("distance and aperture must be nonnegative")
        if self.sigma_r < 0 or self.fresnel_ratio < 0:
            raise ValueError("turbulence parameters must be nonnegative")
        for name in ("xi_t", "xi_r", "xi_as"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.eta <= 0:
            raise ValueError("eta must be positive")


def atmospheric_transmittance(p: AtmosphereParams) -> float:
    """Total downlink transmittance including diffraction, turbulence and pointing."""
    w = p.omega0
    pointing = p.eta**2 / (p.eta**2 + 0.25)
    diff = 1.0 - math.exp(
        -2.0 * p.r**2 * p.z_rayleigh**2 / (w**2 * (p.z**2 + p.z_rayleigh**2))
    )
    broadening = 1.0 + 1.33 * p.fresnel_ratio ** (5.0 / 6.0) * p.sigma_r**2
    turb = 1.0 - math.exp(
        -2.0 * p.r**2 / (w**2 * broadening * (p.z**2 / p.z_rayleigh**2 + 1.0))
    )
    return pointing * p.xi_as * p.xi_r * p.xi_t * diff * turb


class YieldConvention(str, Enum):
    DERIVATION = "derivation"
    # alternate statement with (eta_e^2)^n and no Bell factor
    SUMMARY = "summary"


@dataclass(frozen=True)
class SatelliteYieldParams:
    n: int
    eta_e: float
    eta_s: float
    q: float
    p_mem: float
    s: int
    alpha: float
    l_b: float
    l_m: float
    eta_g: float
    kappa_g: float
    eta_crit: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for name in ("eta_e", "eta_s", "q", "eta_g", "kappa_g", "eta_crit"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.s < 0:
            raise ValueError("s must be >= 0")
        if self.alpha < 0 or self.l_b < 0 or self.l_m < 0:
            raise ValueError("fiber parameters must be nonnegative")


def fiber_factor(alpha: float, l_total: float) -> float:
    return math.exp(-alpha * l_total)


def erasure_factor(eta_e: float, n: int, convention: YieldConvention = YieldConvention.DERIVATION) -> float:
    power = n - 1 if convention is YieldConvention.DERIVATION else n
    return (eta_e**2) ** power


def source_factor(eta_s: float, n: int) -> float:
    return eta_s ** (n - 1)


def bell_factor(q: float, n: int, convention: YieldConvention = YieldConvention.DERIVATION) -> float:
    if convention is YieldConvention.SUMMARY:
        return 1.0
    return q ** (n - 1)


def memory_factor(p_mem: float, s: int) -> float:
    return qstate.depol_yield(p_mem, s, qstate.DepolYieldMode.PAPER_FORMULA)


def thermal_factor(eta_g: float, kappa_g: float) -> float:
    return kappa_g * (kappa_g - 1.0) * (eta_g - 1.0) ** 2 + 0.5 * (1.0 + eta_g**2)


def satellite_yield(
    p: SatelliteYieldParams, convention: YieldConvention = YieldConvention.DERIVATION
) -> float:
    """End-to-end yield of an n-link satellite chain with fiber last miles.

    Returns exactly 0 when the memory fidelity drops below eta_crit, since
    such states are deleted rather than served.
    """
    mem = memory_factor(p.p_mem, p.s)
    if mem < p.eta_crit:
        return 0.0
    erasure_pow = p.n - 1 if convention is YieldConvention.DERIVATION else p.n
    out = (
        math.exp(-p.alpha * (p.l_b + p.l_m))
        * (p.eta_e**2) ** erasure_pow
        * p.eta_s ** (p.n - 1)
        * mem
        * (
            p.kappa_g * (p.kappa_g - 1.0) * (p.eta_g - 1.0) ** 2
            + 0.5 * (1.0 + p.eta_g**2)
        )
    )
    if convention is YieldConvention.DERIVATION:
        out *= p.q ** (p.n - 1)
    return out


def airport_yield(
    length_km: float, l0_km: float, q: float, eta_e: float, eta_g: float, kappa_g: float
) -> float:
    """Yield between two ground sites L km apart served by satellites every L0 km."""
    if l0_km <= 0:
        raise ValueError("l0_km must be positive")
    if length_km < l0_km:
        raise ValueError("length_km must be at least l0_km")
    n = int(length_km // l0_km)
    return q ** (n - 1) * (eta_e**2) ** (n - 1) * thermal_factor(eta_g, kappa_g)


# ---------------------------------------------------------------------------
# Airport dataset
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Airport:
    id: str
    name: str
    lat: float
    lon: float


@dataclass(frozen=True)
class AirportDataset:
    airports: Tuple[Airport, ...]
    routes: Tuple[Tuple[str, str], ...]
    skipped_routes: int = 0


def great_circle_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Haversine distance on a 6371 km sphere, inputs in degrees."""
    for lat in (lat1, lat2):
        if abs(lat) > 90.0:
            raise ValueError("latitude out of range")
    for lon in (lon1, lon2):
        if abs(lon) > 180.0:
            raise ValueError("longitude out of range")
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def load_airport_dataset(airports_csv, routes_csv) -> AirportDataset:
    """Read the airports/routes CSV pair.

    airports.csv columns: id,name,lat,lon. routes.csv columns: src_id,
    dst_id. Duplicate undirected routes are deduplicated; routes naming
    unknown airports are skipped and counted.
    """
    airports: List[Airport] = []
    ids = set()
    with open(airports_csv, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                aid, name, lat, lon = row[0], row[1], float(row[2]), float(row[3])
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{airports_csv}:{lineno}: malformed airport record ({exc})")
            if aid in ids:
                raise ValueError(f"{airports_csv}:{lineno}: duplicate airport id {aid}")
            ids.add(aid)
            airports.append(Airport(aid, name, lat, lon))
    routes: List[Tuple[str, str]] = []
    seen = set()
    skipped = 0
    with open(routes_csv, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                src, dst = row[0], row[1]
            except IndexError as exc:
                raise ValueError(f"{routes_csv}:{lineno}: malformed route record ({exc})")
            if src not in ids or dst not in ids or src == dst:
                skipped += 1
                continue
            key = (src, dst) if src <= dst else (dst, src)
            if key not in seen:
                seen.add(key)
                routes.append(key)
    return AirportDataset(tuple(airports), tuple(routes), skipped)


ROUTE_DECAY_KM = 22.0
SHORT_ROUTE_CUTOFF_KM = 50.0
LONG_ROUTE_P = 0.8


def route_probability(length_km: float) -> float:
    """exp(-L/22) for routes under 50 km, 0.8 otherwise."""
    if length_km < SHORT_ROUTE_CUTOFF_KM:
        return math.exp(-length_km / ROUTE_DECAY_KM)
    return LONG_ROUTE_P


def load_airport_network(dataset: AirportDataset) -> netgraph.Network:
    coords = {a.id: (a.lat, a.lon) for a in dataset.airports}
    edges = []
    for src, dst in dataset.routes:
        la, lo = coords[src]
        lb, lo2 = coords[dst]
        edges.append((src, dst, route_probability(great_circle_km(la, lo, lb, lo2))))
    return netgraph.Network([a.id for a in dataset.airports], edges, coords)


@dataclass(frozen=True)
class AirportReport:
    n_nodes: int
    n_edges: int
    longest_route_km: float
    longest_route_pair: Tuple[str, str]
    mean_route_km: float
    link_sparsity: float
    total_connection_strength: float
    top_critical_airports: List[netgraph.NodeReport]


def airport_report(
    net: netgraph.Network, p_star: float = 0.1, top_n: int = 10
) -> AirportReport:
    """Aggregate geography and robustness statistics of a route network.

    Sparsity and connection strength use the non-cooperative strategy
    (direct routes only); critical-node ranking uses the fast centrality
    path suited to graphs of this size.
    """
    if not net.coords:
        raise ValueError("network has no coordinates")
    longest = -1.0
    pair = ("", "")
    total_len = 0.0
    for a, b in net.edges:
        la, lo = net.coords[a]
        lb, lo2 = net.coords[b]
        d = great_circle_km(la, lo, lb, lo2)
        total_len += d
        if d > longest:
            longest, pair = d, (a, b)
    strat = netgraph.StrategyKind.NON_COOPERATIVE
    reports = netgraph.critical_parameters(net, p_star, strat, fast_centrality=True)
    return AirportReport(
        net.n_nodes,
        net.n_edges,
        longest,
        pair,
        total_len / max(1, net.n_edges),
        netgraph.link_sparsity(net, p_star, strat),
        netgraph.total_connection_strength(net, strat, p_star),
        reports[:top_n],
    )
