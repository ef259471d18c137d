"""Closed-form feasibility of linear repeater chains.

A chain with n intermediate repeaters, link visibility lam and Bell
measurement success probability q shares an isotropic state of visibility
q^n lam^(n+1). Everything here reduces feasibility questions about that
number to explicit formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from . import qstate

CHSH_THRESHOLD = 1.0 / math.sqrt(2.0)
TELEPORT_THRESHOLD = 1.0 / 3.0
ENT_PPT_THRESHOLD = 1.0 / 3.0
ENT_APPENDIX_THRESHOLD = 2.0 / math.sqrt(3.0) - 1.0


class TaskKind(str, Enum):
    ENTANGLEMENT = "entanglement"
    TELEPORTATION = "teleportation"
    CHSH = "chsh"
    DIQKD = "diqkd"
    CUSTOM = "custom"


class EntanglementMode(str, Enum):
    PPT_THRESHOLD = "ppt-threshold"
    PAPER_APPENDIX_H = "paper-appendix-h"


@dataclass(frozen=True)
class TaskSpec:
    """A task together with its critical visibility threshold.

    theta is required for DIQKD, p_star for Custom. Feasibility always
    means strict ">" against the threshold.
    """

    kind: TaskKind
    theta: Optional[float] = None
    p_star: Optional[float] = None
    entanglement_mode: EntanglementMode = EntanglementMode.PPT_THRESHOLD

    def __post_init__(self):
        if self.kind is TaskKind.DIQKD:
            if self.theta is None or not 0.0 < self.theta < math.pi / 2:
                raise ValueError("DIQKD requires theta in (0, pi/2)")
        if self.kind is TaskKind.CUSTOM:
            if self.p_star is None or not 0.0 < self.p_star < 1.0:
                raise ValueError("Custom requires p_star in (0, 1)")

    def threshold(self) -> float:
        if self.kind is TaskKind.CHSH:
            return CHSH_THRESHOLD
        if self.kind is TaskKind.TELEPORTATION:
            return TELEPORT_THRESHOLD
        if self.kind is TaskKind.ENTANGLEMENT:
            if self.entanglement_mode is EntanglementMode.PPT_THRESHOLD:
                return ENT_PPT_THRESHOLD
            return ENT_APPENDIX_THRESHOLD
        if self.kind is TaskKind.DIQKD:
            return critical_visibility_diqkd(self.theta)
        return self.p_star


@dataclass(frozen=True)
class ChainConfig:
    lam: float
    q: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lam must be in [0, 1]")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must be in [0, 1]")
        if self.n < 0:
            raise ValueError("n must be >= 0")


@dataclass(frozen=True)
class LinkBudget:
    """Loss parameters for the fiber length / storage time trade-off."""

    alpha: float
    beta: float
    eta_s: float
    r: int
    q: float
    p_star: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("loss rates must be nonnegative")
        if not 0.0 <= self.eta_s <= 1.0:
            raise ValueError("eta_s must be in [0, 1]")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must be in [0, 1]")
        if not 0.0 < self.p_star < 1.0:
            raise ValueError("p_star must be in (0, 1)")


def chain_visibility(cfg: ChainConfig) -> float:
    return cfg.q**cfg.n * cfg.lam ** (cfg.n + 1)


def critical_visibility_diqkd(theta: float) -> float:
    """Visibility below which the one-parameter-family key rate vanishes."""
    if not 0.0 < theta < math.pi / 2:
        raise ValueError("theta must be in (0, pi/2)")
    gamma_l = 1.0 / (math.cos(theta) + math.sin(theta))
    return (gamma_l + 1.0) / (3.0 - gamma_l)


class Unbounded:
    """Sentinel: every repeater count keeps the chain above threshold."""

    def __repr__(self):
        return "Unbounded"

    def __eq__(self, other):
        return isinstance(other, Unbounded)

    def __hash__(self):
        return hash("Unbounded")


class NoneFeasible:
    """Sentinel: even a direct link (n = 0) is below threshold."""

    def __repr__(self):
        return "NoneFeasible"

    def __eq__(self, other):
        return isinstance(other, NoneFeasible)

    def __hash__(self):
        return hash("NoneFeasible")


MaxRepeaters = Union[int, Unbounded, NoneFeasible]


def max_repeaters(lam: float, q: float, task: TaskSpec) -> MaxRepeaters:
    """Largest n with q^n lam^(n+1) strictly above the task threshold.

    Solved by inverting the logarithm, then verified by stepping the
    integer up or down so floating point rounding cannot shift the answer.
    """
    gamma = task.threshold()
    if not 0.0 <= lam <= 1.0 or not 0.0 <= q <= 1.0:
        raise ValueError("lam and q must be in [0, 1]")
    if lam <= gamma:
        return NoneFeasible()
    if q == 1.0 and lam == 1.0:
        return Unbounded() if gamma < 1.0 else NoneFeasible()
    # lam > gamma here, so n = 0 is feasible and the decay q lam < 1
    decay = q * lam
    if decay <= 0.0:
        return 0
    guess = int(math.floor(math.log(gamma / lam) / math.log(decay)))
    n = max(0, guess - 2)
    while chain_visibility(ChainConfig(lam, q, n + 1)) > gamma:
        n += 1
    return n


def max_repeaters_floor_form(lam: float, q: float, task: TaskSpec) -> MaxRepeaters:
    """Published closed-form variant floor(log(lam/gamma)/log(1/(q lam))) - 1.

    Conservative: can undercount max_repeaters by one.
    """
    gamma = task.threshold()
    if lam <= gamma:
        return NoneFeasible()
    if q == 1.0 and lam == 1.0:
        return Unbounded() if gamma < 1.0 else NoneFeasible()
    n = int(math.floor(math.log(lam / gamma) / math.log(1.0 / (q * lam)))) - 1
    if n < 0:
        return NoneFeasible()
    return n


class Empty:
    """Sentinel for an empty visibility interval."""

    def __repr__(self):
        return "Empty"

    def __eq__(self, other):
        return isinstance(other, Empty)

    def __hash__(self):
        return hash("Empty")


def zero_key_window(
    lam_unused: float, q: float, n: int, theta: float
) -> Union[Tuple[float, float], Empty]:
    """Visibility interval with nonzero single-link DI key but zero chain key.

    Returns (gamma_crit, min(1, (gamma_crit / q^n)^(1/(n+1)))), or Empty
    when the lower bound reaches the upper bound (e.g. n = 0).
    """
    gamma = critical_visibility_diqkd(theta)
    if n <= 0:
        return Empty()
    upper = min(1.0, (gamma / q**n) ** (1.0 / (n + 1)))
    if gamma >= upper:
        return Empty()
    return (gamma, upper)


@dataclass(frozen=True)
class TradeOffBound:
    """Upper bound on alpha*l + beta*t; negative means infeasible outright."""

    bound: float
    feasible_at_zero: bool


def critical_length_time_bound(budget: LinkBudget) -> TradeOffBound:
    """Right side of alpha*l + beta*t < (1/2r) ln(q^r eta_s^(r+1) / p*)."""
    val = (1.0 / (2.0 * budget.r)) * math.log(
        budget.q**budget.r * budget.eta_s ** (budget.r + 1) / budget.p_star
    )
    return TradeOffBound(val, val > 0.0)


def f_fold_bound(f: float, p_star: float) -> float:
    """Largest alpha*l_c + beta*t_c compatible with an f-fold advantage."""
    if f < 1.0:
        raise ValueError("f must be >= 1")
    if not 0.0 < p_star < 1.0:
        raise ValueError("p_star must be in (0, 1)")
    return -f * math.log(p_star)


@dataclass(frozen=True)
class StarFactor:
    factor: float
    advantage: bool


def star_repeater_factor(n: int) -> StarFactor:
    """Improvement factor 2 sin(pi/n) of a central node in a regular n-gon."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return StarFactor(2.0 * math.sin(math.pi / n), n < 6)


def required_f_lattice(r: int, length_km: float, alpha: float, eps: float) -> float:
    """Improvement factor needed to span r links of given length: r L alpha / ln(1/eps)."""
    if eps >= 1.0 or eps <= 0.0:
        raise ValueError("eps must be in (0, 1)")
    if r < 1 or length_km <= 0 or alpha <= 0:
        raise ValueError("r, length and alpha must be positive")
    return r * length_km * alpha / math.log(1.0 / eps)


def max_length_lattice(f: float, alpha: float, eps: float) -> float:
    """Companion bound L <= (f/alpha) ln(1/eps) for a single link."""
    if eps >= 1.0 or eps <= 0.0:
        raise ValueError("eps must be in (0, 1)")
    return (f / alpha) * math.log(1.0 / eps)


def required_f_diqkd(
    alpha: float,
    length_km: float,
    t_links: int,
    p_mem: float,
    s_steps: int,
    gamma: float,
    exponent_factor: float = 1.0,
) -> float:
    """Smallest f with eta_mem^2 exp(-exponent_factor alpha l t / f) >= gamma.

    eta_mem is the closed-form depolarizing memory yield after s_steps.
    Returns +inf when the memory factor alone is already below gamma.
    """
    eta_mem = qstate.depol_yield(p_mem, s_steps, qstate.DepolYieldMode.PAPER_FORMULA)
    if eta_mem**2 < gamma:
        return math.inf
    if eta_mem**2 == gamma:
        return math.inf
    return exponent_factor * alpha * length_km * t_links / math.log(eta_mem**2 / gamma)


def nqi_alpha_bound(length_km: float, n: int, q: float) -> Optional[float]:
    """Largest fiber loss rate keeping an n-node line entangled end to end.

    alpha < ln(3 q^n) / (L (1 + 1/n)), natural log. None when 3 q^n <= 1,
    in which case no positive loss rate works.
    """
    if length_km <= 0 or n < 1:
        raise ValueError("length and n must be positive")
    if not 0.0 < q <= 1.0:
        raise ValueError("q must be in (0, 1]")
    arg = 3.0 * q**n
    if arg <= 1.0:
        return None
    return math.log(arg) / (length_km * (1.0 + 1.0 / n))


@dataclass(frozen=True)
class CriticalProbability:
    value: float
    strict: bool


def critical_probability(task: TaskKind, d: int = 2) -> CriticalProbability:
    """Critical end-to-end success probability 1/d for a d-level system.

    Teleportation needs strictly more than 1/d; entanglement survives at
    exactly 1/d, so the bound is inclusive there.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if task is TaskKind.TELEPORTATION:
        return CriticalProbability(1.0 / d, True)
    if task is TaskKind.ENTANGLEMENT:
        return CriticalProbability(1.0 / d, False)
    raise ValueError("critical_probability is defined for entanglement and teleportation")
