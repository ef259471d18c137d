"""Two-qubit states, noise channels and entanglement/nonlocality measures.

Basis ordering throughout is the computational basis |00>, |01>, |10>, |11>.
The maximally entangled states use the convention

    |Psi+-> = (|00> +- |11>) / sqrt(2),
    |Phi+-> = (|01> +- |10>) / sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple, Union

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_TOL = 1e-10

_I2 = np.eye(2)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (_SX, _SY, _SZ)


class BellKind(str, Enum):
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"


_BELL_VECTORS = {
    BellKind.PSI_PLUS: np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
    BellKind.PSI_MINUS: np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2),
    BellKind.PHI_PLUS: np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2),
    BellKind.PHI_MINUS: np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2),
}


@dataclass(frozen=True)
class TwoQubitState:
    """A 4x4 density matrix, validated on construction."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError("density matrix does not have unit trace")
        if np.linalg.eigvalsh(m).min() < -EIGENVALUE_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", m)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def make_bell(kind: BellKind) -> TwoQubitState:
    """Rank-1 projector onto the named Bell vector."""
    v = _BELL_VECTORS[BellKind(kind)]
    return TwoQubitState(np.outer(v, v.conj()))


def make_isotropic(visibility: float) -> TwoQubitState:
    """lam * Psi+ + (1 - lam) * I/4 for visibility lam in [0, 1]."""
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must be in [0, 1], got {visibility}")
    psi = make_bell(BellKind.PSI_PLUS).matrix
    return TwoQubitState(visibility * psi + (1.0 - visibility) * np.eye(4) / 4.0)


def fidelity_psi_plus(state: TwoQubitState) -> float:
    """Overlap <Psi+| rho |Psi+> (the singlet fraction in this convention)."""
    v = _BELL_VECTORS[BellKind.PSI_PLUS]
    return float(np.real(v.conj() @ state.matrix @ v))


# ---------------------------------------------------------------------------
# Channels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Depolarizing:
    """Qubit depolarizing channel, p in [0, 4/3]."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 4.0 / 3.0:
            raise ValueError(f"depolarizing parameter must be in [0, 4/3], got {self.p}")

    def kraus_ops(self) -> List[np.ndarray]:
        k0 = math.sqrt(1.0 - 3.0 * self.p / 4.0) * _I2.astype(complex)
        rest = [math.sqrt(self.p) / 2.0 * s for s in PAULIS]
        return [k0, *rest]


@dataclass(frozen=True)
class Erasure:
    """Qubit erasure channel with arrival probability eta_e.

    The Kraus operators map the qubit into a 3-level space whose third
    level is the erasure flag; completeness holds on the qubit input space.
    """

    eta_e: float

    def __post_init__(self):
        if not 0.0 <= self.eta_e <= 1.0:
            raise ValueError(f"erasure parameter must be in [0, 1], got {self.eta_e}")

    def kraus_ops(self) -> List[np.ndarray]:
        keep = math.sqrt(self.eta_e) * np.array(
            [[1, 0], [0, 1], [0, 0]], dtype=complex
        )
        lose0 = math.sqrt(1.0 - self.eta_e) * np.array(
            [[0, 0], [0, 0], [1, 0]], dtype=complex
        )
        lose1 = math.sqrt(1.0 - self.eta_e) * np.array(
            [[0, 0], [0, 0], [0, 1]], dtype=complex
        )
        return [keep, lose0, lose1]


@dataclass(frozen=True)
class Thermal:
    """Qubit thermal-loss channel (GADC reparameterization), eta_g, kappa_g in [0, 1]."""

    eta_g: float
    kappa_g: float

    def __post_init__(self):
        for name in ("eta_g", "kappa_g"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")

    def kraus_ops(self) -> List[np.ndarray]:
        eg, kg = self.eta_g, self.kappa_g
        a1 = math.sqrt(1 - kg) * np.diag([1.0, math.sqrt(eg)]).astype(complex)
        a2 = math.sqrt((1 - eg) * (1 - kg)) * np.array([[0, 1], [0, 0]], dtype=complex)
        a3 = math.sqrt(kg) * np.diag([math.sqrt(eg), 1.0]).astype(complex)
        a4 = math.sqrt(kg * (1 - eg)) * np.array([[0, 0], [1, 0]], dtype=complex)
        return [a1, a2, a3, a4]


ChannelModel = Union[Depolarizing, Erasure, Thermal]


def kraus_completeness_defect(channel: ChannelModel) -> float:
    """Max-abs deviation of sum K^dag K from the identity."""
    ks = channel.kraus_ops()
    dim = ks[0].shape[1]
    acc = sum(k.conj().T @ k for k in ks)
    return float(np.abs(acc - np.eye(dim)).max())


@dataclass(frozen=True)
class ErasureOutcome:
    """Both-arrive probability and the conditional (unchanged) pair state."""

    p_both_arrive: float
    conditional_state: TwoQubitState


def apply_pair_channel(
    state: TwoQubitState, channel: ChannelModel
) -> Union[TwoQubitState, ErasureOutcome]:
    """Apply a single-qubit channel independently to both qubits of a pair.

    Erasure is handled analytically: the pair survives with probability
    eta_e^2 and is otherwise flagged lost, so the output is a record rather
    than a state on an enlarged space.
    """
    if isinstance(channel, Erasure):
        return ErasureOutcome(channel.eta_e**2, state)
    ks = channel.kraus_ops()
    out = np.zeros((4, 4), dtype=complex)
    for ki in ks:
        for kj in ks:
            op = np.kron(ki, kj)
            out += op @ state.matrix @ op.conj().T
    return TwoQubitState(out)


class DepolYieldMode(str, Enum):
    PAPER_FORMULA = "paper-formula"
    ITERATED_CHANNEL = "iterated-channel"


def depol_yield(p: float, n: int, mode: DepolYieldMode = DepolYieldMode.PAPER_FORMULA) -> float:
    """Fidelity with Psi+ after n two-sided depolarizing steps.

    The two modes agree for n <= 2 and split for n >= 3; the closed-form
    mode matches the published yield expression while the iterated mode
    matches literal repeated channel application.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    mode = DepolYieldMode(mode)
    if mode is DepolYieldMode.PAPER_FORMULA:
        if n == 0:
            return 1.0
        return (1 - p) ** (2 * n) - 0.25 * (p - 2) * p * (
            (n - 1) * (1 - p) ** (2 * (n - 1)) + 1
        )
    return (1.0 + 3.0 * (1.0 - p) ** (2 * n)) / 4.0


def thermal_yield(eta_g: float, kappa_g: float) -> float:
    """Fidelity with Psi+ after a two-sided thermal channel."""
    Thermal(eta_g, kappa_g)  # range check
    return 0.5 * (1.0 + eta_g**2) + kappa_g * (kappa_g - 1.0) * (1.0 - eta_g) ** 2


# ---------------------------------------------------------------------------
# Bell measurement / entanglement swapping
# ---------------------------------------------------------------------------

# Local correction returning each Bell outcome to Psi+ (applied on the
# second outer qubit).
_CORRECTIONS = {
    BellKind.PSI_PLUS: _I2.astype(complex),
    BellKind.PSI_MINUS: _SZ,
    BellKind.PHI_PLUS: _SX,
    BellKind.PHI_MINUS: _SX @ _SZ,
}

FAILURE_LABEL = "perp"


@dataclass(frozen=True)
class SwapBranch:
    probability: float
    post_state: TwoQubitState
    outcome_label: str


@dataclass(frozen=True)
class SwapOutcome:
    branches: List[SwapBranch]
    corrected_state: TwoQubitState
    corrected_visibility: float


def bell_swap(state1: TwoQubitState, state2: TwoQubitState, q: float) -> SwapOutcome:
    """Noisy standard Bell measurement on the inner qubits of two pairs.

    Qubit ordering is (A, A') x (B', B); the measurement acts on (A', B')
    and the branches describe the post-measurement state of (A, B). With
    probability 1 - q the measurement fails and the outer pair is left
    maximally mixed. The corrected state mixes all branches after the
    outcome-conditional Pauli correction; for isotropic inputs of
    visibilities lam1, lam2 it equals the isotropic state of visibility
    q * lam1 * lam2.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0, 1], got {q}")
    # joint state on (A, A', B', B)
    joint = np.kron(state1.matrix, state2.matrix).reshape([2] * 8)
    branches: List[SwapBranch] = []
    corrected = np.zeros((4, 4), dtype=complex)
    for kind, vec in _BELL_VECTORS.items():
        v = vec.reshape(2, 2)
        # project the measured qubits A' (row axes 1, 2 / col axes 5, 6)
        post = np.einsum(
            "ij, aijbckld, kl -> abcd", v.conj(), joint, v, optimize=True
        )
        prob = float(np.einsum("abab->", post).real)
        prob_q = q * prob
        dm = post.reshape(4, 4) / prob if prob > 1e-15 else np.eye(4) / 4.0
        dm = 0.5 * (dm + dm.conj().T)
        branches.append(SwapBranch(prob_q, TwoQubitState(dm), kind.value))
        u = np.kron(_I2, _CORRECTIONS[kind])
        corrected += prob_q * (u @ dm @ u.conj().T)
    corrected += (1.0 - q) * np.eye(4) / 4.0
    branches.append(
        SwapBranch(1.0 - q, TwoQubitState(np.eye(4) / 4.0), FAILURE_LABEL)
    )
    corrected_state = TwoQubitState(corrected)
    vis = (4.0 * fidelity_psi_plus(corrected_state) - 1.0) / 3.0
    return SwapOutcome(branches, corrected_state, vis)


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------


def correlation_matrix(state: TwoQubitState) -> np.ndarray:
    """3x3 matrix T with t_nm = Tr[rho sigma_n x sigma_m], order (x, y, z)."""
    t = np.empty((3, 3))
    for n, sn in enumerate(PAULIS):
        for m, sm in enumerate(PAULIS):
            t[n, m] = float(np.trace(state.matrix @ np.kron(sn, sm)).real)
    return t


@dataclass(frozen=True)
class HorodeckiMeasures:
    """N > 1 means useful for teleportation; M > 1 means CHSH-nonlocal."""

    N: float
    M: float


def horodecki_measures(state: TwoQubitState) -> HorodeckiMeasures:
    t = correlation_matrix(state)
    u = np.linalg.eigvalsh(t.T @ t)
    u = np.clip(u, 0.0, None)
    n_val = float(np.sqrt(u).sum())
    m_val = float(np.sort(u)[-2:].sum())
    return HorodeckiMeasures(n_val, m_val)


def concurrence(state: TwoQubitState) -> float:
    yy = np.kron(_SY, _SY)
    m = state.matrix @ yy @ state.matrix.conj() @ yy
    eigs = np.linalg.eigvals(m).real
    eigs = np.sqrt(np.clip(eigs, 0.0, None))
    eigs.sort()
    return max(0.0, float(eigs[-1] - eigs[-2] - eigs[-3] - eigs[-4]))


@dataclass(frozen=True)
class TeleportFidelity:
    quantum: float
    classical: float


def teleport_fidelity(singlet_fraction: float, d: int = 2) -> TeleportFidelity:
    """Best teleportation fidelity from singlet fraction f on a d x d system."""
    if not 0.0 <= singlet_fraction <= 1.0:
        raise ValueError("singlet fraction must be in [0, 1]")
    if d < 2:
        raise ValueError("d must be >= 2")
    return TeleportFidelity(
        (singlet_fraction * d + 1.0) / (d + 1.0), 2.0 / (d + 1.0)
    )


@dataclass(frozen=True)
class TiltedChshParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 1.0:
            raise ValueError("alpha must be >= 1")
        if self.beta < 0.0:
            raise ValueError("beta must be >= 0")


@dataclass(frozen=True)
class TiltedChshBounds:
    local: float
    quantum: float


def tilted_chsh_bounds(params: TiltedChshParams) -> TiltedChshBounds:
    a, b = params.alpha, params.beta
    return TiltedChshBounds(b + 2.0 * a, 2.0 * math.sqrt((1.0 + a**2) * (1.0 + b**2 / 4.0)))


def isotropic_separable(visibility: float, d: int = 2) -> bool:
    """Separability of the isotropic state: p(lam) <= 1/d, i.e. lam <= 1/(d+1) scaled.

    For d = 2 this reduces to lam <= 1/3.
    """
    if not 0.0 <= visibility <= 1.0:
        raise ValueError("visibility must be in [0, 1]")
    if d < 2:
        raise ValueError("d must be >= 2")
    p = (visibility * (d**2 - 1) + 1.0) / d**2
    return p <= 1.0 / d + 1e-15
