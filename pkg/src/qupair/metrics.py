"""Entanglement and photon-counting metrics for two-qubit states.

The stationary states of the model carry a single coherence, between
``|eg>`` and ``|ge>``; states of that shape are called block form here.
Most metrics exist in a general version (any two-qubit state) and a block
version that exploits the structure; the two agree wherever both apply.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DeltaOutOfRange, NotBlockForm
from .model import DensityMatrix, SteadyObservables, observables_from_rho

__all__ = [
    "BLOCK_TOL",
    "BellDecomposition",
    "EntanglementReport",
    "concurrence_general",
    "concurrence_block",
    "linear_entropy",
    "r_decomposition",
    "delta_correlator",
    "g2_cross",
    "c_bounds",
    "entanglement_report",
]

#: Largest magnitude tolerated in the entries a block-form state must not have.
BLOCK_TOL = 1e-10

_DELTA_MAX = 1.0 / 16.0

# Spin-flip matrix: antidiagonal (-1, 1, 1, -1).
_FLIP = np.zeros((4, 4))
_FLIP[0, 3] = _FLIP[3, 0] = -1.0
_FLIP[1, 2] = _FLIP[2, 1] = 1.0

# Entries that must vanish in block form: everything outside the diagonal
# and the (1, 2) coherence.
_FORBIDDEN = np.ones((4, 4), bool)
_FORBIDDEN[np.diag_indices(4)] = False
_FORBIDDEN[1, 2] = _FORBIDDEN[2, 1] = False


@dataclass(frozen=True)
class BellDecomposition:
    """Weights of the stationary state split into pure-state contributions.

    ``r1_weight``/``r2_weight`` can be negative; the normalized ``rtilde*``
    weights use their magnitudes and sum to 1 together with the ground and
    doubly excited populations. ``rtilde`` is 1 - rtilde_psi, the total
    non-entangled share.
    """

    r1_weight: float
    r2_weight: float
    rpsi_weight: float
    rtilde1: float
    rtilde2: float
    rtilde_psi: float
    rtilde: float
    psi_phase: float


@dataclass(frozen=True)
class EntanglementReport:
    """Every per-state metric in one carrier.

    ``g2_cross`` is None when neither qubit emits (zero population product).
    """

    concurrence: float
    linear_entropy: float
    delta_corr: float
    g2_cross: float | None
    r1_weight: float
    r2_weight: float
    rpsi_weight: float
    rtilde1: float
    rtilde2: float
    rtilde_psi: float
    rtilde: float
    psi_phase: float


def _require_block(m: np.ndarray) -> None:
    worst = np.max(np.abs(m[_FORBIDDEN]))
    if worst > BLOCK_TOL:
        raise NotBlockForm(
            f"forbidden coherence of magnitude {worst:.3e} exceeds {BLOCK_TOL}"
        )


def concurrence_general(rho: DensityMatrix) -> float:
    """Concurrence of an arbitrary two-qubit state.

    C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with l_i the
    descending eigenvalues of rho.(F rho* F), F the spin flip. The roots
    are obtained as the singular values of sqrt(rho).(F sqrt(rho)* F),
    whose squares are exactly those eigenvalues; extracting the square
    root before the spectral computation keeps near-zero roots at machine
    precision, where eigenvalues of the nonsymmetric product would lose
    half the digits.
    """
    m = rho.matrix
    lam, basis = np.linalg.eigh(m)
    if lam[0] < -1e-9 - 1e-12:
        raise ArithmeticError(
            f"state eigenvalue {lam[0]:.3e} below the admitted floor"
        )
    root = (basis * np.sqrt(np.clip(lam, 0.0, None))) @ basis.conj().T
    flipped = _FLIP @ root.conj() @ _FLIP
    sv = np.linalg.svd(root @ flipped, compute_uv=False)
    return max(0.0, float(sv[0] - sv[1] - sv[2] - sv[3]))


def concurrence_block(rho: DensityMatrix) -> float:
    """Concurrence of a block-form state: 2 max(0, |rho12| - sqrt(rho00 rho33))."""
    m = rho.matrix
    _require_block(m)
    return 2.0 * max(
        0.0, abs(m[1, 2]) - math.sqrt(max(0.0, m[0, 0].real * m[3, 3].real))
    )


def linear_entropy(rho: DensityMatrix) -> float:
    """Linear entropy 4/3 (1 - Tr rho^2), 0 for pure states, 1 at I/4."""
    m = rho.matrix
    purity = float(np.vdot(m, m).real)
    value = (4.0 / 3.0) * (1.0 - purity)
    return min(1.0, max(0.0, value))


def r_decomposition(rho: DensityMatrix) -> BellDecomposition:
    """Split a block-form state into pure-state weights.

    R1 = rho11 - |rho12| and R2 = rho22 - |rho12| weigh the single-qubit
    excited states, R_psi = 2|rho12| the entangled pair state. The
    normalized weights divide by rho00 + rho33 + |R1| + |R2| + R_psi, which
    is 1 unless an R is negative. The phase is arg(rho12), 0 when the
    coherence vanishes.
    """
    m = rho.matrix
    _require_block(m)
    coherence = complex(m[1, 2])
    size = abs(coherence)
    r1 = m[1, 1].real - size
    r2 = m[2, 2].real - size
    rpsi = 2.0 * size
    denom = m[0, 0].real + m[3, 3].real + abs(r1) + abs(r2) + rpsi
    rtilde_psi = rpsi / denom
    return BellDecomposition(
        r1_weight=r1,
        r2_weight=r2,
        rpsi_weight=rpsi,
        rtilde1=abs(r1) / denom,
        rtilde2=abs(r2) / denom,
        rtilde_psi=rtilde_psi,
        rtilde=1.0 - rtilde_psi,
        psi_phase=cmath.phase(coherence) if size > 0.0 else 0.0,
    )


def delta_correlator(obs: SteadyObservables) -> float:
    """Photon-counting correlator delta = <n1><n2> - <n1 n2>.

    Equal to rho11 rho22 - rho00 rho33 on the reconstructed state; both
    forms are evaluated and must agree, which guards the observables against
    inconsistent population bookkeeping.
    """
    delta = obs.n1 * obs.n2 - obs.n1n2
    p11 = obs.n1 - obs.n1n2
    p22 = obs.n2 - obs.n1n2
    p00 = 1.0 - obs.n1 - obs.n2 + obs.n1n2
    from_populations = p11 * p22 - p00 * obs.n1n2
    if abs(delta - from_populations) > 1e-12:
        raise ArithmeticError(
            f"correlator mismatch: {delta!r} vs {from_populations!r}"
        )
    return delta


def g2_cross(obs: SteadyObservables) -> float | None:
    """Zero-delay cross correlation <n1 n2>/(<n1><n2>), or None at zero denominator.

    Algebraically 1 - delta/(<n1><n2>); the ratio form keeps it non-negative.
    """
    product = obs.n1 * obs.n2
    if product == 0.0:
        return None
    return obs.n1n2 / product


def c_bounds(delta: float) -> tuple[float, float]:
    """Concurrence window (lower, upper) implied by a correlator value.

    Both branches evaluate 2 sqrt(delta) - (1 -/+ sqrt(1 - 16 delta))/4 and
    are floored at 0; the naive form with the branch root in a denominator
    is 0/0 at delta = 0, this rewrite is exact and stable. Valid for delta
    in [0, 1/16]; the branches meet at the endpoint value 1/4.
    """
    if not (-1e-12 <= delta <= _DELTA_MAX + 1e-12):
        raise DeltaOutOfRange(f"delta must lie in [0, 1/16], got {delta!r}")
    delta = min(max(delta, 0.0), _DELTA_MAX)
    root = math.sqrt(1.0 - 16.0 * delta)
    base = 2.0 * math.sqrt(delta)
    lower = max(0.0, base - (1.0 + root) / 4.0)
    upper = max(0.0, base - (1.0 - root) / 4.0)
    return lower, upper


def entanglement_report(rho: DensityMatrix) -> EntanglementReport:
    """Assemble every metric of a block-form state into one report."""
    dec = r_decomposition(rho)
    obs = observables_from_rho(rho)
    return EntanglementReport(
        concurrence=concurrence_block(rho),
        linear_entropy=linear_entropy(rho),
        delta_corr=delta_correlator(obs),
        g2_cross=g2_cross(obs),
        r1_weight=dec.r1_weight,
        r2_weight=dec.r2_weight,
        rpsi_weight=dec.rpsi_weight,
        rtilde1=dec.rtilde1,
        rtilde2=dec.rtilde2,
        rtilde_psi=dec.rtilde_psi,
        rtilde=dec.rtilde,
        psi_phase=dec.psi_phase,
    )
