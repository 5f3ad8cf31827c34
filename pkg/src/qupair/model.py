"""Two coupled qubits with local pumping, decay and pure dephasing.

The model is a pair of two-level systems exchanging excitation at rate ``g``
(the internal unit: every other rate is measured against it) while each qubit
talks to its own bath. Qubit ``i`` decays at ``gamma_i``, is incoherently
pumped at ``pump_i`` and dephases at ``deph_i``; ``delta`` is the frequency
mismatch between the qubits.

Basis order everywhere: ``|0> = |gg>``, ``|1> = |eg>``, ``|2> = |ge>``,
``|3> = |ee>``, with the first letter labelling qubit 1.

Density matrices are vectorized by stacking columns, vec(rho)[i + 4j] =
rho[i, j], so a sandwich A.rho.B turns into kron(B.T, A) acting on vec(rho).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateRates,
    InvalidObservables,
    InvalidParameters,
    NonUniqueSteadyState,
    NotPositive,
)

__all__ = [
    "BASIS_LABELS",
    "TRACE_INDICES",
    "SystemParams",
    "Liouvillian",
    "DensityMatrix",
    "SteadyObservables",
    "vec",
    "unvec",
    "build_liouvillian",
    "solve_steady_state",
    "steady_state",
    "observables_from_rho",
    "rho_from_observables",
]

BASIS_LABELS = ("gg", "eg", "ge", "ee")

#: vec-indices of the density-matrix diagonal.
TRACE_INDICES = (0, 5, 10, 15)

_RANK_TOL = 1e-10
_RESIDUAL_TOL = 1e-11
_EIG_FLOOR = -1e-9

_I4 = np.eye(4)

# Lowering operators in the basis above.
_SIGMA1 = np.zeros((4, 4), complex)
_SIGMA1[0, 1] = _SIGMA1[2, 3] = 1.0
_SIGMA2 = np.zeros((4, 4), complex)
_SIGMA2[0, 2] = _SIGMA2[1, 3] = 1.0

_NUM1 = _SIGMA1.conj().T @ _SIGMA1          # diag(0, 1, 0, 1)
_NUM2 = _SIGMA2.conj().T @ _SIGMA2          # diag(0, 0, 1, 1)
_HOP = _SIGMA1.conj().T @ _SIGMA2           # |1><2|
_EXCHANGE = _HOP + _HOP.conj().T


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacked vector of a 4x4 matrix."""
    return np.asarray(m).flatten(order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((4, 4), order="F")


def _commutator_block(h: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> i[rho, h]."""
    return 1j * (np.kron(h.T, _I4) - np.kron(_I4, h))


def _dissipator_block(op: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> op.rho.op+ - {op+op, rho}/2 (unit rate)."""
    q = op.conj().T @ op
    return np.kron(op.conj(), op) - 0.5 * (np.kron(_I4, q) + np.kron(q.T, _I4))


# The generator is affine in the detuning, the coupling and every rate, so
# the eight constant blocks are assembled once and summed with weights.
_B_DETUNE = _commutator_block(_NUM2)
_B_EXCHANGE = _commutator_block(_EXCHANGE)
_B_DECAY1 = _dissipator_block(_SIGMA1)
_B_PUMP1 = _dissipator_block(_SIGMA1.conj().T)
_B_DECAY2 = _dissipator_block(_SIGMA2)
_B_PUMP2 = _dissipator_block(_SIGMA2.conj().T)
_B_DEPH1 = _dissipator_block(_NUM1)
_B_DEPH2 = _dissipator_block(_NUM2)

_TRACE_ROW = np.zeros(16)
_TRACE_ROW[list(TRACE_INDICES)] = 1.0


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameters(f"{name} must be finite, got {value!r}")
    return value


def _require_rate(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if value < 0.0:
        raise InvalidParameters(f"{name} must be >= 0, got {value!r}")
    return value


@dataclass(frozen=True)
class SystemParams:
    """Model rates, all in units of the coupling ``g``.

    ``delta`` may take either sign; every rate must be non-negative and
    finite. ``g`` is fixed to 1 in normal use and exists as a field only so
    that degenerate configurations (``g = 0``) can be expressed.
    """

    delta: float = 0.0
    gamma1: float = 0.0
    pump1: float = 0.0
    gamma2: float = 0.0
    pump2: float = 0.0
    deph1: float = 0.0
    deph2: float = 0.0
    g: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "delta", _require_finite("delta", self.delta))
        for name in ("gamma1", "pump1", "gamma2", "pump2", "deph1", "deph2", "g"):
            object.__setattr__(self, name, _require_rate(name, getattr(self, name)))

    @classmethod
    def from_bath_nature(cls, Gamma1, r1, Gamma2, r2, *, delta=0.0,
                         deph1=0.0, deph2=0.0, g=1.0) -> "SystemParams":
        """Build from total rates and bath natures, gamma = Gamma(1 - r),
        pump = Gamma r."""
        for name, r in (("r1", r1), ("r2", r2)):
            r = _require_finite(name, r)
            if not 0.0 <= r <= 1.0:
                raise InvalidParameters(f"{name} must lie in [0, 1], got {r!r}")
        Gamma1 = _require_rate("Gamma1", Gamma1)
        Gamma2 = _require_rate("Gamma2", Gamma2)
        return cls(
            delta=delta,
            gamma1=Gamma1 * (1.0 - r1),
            pump1=Gamma1 * r1,
            gamma2=Gamma2 * (1.0 - r2),
            pump2=Gamma2 * r2,
            deph1=deph1,
            deph2=deph2,
            g=g,
        )

    @property
    def Gamma1(self) -> float:
        return self.gamma1 + self.pump1

    @property
    def Gamma2(self) -> float:
        return self.gamma2 + self.pump2

    @property
    def Gamma_tot(self) -> float:
        return self.Gamma1 + self.Gamma2 + self.deph1 + self.deph2

    @property
    def r1(self) -> float:
        if self.Gamma1 == 0.0:
            raise DegenerateRates("r1 is undefined when Gamma1 = 0")
        return self.pump1 / self.Gamma1

    @property
    def r2(self) -> float:
        if self.Gamma2 == 0.0:
            raise DegenerateRates("r2 is undefined when Gamma2 = 0")
        return self.pump2 / self.Gamma2

    def swapped(self) -> "SystemParams":
        """The same system with the qubit labels exchanged."""
        return SystemParams(
            delta=-self.delta,
            gamma1=self.gamma2,
            pump1=self.pump2,
            gamma2=self.gamma1,
            pump2=self.pump1,
            deph1=self.deph2,
            deph2=self.deph1,
            g=self.g,
        )


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class Liouvillian:
    """Vectorized generator of the master equation (16x16, complex)."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.shape != (16, 16):
            raise InvalidParameters(f"generator must be 16x16, got {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise InvalidParameters("generator has non-finite entries")
        if np.max(np.abs(_TRACE_ROW @ m)) > 1e-10 * max(1.0, np.abs(m).max()):
            raise InvalidParameters("generator does not preserve the trace")
        object.__setattr__(self, "matrix", _frozen(m))


@dataclass(frozen=True)
class DensityMatrix:
    """Validated 4x4 state: hermitian, unit trace, no eigenvalue below -1e-9."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"state must be 4x4, got {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("state has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError("state is not hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise ValueError(f"state trace is {np.trace(m).real!r}, not 1")
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_matrix(cls, m: np.ndarray, *, check_positive: bool = True) -> "DensityMatrix":
        state = cls(matrix=m)
        if check_positive:
            low = np.linalg.eigvalsh(state.matrix)[0]
            if low < _EIG_FLOOR:
                raise NotPositive(f"eigenvalue {low:.3e} below {_EIG_FLOOR}")
        return state


@dataclass(frozen=True)
class SteadyObservables:
    """Populations and cross-correlators that determine a stationary state.

    ``n1``/``n2`` are the excited-state populations, ``n1n2`` the joint
    double-excitation probability and ``n12`` the complex qubit1+ qubit2
    exchange correlator.
    """

    n1: float
    n2: float
    n1n2: float
    n12: complex


def build_liouvillian(params: SystemParams) -> Liouvillian:
    """Assemble the vectorized generator for a parameter set."""
    m = (
        -params.delta * _B_DETUNE
        + params.g * _B_EXCHANGE
        + params.gamma1 * _B_DECAY1
        + params.pump1 * _B_PUMP1
        + params.gamma2 * _B_DECAY2
        + params.pump2 * _B_PUMP2
        + params.deph1 * _B_DEPH1
        + params.deph2 * _B_DEPH2
    )
    return Liouvillian(matrix=m)


def solve_steady_state(liou: Liouvillian) -> DensityMatrix:
    """Unique stationary state of the generator.

    The singular spectrum must show exactly one null direction (numerical
    rank 15); otherwise the stationary state is not unique and
    NonUniqueSteadyState is raised. The linear solve replaces the first row
    with the trace constraint and runs a dense partial-pivot LU. The result
    is symmetrized, renormalized and positivity-checked; it is never
    clipped. Residuals stay near eps * |L|, so rates far beyond ~1e4 g make
    the 1e-11 residual guard fail by construction.
    """
    m = liou.matrix
    sv = np.linalg.svd(m, compute_uv=False)
    null_dims = int(np.sum(sv <= _RANK_TOL * sv[0]))
    if null_dims != 1:
        raise NonUniqueSteadyState(
            f"generator has {null_dims} null directions, expected exactly 1"
        )
    a = m.copy()
    a[0, :] = _TRACE_ROW
    b = np.zeros(16, complex)
    b[0] = 1.0
    rho = unvec(np.linalg.solve(a, b))
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = np.max(np.abs(m @ vec(rho)))
    if residual > _RESIDUAL_TOL:
        raise ArithmeticError(
            f"stationary-state residual {residual:.3e} exceeds {_RESIDUAL_TOL}"
        )
    return DensityMatrix.from_matrix(rho)


def steady_state(params: SystemParams) -> DensityMatrix:
    """Stationary state straight from a parameter set."""
    return solve_steady_state(build_liouvillian(params))


def observables_from_rho(rho: DensityMatrix) -> SteadyObservables:
    """Read populations and the exchange correlator off a state."""
    m = rho.matrix
    return SteadyObservables(
        n1=m[1, 1].real + m[3, 3].real,
        n2=m[2, 2].real + m[3, 3].real,
        n1n2=m[3, 3].real,
        n12=complex(m[2, 1]),
    )


def rho_from_observables(obs: SteadyObservables) -> DensityMatrix:
    """Rebuild the stationary block state from its observables.

    The diagonal is (1 - n1 - n2 + n1n2, n1 - n1n2, n2 - n1n2, n1n2) and the
    only coherence is the exchange one, rho[1, 2] = conj(n12).
    """
    values = [obs.n1, obs.n2, obs.n1n2, obs.n12.real, obs.n12.imag]
    if not all(math.isfinite(v) for v in values):
        raise InvalidObservables("observables must be finite")
    diag = (
        1.0 - obs.n1 - obs.n2 + obs.n1n2,
        obs.n1 - obs.n1n2,
        obs.n2 - obs.n1n2,
        obs.n1n2,
    )
    if min(diag) < -1e-12:
        raise InvalidObservables(
            f"reconstructed populations {diag} are not all non-negative"
        )
    if abs(obs.n12) ** 2 > diag[1] * diag[2] + 1e-12:
        raise InvalidObservables(
            "exchange correlator exceeds the population bound"
        )
    m = np.zeros((4, 4), complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = diag
    m[1, 2] = obs.n12.conjugate()
    m[2, 1] = obs.n12
    return DensityMatrix.from_matrix(m)
