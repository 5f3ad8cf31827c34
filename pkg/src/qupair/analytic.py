"""Closed-form steady states and the reference curves built from them.

The stationary state of the full model follows from a small set of effective
rates: the coherent exchange dresses each qubit's pump and decay with a
share of the other qubit's bath. Everything here is exact, not perturbative,
and doubles as the oracle layer for the numeric solver.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateRates, DeltaOutOfRange, InvalidParameters
from .model import DensityMatrix, SteadyObservables, SystemParams

__all__ = [
    "AlphaPoint",
    "EffectiveRates",
    "FamilyPoint",
    "ThermalPoint",
    "alpha_point",
    "effective_rates",
    "effective_observables",
    "optimal_family",
    "optimal_concurrence_from_entropy",
    "thermal_family",
    "mems_reference",
]

_DOMAIN_GRACE = 1e-12


@dataclass(frozen=True)
class AlphaPoint:
    """Polar coordinates of a detuning/rate pair: alpha the norm in units of
    the coupling, beta the phase carried by the steady-state coherence."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class EffectiveRates:
    """Exchange-dressed rates behind the closed-form populations.

    ``x1``/``x2`` are the dimensionless shares of the partner bath each
    qubit sees; the effective pump and total rate of qubit i give its
    population as ``p_eff/g_eff``.
    """

    x1: float
    x2: float
    p1_eff: float
    p2_eff: float
    g1_eff: float
    g2_eff: float


class FamilyPoint(NamedTuple):
    rho: DensityMatrix
    concurrence: float
    linear_entropy: float
    delta_corr: float


class ThermalPoint(NamedTuple):
    concurrence: float
    linear_entropy: float


def alpha_point(delta: float, Gamma: float, g: float = 1.0) -> AlphaPoint:
    """Map (detuning, total rate) to the family coordinate.

    alpha = sqrt(delta^2 + Gamma^2)/g and beta = arg(delta - i Gamma), which
    is -pi/2 on resonance and -arctan(Gamma/delta) at positive detuning.
    """
    if g <= 0.0 or not math.isfinite(g):
        raise InvalidParameters(f"g must be positive, got {g!r}")
    if Gamma < 0.0 or not math.isfinite(Gamma) or not math.isfinite(delta):
        raise InvalidParameters(f"bad (delta, Gamma) = ({delta!r}, {Gamma!r})")
    return AlphaPoint(alpha=math.hypot(delta, Gamma) / g,
                      beta=math.atan2(-Gamma, delta))


def effective_rates(params: SystemParams) -> EffectiveRates:
    """Dress each qubit's rates with the exchange-mediated share of the
    partner bath. Requires both qubits to have a nonzero total rate."""
    G1, G2 = params.Gamma1, params.Gamma2
    if G1 == 0.0 or G2 == 0.0:
        raise DegenerateRates(
            "effective rates need Gamma1 > 0 and Gamma2 > 0, got "
            f"({G1!r}, {G2!r})"
        )
    Gtot = params.Gamma_tot
    detune = 2.0 * params.delta / Gtot
    w = 4.0 * params.g * params.g / (Gtot * (1.0 + detune * detune))
    x1, x2 = w / G2, w / G1
    P1, P2 = params.pump1, params.pump2
    return EffectiveRates(
        x1=x1,
        x2=x2,
        p1_eff=P1 + (P1 + P2) * x1,
        p2_eff=P2 + (P1 + P2) * x2,
        g1_eff=G1 + (G1 + G2) * x1,
        g2_eff=G2 + (G1 + G2) * x2,
    )


def effective_observables(params: SystemParams) -> SteadyObservables:
    """Exact stationary observables from the effective rates.

    Populations are p_eff/g_eff; the double excitation reshuffles the pumps
    through the populations; the exchange coherence follows from the
    population imbalance with the total rate as its linewidth.
    """
    rates = effective_rates(params)
    n1 = rates.p1_eff / rates.g1_eff
    n2 = rates.p2_eff / rates.g2_eff
    P1, P2 = params.pump1, params.pump2
    n1n2 = (P1 * n2 + P2 * n1) / (params.Gamma1 + params.Gamma2)
    n12 = 2.0 * params.g * (n1 - n2) / (2.0 * params.delta + 1j * params.Gamma_tot)
    return SteadyObservables(n1=n1, n2=n2, n1n2=n1n2, n12=n12)


def optimal_family(alpha: float, beta: float = -math.pi / 2.0) -> FamilyPoint:
    """Closed-form steady state when one bath only pumps and the other only
    decays, both at the common rate folded into alpha.

    The state keeps a single excitation: populations (1, 1 + alpha^2, 1, 1)
    over 4 + alpha^2, coherence alpha e^{-i beta} over the same denominator.
    """
    if not math.isfinite(alpha) or alpha < 0.0 or not math.isfinite(beta):
        raise InvalidParameters(f"bad (alpha, beta) = ({alpha!r}, {beta!r})")
    d = 4.0 + alpha * alpha
    m = np.zeros((4, 4), complex)
    m[0, 0] = m[2, 2] = m[3, 3] = 1.0 / d
    m[1, 1] = (1.0 + alpha * alpha) / d
    m[1, 2] = alpha * cmath.exp(-1j * beta) / d
    m[2, 1] = m[1, 2].conjugate()
    return FamilyPoint(
        rho=DensityMatrix.from_matrix(m),
        concurrence=2.0 * max(0.0, alpha - 1.0) / d,
        linear_entropy=16.0 * (3.0 + alpha * alpha) / (3.0 * d * d),
        delta_corr=(alpha / d) ** 2,
    )


def optimal_concurrence_from_entropy(s_l: float) -> float:
    """The optimal-family boundary written as concurrence versus entropy.

    Inverts the strictly decreasing entropy-versus-alpha relation (the
    quadratic in 4 + alpha^2 picks its larger root) and feeds the result
    back into the concurrence formula. The s_l = 0 limit is alpha -> inf,
    where the concurrence vanishes.
    """
    if not (0.0 <= s_l <= 1.0):
        raise InvalidParameters(f"linear entropy must lie in [0, 1], got {s_l!r}")
    if s_l == 0.0:
        return 0.0
    u = 8.0 * (1.0 + math.sqrt(1.0 - 0.75 * s_l)) / (3.0 * s_l)
    alpha = math.sqrt(max(0.0, u - 4.0))
    return 2.0 * max(0.0, alpha - 1.0) / u


def thermal_family(alpha: float) -> ThermalPoint:
    """Concurrence and entropy when the pumped bath is thermal at its hottest
    (excitation fraction one half) and the other is a pure decay channel."""
    if not math.isfinite(alpha) or alpha < 0.0:
        raise InvalidParameters(f"alpha must be >= 0, got {alpha!r}")
    d = 4.0 + alpha * alpha
    return ThermalPoint(
        concurrence=max(
            0.0, (alpha - math.sqrt(2.25 + alpha * alpha / 2.0)) / d
        ),
        linear_entropy=(39.0 + 2.0 * alpha * alpha * (9.0 + alpha * alpha))
        / (3.0 * d * d),
    )


_CURVE_DOMAINS = {
    "m_psi": (0.0, 0.25),
    "psi_phi_mix": (0.0, 0.25),
    "psi_03_mix": (0.0, 0.25),
    "mems": (1.0 / 9.0, 0.25),
}


def mems_reference(kind: str, delta: float) -> float:
    """Reference concurrence-versus-delta curves for figure overlays.

    ``m_psi``: entangled pair mixed with one excited qubit, C = 1 - sqrt(1
    - 4 delta). ``psi_phi_mix``: mixture of the two Bell states, C = 4
    delta. ``psi_03_mix``: entangled pair mixed with the ground or doubly
    excited state, C = 2 sqrt(delta). ``mems``: the maximally entangled
    mixed states, which follow 2 sqrt(delta) down to delta = 1/9 and leave
    the plot vertically there.
    """
    if kind not in _CURVE_DOMAINS:
        raise InvalidParameters(
            f"unknown curve {kind!r}; valid: {sorted(_CURVE_DOMAINS)}"
        )
    lo, hi = _CURVE_DOMAINS[kind]
    if not (lo - _DOMAIN_GRACE <= delta <= hi + _DOMAIN_GRACE):
        raise DeltaOutOfRange(
            f"delta for {kind} must lie in [{lo}, {hi}], got {delta!r}"
        )
    delta = min(max(delta, lo), hi)
    if kind == "m_psi":
        return 1.0 - math.sqrt(max(0.0, 1.0 - 4.0 * delta))
    if kind == "psi_phi_mix":
        return 4.0 * delta
    return 2.0 * math.sqrt(delta)
