"""Parameter-space exploration: sampling, grids, traces, and maximization.

Every operation returns a SweepResult whose rows are index-ordered and fully
determined by the spec and seed, regardless of the worker count. Rows that
hit a degenerate parameter corner carry an error tag instead of aborting the
sweep.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import __version__
from .analytic import effective_observables, optimal_family
from .errors import InvalidParameters, QupairError
from .metrics import EntanglementReport, entanglement_report
from .model import (
    DensityMatrix,
    SteadyObservables,
    SystemParams,
    observables_from_rho,
    rho_from_observables,
    steady_state,
)

__all__ = [
    "AxisSpec",
    "SweepSpec",
    "SweepRow",
    "DephasingMaxima",
    "SweepResult",
    "sample_plane",
    "grid_sweep",
    "family_trace",
    "dephasing_sweep",
    "maximize_concurrence",
]

_MODES = ("plane_sample", "grid", "family", "dephasing", "optimize")
_PLANE_PRESETS = ("all", "thermal", "opposite")
_OPTIMIZE_PRESETS = ("all", "thermal", "opposite", "thermal_unequal")
_FAMILIES = ("optimal", "thermal")
_PLANE_KEYS = ("delta", "deph", "r1", "r2", "tie_r")
_GRID_KEYS = ("delta", "deph", "r1", "r2")

#: Sampled total rates cover these decades around the coupling.
_GAMMA_SPAN = (-2.0, 2.0)

_TRACE_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class AxisSpec:
    """One swept axis: ``steps`` values from ``start`` to ``stop``, spaced
    linearly or by decade."""

    start: float
    stop: float
    steps: int
    log: bool = False

    def __post_init__(self):
        ok = (
            math.isfinite(self.start)
            and math.isfinite(self.stop)
            and self.start < self.stop
            and self.steps >= 2
        )
        if ok and self.log:
            ok = self.start > 0.0
        if not ok:
            raise InvalidParameters(f"bad axis {self!r}")

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Everything that determines a sweep's output, echoed into metadata.

    ``overrides`` is a sorted tuple of (name, value) pairs; the accepted
    names depend on the mode. ``levels`` carries the dephasing-rate list for
    that mode and is empty otherwise.
    """

    mode: str
    preset: str = "all"
    sample_count: int = 0
    axis1: AxisSpec | None = None
    axis2: AxisSpec | None = None
    overrides: tuple[tuple[str, float], ...] = ()
    levels: tuple[float, ...] = ()
    rng_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.mode not in _MODES:
            raise InvalidParameters(f"unknown mode {self.mode!r}; valid: {_MODES}")
        if self.workers < 1:
            raise InvalidParameters(f"workers must be >= 1, got {self.workers!r}")
        for key, value in self.overrides:
            if not math.isfinite(value):
                raise InvalidParameters(f"override {key} = {value!r} is not finite")
        keys = [key for key, _ in self.overrides]
        if self.mode == "plane_sample":
            if self.preset not in _PLANE_PRESETS:
                raise InvalidParameters(
                    f"unknown preset {self.preset!r}; valid: {_PLANE_PRESETS}"
                )
            if self.sample_count < 1:
                raise InvalidParameters("sample_count must be >= 1")
            bad = sorted(set(keys) - set(_PLANE_KEYS))
            if bad:
                raise InvalidParameters(
                    f"unknown overrides {bad}; valid: {sorted(_PLANE_KEYS)}"
                )
        elif self.mode == "grid":
            if self.axis1 is None or self.axis2 is None:
                raise InvalidParameters("grid mode needs both axes")
            missing = {"r1", "r2"} - set(keys)
            bad = sorted(set(keys) - set(_GRID_KEYS))
            if missing or bad:
                raise InvalidParameters(
                    f"grid overrides must give r1 and r2 and nothing outside "
                    f"{sorted(_GRID_KEYS)}"
                )
        elif self.mode == "family":
            if self.preset not in _FAMILIES:
                raise InvalidParameters(
                    f"unknown family {self.preset!r}; valid: {_FAMILIES}"
                )
        elif self.mode == "optimize":
            if self.preset not in _OPTIMIZE_PRESETS:
                raise InvalidParameters(
                    f"unknown preset {self.preset!r}; valid: {_OPTIMIZE_PRESETS}"
                )

    @classmethod
    def plane(cls, sample_count: int, preset: str = "all", seed: int = 0,
              workers: int = 1, **overrides: float) -> "SweepSpec":
        pairs = tuple(sorted((k, float(v)) for k, v in overrides.items()))
        return cls(mode="plane_sample", preset=preset, sample_count=sample_count,
                   overrides=pairs, rng_seed=seed, workers=workers)

    @classmethod
    def grid(cls, axis1: AxisSpec, axis2: AxisSpec, *, r1: float, r2: float,
             delta: float = 0.0, deph: float = 0.0, seed: int = 0,
             workers: int = 1) -> "SweepSpec":
        pairs = (("delta", float(delta)), ("deph", float(deph)),
                 ("r1", float(r1)), ("r2", float(r2)))
        return cls(mode="grid", axis1=axis1, axis2=axis2, overrides=pairs,
                   rng_seed=seed, workers=workers)


@dataclass(frozen=True)
class SweepRow:
    """One evaluated parameter point.

    ``coord`` is the trace coordinate for family and dephasing rows (alpha
    and the swept rate, respectively), None for samples and grids. Failed
    rows carry the error name and None payloads.
    """

    index: int
    params: SystemParams
    observables: SteadyObservables | None
    report: EntanglementReport | None
    error: str = ""
    coord: float | None = None


@dataclass(frozen=True)
class DephasingMaxima:
    """Per-dephasing-rate peaks over the swept rate axis."""

    gamma_d: float
    gamma_at_c_max: float
    c_max: float
    gamma_at_delta_max: float
    delta_max: float


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    seed: int
    version: str
    rows: tuple[SweepRow, ...]
    maxima: tuple[DephasingMaxima, ...] = ()


def _outcome(params: SystemParams):
    try:
        rho = steady_state(params)
        return observables_from_rho(rho), entanglement_report(rho), ""
    except (QupairError, ArithmeticError) as exc:
        return None, None, type(exc).__name__


def _evaluate_all(params_list, workers: int):
    if workers > 1 and len(params_list) >= 32:
        chunk = max(1, len(params_list) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_outcome, params_list, chunksize=chunk))
    return [_outcome(p) for p in params_list]


def _rows_from(params_list, outcomes, coords=None) -> tuple[SweepRow, ...]:
    coords = coords if coords is not None else [None] * len(params_list)
    return tuple(
        SweepRow(index=i, params=p, observables=obs, report=rep, error=err,
                 coord=coord)
        for i, (p, (obs, rep, err), coord)
        in enumerate(zip(params_list, outcomes, coords))
    )


def _draw_law(rng: np.random.Generator, preset: str, over: dict) -> SystemParams:
    """One parameter draw: natures uniform (relabeled so r2 <= r1), total
    rates log-uniform over four decades, resonance with probability one
    half, otherwise a detuning up to ten couplings."""
    if preset == "opposite":
        r1, r2 = 1.0, 0.0
        g1 = g2 = 10.0 ** rng.uniform(*_GAMMA_SPAN)
    else:
        top = 0.5 if preset == "thermal" else 1.0
        a, b = rng.uniform(0.0, top), rng.uniform(0.0, top)
        r1, r2 = (a, b) if a >= b else (b, a)
        g1 = 10.0 ** rng.uniform(*_GAMMA_SPAN)
        g2 = 10.0 ** rng.uniform(*_GAMMA_SPAN)
    delta = 0.0 if rng.uniform() < 0.5 else rng.uniform(0.0, 10.0)
    r1 = over.get("r1", r1)
    r2 = over.get("r2", r2)
    if over.get("tie_r", 0.0):
        r2 = r1
    deph = over.get("deph", 0.0)
    return SystemParams.from_bath_nature(
        g1, r1, g2, r2, delta=over.get("delta", delta), deph1=deph, deph2=deph
    )


def sample_plane(spec: SweepSpec) -> SweepResult:
    """Random samples of the parameter space under the documented law."""
    if spec.mode != "plane_sample":
        raise InvalidParameters(f"sample_plane needs plane_sample, got {spec.mode!r}")
    over = dict(spec.overrides)
    rng = np.random.default_rng(spec.rng_seed)
    draws = [_draw_law(rng, spec.preset, over) for _ in range(spec.sample_count)]
    outcomes = _evaluate_all(draws, spec.workers)
    return SweepResult(spec=spec, seed=spec.rng_seed, version=__version__,
                       rows=_rows_from(draws, outcomes))


def grid_sweep(spec: SweepSpec) -> SweepResult:
    """Dense rate-versus-rate grid at fixed bath natures, row-major over
    (axis1, axis2)."""
    if spec.mode != "grid":
        raise InvalidParameters(f"grid_sweep needs grid, got {spec.mode!r}")
    over = dict(spec.overrides)
    deph = over.get("deph", 0.0)
    params_list = [
        SystemParams.from_bath_nature(
            float(g1), over["r1"], float(g2), over["r2"],
            delta=over.get("delta", 0.0), deph1=deph, deph2=deph,
        )
        for g1 in spec.axis1.values()
        for g2 in spec.axis2.values()
    ]
    outcomes = _evaluate_all(params_list, spec.workers)
    return SweepResult(spec=spec, seed=spec.rng_seed, version=__version__,
                       rows=_rows_from(params_list, outcomes))


def _thermal_state(alpha: float) -> DensityMatrix:
    """Closed-form thermal-family state (hot bath at one half, cold bath
    empty, equal rates alpha); continuous down to alpha = 0."""
    d = alpha * alpha + 4.0
    obs = SteadyObservables(
        n1=(0.5 * alpha * alpha + 1.0) / d,
        n2=1.0 / d,
        n1n2=0.25 / d,
        n12=-0.5j * alpha / d,
    )
    return rho_from_observables(obs)


def family_trace(family: str, alpha_range: tuple[float, float],
                 steps: int) -> SweepResult:
    """Trace a closed-form family over alpha, cross-checking each positive
    alpha against the numeric solver. The alpha = 0 endpoint is the
    continuous limit; the solver itself has no unique state there."""
    if family not in _FAMILIES:
        raise InvalidParameters(f"unknown family {family!r}; valid: {_FAMILIES}")
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if lo < 0.0:
        raise InvalidParameters(f"alpha must be >= 0, got {lo!r}")
    axis = AxisSpec(lo, hi, steps)
    rows = []
    for i, alpha in enumerate(float(a) for a in axis.values()):
        if family == "optimal":
            rho = optimal_family(alpha).rho
            params = SystemParams(pump1=alpha, gamma2=alpha)
        else:
            rho = _thermal_state(alpha)
            params = SystemParams.from_bath_nature(alpha, 0.5, alpha, 0.0)
        if alpha > 0.0:
            numeric = steady_state(params)
            dev = float(np.max(np.abs(numeric.matrix - rho.matrix)))
            if dev > _TRACE_CHECK_TOL:
                raise ArithmeticError(
                    f"family {family} at alpha={alpha}: closed form and "
                    f"solver disagree by {dev:.3e}"
                )
        rows.append(SweepRow(
            index=i, params=params, observables=observables_from_rho(rho),
            report=entanglement_report(rho), error="", coord=alpha,
        ))
    spec = SweepSpec(mode="family", preset=family, axis1=axis)
    return SweepResult(spec=spec, seed=0, version=__version__, rows=tuple(rows))


def _opposite_params(Gamma: float, gamma_d: float = 0.0) -> SystemParams:
    return SystemParams(pump1=Gamma, gamma2=Gamma, deph1=gamma_d, deph2=gamma_d)


def _concurrence_from_obs(obs: SteadyObservables) -> float:
    p00 = 1.0 - obs.n1 - obs.n2 + obs.n1n2
    return 2.0 * max(
        0.0, abs(obs.n12) - math.sqrt(max(0.0, p00 * obs.n1n2))
    )


def _golden_max(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    """Deterministic golden-section maximization over log10 of the argument,
    finished with one parabolic refinement."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = math.log10(lo), math.log10(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(10.0 ** c), f(10.0 ** d)
    while b - a > 1e-10:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(10.0 ** c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(10.0 ** d)
    t = 0.5 * (a + b)
    h = 1e-6
    f0, fm, fp = f(10.0 ** t), f(10.0 ** (t - h)), f(10.0 ** (t + h))
    denom = fm - 2.0 * f0 + fp
    if denom < 0.0:
        shift = 0.5 * h * (fm - fp) / denom
        if abs(shift) < h:
            t += shift
    best = 10.0 ** t
    return f(best), best


def dephasing_sweep(gamma_d_values, gamma_range: tuple[float, float],
                    steps: int) -> SweepResult:
    """Curves over the common rate for each dephasing value, plus the
    per-value peak locations of concurrence and of the correlator."""
    levels = tuple(float(g) for g in gamma_d_values)
    if not levels or any(not math.isfinite(g) or g < 0.0 for g in levels):
        raise InvalidParameters(f"bad dephasing values {gamma_d_values!r}")
    axis = AxisSpec(float(gamma_range[0]), float(gamma_range[1]), steps, log=True)
    gammas = [float(g) for g in axis.values()]
    params_list = [_opposite_params(g, gd) for gd in levels for g in gammas]
    outcomes = _evaluate_all(params_list, workers=1)
    rows = _rows_from(params_list, outcomes, coords=gammas * len(levels))

    maxima = []
    for gd in levels:
        c_path = lambda G: _concurrence_from_obs(
            effective_observables(_opposite_params(G, gd)))
        d_path = lambda G: (lambda o: o.n1 * o.n2 - o.n1n2)(
            effective_observables(_opposite_params(G, gd)))
        c_max, g_at_c = _golden_max(c_path, 1.0, 1e2)
        d_max, g_at_d = _golden_max(d_path, 1e-2, 1e2)
        maxima.append(DephasingMaxima(
            gamma_d=gd, gamma_at_c_max=g_at_c, c_max=c_max,
            gamma_at_delta_max=g_at_d, delta_max=d_max,
        ))
    spec = SweepSpec(mode="dephasing", axis1=axis, levels=levels)
    return SweepResult(spec=spec, seed=0, version=__version__, rows=rows,
                       maxima=tuple(maxima))


def _nelder_mead(f, x0, lower, upper, step=0.15):
    """Simplex minimization with box projection.

    Stops when the simplex diameter is below 1e-6 and the value spread
    below 1e-10, or after 400 iterations.
    """
    n = len(x0)
    clip = lambda x: np.minimum(np.maximum(x, lower), upper)
    points = [clip(np.asarray(x0, float))]
    for i in range(n):
        trial = points[0].copy()
        move = step if trial[i] + step <= upper[i] else -step
        trial[i] += move
        points.append(clip(trial))
    values = [f(p) for p in points]
    for _ in range(400):
        order = np.argsort(values)
        points = [points[k] for k in order]
        values = [values[k] for k in order]
        diam = max(np.max(np.abs(p - points[0])) for p in points[1:])
        if diam < 1e-6 and values[-1] - values[0] < 1e-10:
            break
        centroid = np.mean(points[:-1], axis=0)
        reflected = clip(centroid + (centroid - points[-1]))
        fr = f(reflected)
        if fr < values[0]:
            expanded = clip(centroid + 2.0 * (centroid - points[-1]))
            fe = f(expanded)
            points[-1], values[-1] = (
                (expanded, fe) if fe < fr else (reflected, fr)
            )
        elif fr < values[-2]:
            points[-1], values[-1] = reflected, fr
        else:
            contracted = clip(centroid + 0.5 * (points[-1] - centroid))
            fcon = f(contracted)
            if fcon < values[-1]:
                points[-1], values[-1] = contracted, fcon
            else:
                points = [points[0]] + [
                    clip(points[0] + 0.5 * (p - points[0])) for p in points[1:]
                ]
                values = [values[0]] + [f(p) for p in points[1:]]
    best = int(np.argmin(values))
    return points[best], values[best]


def _polish_coordinates(f, x, lower, upper, rounds=2, h=1e-4):
    """Per-coordinate parabolic refinement of a local minimum; skips
    coordinates pinned at the box."""
    x = np.asarray(x, float).copy()
    fx = f(x)
    for _ in range(rounds):
        for i in range(len(x)):
            if x[i] - h < lower[i] or x[i] + h > upper[i]:
                continue
            xm, xp = x.copy(), x.copy()
            xm[i] -= h
            xp[i] += h
            fm, fp = f(xm), f(xp)
            denom = fm - 2.0 * fx + fp
            if denom <= 0.0:
                continue
            shift = 0.5 * h * (fm - fp) / denom
            if abs(shift) >= h:
                continue
            trial = x.copy()
            trial[i] += shift
            ft = f(trial)
            if ft < fx:
                x, fx = trial, ft
    return x, fx


def _optimizer_space(preset: str, gamma_bounds: tuple[float, float]):
    t_lo, t_hi = math.log10(gamma_bounds[0]), math.log10(gamma_bounds[1])
    if preset == "thermal_unequal":
        lower, upper = np.array([t_lo, t_lo]), np.array([t_hi, t_hi])

        def build(x):
            return SystemParams.from_bath_nature(
                10.0 ** x[0], 0.5, 10.0 ** x[1], 0.0)
    else:
        r_top = 0.5 if preset == "thermal" else 1.0
        lower = np.array([0.0, 0.0, t_lo, t_lo])
        upper = np.array([r_top, r_top, t_hi, t_hi])

        def build(x):
            return SystemParams.from_bath_nature(
                10.0 ** x[2], x[0], 10.0 ** x[3], x[1])
    return lower, upper, build


def maximize_concurrence(preset: str, rng_seed: int = 0,
                         gamma_bounds: tuple[float, float] = (1e-2, 1e2),
                         ) -> tuple[SystemParams, EntanglementReport]:
    """Best concurrence under a preset's constraints, at resonance.

    Multi-start: the best sixteen points of a coarse scan plus sixteen
    seeded jitters of them, each refined by a derivative-free simplex and a
    final parabolic polish. The returned report is recomputed through the
    numeric solver at the winning parameters.
    """
    if preset not in _OPTIMIZE_PRESETS:
        raise InvalidParameters(
            f"unknown preset {preset!r}; valid: {_OPTIMIZE_PRESETS}"
        )
    if preset == "opposite":
        objective = lambda G: _concurrence_from_obs(
            effective_observables(_opposite_params(G)))
        _, best_gamma = _golden_max(objective, max(1.0, gamma_bounds[0]),
                                    gamma_bounds[1])
        params = _opposite_params(best_gamma)
    else:
        lower, upper, build = _optimizer_space(preset, gamma_bounds)

        def loss(x):
            return -_concurrence_from_obs(effective_observables(build(x)))

        grids = [
            np.linspace(lo, hi, 9 if hi - lo > 2.0 else 5)
            for lo, hi in zip(lower, upper)
        ]
        mesh = np.stack([m.ravel() for m in np.meshgrid(*grids)], axis=-1)
        coarse = sorted(mesh, key=loss)[:16]
        rng = np.random.default_rng(rng_seed)
        starts = list(coarse)
        scale = 0.1 * (upper - lower)
        for point in coarse:
            starts.append(np.clip(point + rng.normal(0.0, scale), lower, upper))
        best_x, best_f = None, math.inf
        for start in starts:
            x, fx = _nelder_mead(loss, start, lower, upper)
            if fx < best_f:
                best_x, best_f = x, fx
        best_x, _ = _polish_coordinates(loss, best_x, lower, upper)
        params = build(best_x)
        # The objective is label-symmetric at resonance; report the winner
        # in the convention that qubit 1 holds the hotter bath.
        if params.r2 > params.r1:
            params = params.swapped()
    rho = steady_state(params)
    return params, entanglement_report(rho)
