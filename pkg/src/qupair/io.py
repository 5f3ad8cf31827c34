"""File emission: CSV tables and JSON documents with run metadata.

Every float is rendered with seventeen significant digits so that a value
written to disk parses back to the identical double, and rerunning the same
configuration reproduces the file byte for byte. Output uses LF line endings
and a dot decimal separator regardless of locale.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import InvalidParameters
from .explore import SweepResult, SweepRow, SweepSpec
from .metrics import EntanglementReport
from .model import DensityMatrix, SteadyObservables, SystemParams

__all__ = [
    "SCHEMA_VERSION",
    "SteadyReport",
    "OptimizeReport",
    "format_float",
    "sweep_csv",
    "maxima_csv",
    "sweep_json",
    "steady_json",
    "optimize_json",
    "emit",
]

#: Version of the file layouts below, echoed into JSON metadata.
SCHEMA_VERSION = 1

_HEADERS = {
    "plane_sample": ("r1,r2,Gamma1,Gamma2,Delta,deph1,deph2,"
                     "n1,n2,n1n2,n12_re,n12_im,C,SL,delta,g2,err"),
    "grid": "Gamma1,Gamma2,C,SL,delta,err",
    "family": "alpha,C,SL,delta,Rt1,Rt2,Rtpsi,Rt",
    "dephasing": "gamma_d,Gamma,C,delta,err",
}

_MAXIMA_HEADER = "gamma_d,Gamma_at_Cmax,Cmax,Gamma_at_deltamax,deltamax"


@dataclass(frozen=True)
class SteadyReport:
    """Single-point result bundle: parameters, state, and derived numbers."""

    params: SystemParams
    rho: DensityMatrix
    observables: SteadyObservables
    report: EntanglementReport


@dataclass(frozen=True)
class OptimizeReport:
    """Winning parameters of a concurrence search and their metrics."""

    preset: str
    seed: int
    params: SystemParams
    report: EntanglementReport


def format_float(value: float) -> str:
    return "%.17g" % float(value)


def _cell(value) -> str:
    return "" if value is None else format_float(value)


def _metric_cells(row: SweepRow) -> list[str]:
    if row.report is None:
        return ["", ""]
    return [_cell(row.report.concurrence), _cell(row.report.delta_corr)]


def _sample_line(row: SweepRow) -> str:
    p = row.params
    cells = [_cell(p.r1), _cell(p.r2), _cell(p.Gamma1), _cell(p.Gamma2),
             _cell(p.delta), _cell(p.deph1), _cell(p.deph2)]
    if row.observables is None:
        cells += [""] * 9
    else:
        o, r = row.observables, row.report
        cells += [_cell(o.n1), _cell(o.n2), _cell(o.n1n2),
                  _cell(o.n12.real), _cell(o.n12.imag),
                  _cell(r.concurrence), _cell(r.linear_entropy),
                  _cell(r.delta_corr), _cell(r.g2_cross)]
    cells.append(row.error)
    return ",".join(cells)


def _grid_line(row: SweepRow) -> str:
    c, d = _metric_cells(row)
    sl = "" if row.report is None else _cell(row.report.linear_entropy)
    return ",".join([_cell(row.params.Gamma1), _cell(row.params.Gamma2),
                     c, sl, d, row.error])


def _family_line(row: SweepRow) -> str:
    r = row.report
    return ",".join([
        _cell(row.coord), _cell(r.concurrence), _cell(r.linear_entropy),
        _cell(r.delta_corr), _cell(r.rtilde1), _cell(r.rtilde2),
        _cell(r.rtilde_psi), _cell(r.rtilde),
    ])


def _dephasing_line(row: SweepRow) -> str:
    c, d = _metric_cells(row)
    return ",".join([_cell(row.params.deph1), _cell(row.coord), c, d,
                     row.error])


_LINE_BUILDERS = {
    "plane_sample": _sample_line,
    "grid": _grid_line,
    "family": _family_line,
    "dephasing": _dephasing_line,
}


def sweep_csv(result: SweepResult) -> str:
    mode = result.spec.mode
    if mode not in _LINE_BUILDERS:
        raise InvalidParameters(f"no CSV layout for mode {mode!r}")
    build = _LINE_BUILDERS[mode]
    lines = [_HEADERS[mode]]
    lines += [build(row) for row in result.rows]
    return "\n".join(lines) + "\n"


def maxima_csv(result: SweepResult) -> str:
    lines = [_MAXIMA_HEADER]
    for m in result.maxima:
        lines.append(",".join([
            _cell(m.gamma_d), _cell(m.gamma_at_c_max), _cell(m.c_max),
            _cell(m.gamma_at_delta_max), _cell(m.delta_max),
        ]))
    return "\n".join(lines) + "\n"


def _axis_dict(axis) -> dict | None:
    if axis is None:
        return None
    return {"start": float(axis.start), "stop": float(axis.stop),
            "steps": int(axis.steps), "log": bool(axis.log)}


def _spec_dict(spec: SweepSpec) -> dict:
    return {
        "mode": spec.mode,
        "preset": spec.preset,
        "sample_count": int(spec.sample_count),
        "axis1": _axis_dict(spec.axis1),
        "axis2": _axis_dict(spec.axis2),
        "overrides": {key: float(value) for key, value in spec.overrides},
        "levels": [float(level) for level in spec.levels],
        "workers": int(spec.workers),
    }


def _params_dict(p: SystemParams) -> dict:
    return {"delta": float(p.delta), "gamma1": float(p.gamma1),
            "pump1": float(p.pump1), "gamma2": float(p.gamma2),
            "pump2": float(p.pump2), "deph1": float(p.deph1),
            "deph2": float(p.deph2), "g": float(p.g)}


def _observables_dict(o: SteadyObservables) -> dict:
    return {"n1": float(o.n1), "n2": float(o.n2), "n1n2": float(o.n1n2),
            "n12_re": float(o.n12.real), "n12_im": float(o.n12.imag)}


def _metrics_dict(r: EntanglementReport) -> dict:
    return {
        "concurrence": float(r.concurrence),
        "linear_entropy": float(r.linear_entropy),
        "delta_corr": float(r.delta_corr),
        "g2_cross": None if r.g2_cross is None else float(r.g2_cross),
        "r1_weight": float(r.r1_weight),
        "r2_weight": float(r.r2_weight),
        "rpsi_weight": float(r.rpsi_weight),
        "rtilde1": float(r.rtilde1),
        "rtilde2": float(r.rtilde2),
        "rtilde_psi": float(r.rtilde_psi),
        "rtilde": float(r.rtilde),
        "psi_phase": float(r.psi_phase),
    }


def _row_dict(row: SweepRow) -> dict:
    doc: dict = {"index": row.index, "params": _params_dict(row.params)}
    if row.coord is not None:
        doc["coord"] = float(row.coord)
    doc["observables"] = (None if row.observables is None
                          else _observables_dict(row.observables))
    doc["metrics"] = None if row.report is None else _metrics_dict(row.report)
    doc["err"] = row.error
    return doc


def sweep_json(result: SweepResult) -> str:
    doc = {
        "meta": {
            "version": result.version,
            "schema": SCHEMA_VERSION,
            "seed": int(result.seed),
            "spec": _spec_dict(result.spec),
        },
        "rows": [_row_dict(row) for row in result.rows],
    }
    if result.maxima:
        doc["maxima"] = [
            {"gamma_d": float(m.gamma_d),
             "Gamma_at_Cmax": float(m.gamma_at_c_max),
             "Cmax": float(m.c_max),
             "Gamma_at_deltamax": float(m.gamma_at_delta_max),
             "deltamax": float(m.delta_max)}
            for m in result.maxima
        ]
    return json.dumps(doc, separators=(",", ":")) + "\n"


def steady_json(report: SteadyReport) -> str:
    m = report.rho.matrix
    doc = {
        "meta": {"version": __version__, "schema": SCHEMA_VERSION},
        "params": _params_dict(report.params),
        "rho_re": [[float(x) for x in line] for line in m.real],
        "rho_im": [[float(x) for x in line] for line in m.imag],
        "observables": _observables_dict(report.observables),
        "metrics": _metrics_dict(report.report),
    }
    return json.dumps(doc, indent=2) + "\n"


def optimize_json(report: OptimizeReport) -> str:
    doc = {
        "meta": {"version": __version__, "schema": SCHEMA_VERSION,
                 "preset": report.preset, "seed": int(report.seed)},
        "params": _params_dict(report.params),
        "metrics": _metrics_dict(report.report),
    }
    return json.dumps(doc, indent=2) + "\n"


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _maxima_path(path: str) -> str:
    p = Path(path)
    return str(p.with_name(p.stem + "_maxima" + p.suffix))


def emit(result, fmt: str, path: str) -> None:
    """Write a result to ``path`` ("-" for stdout) in the given format.

    Dephasing sweeps in CSV form produce a second file next to the main one,
    suffixed ``_maxima``, holding the per-level peak table; in JSON form the
    peaks ride along in the single document.
    """
    if isinstance(result, SteadyReport):
        _write(path, steady_json(result))
        return
    if isinstance(result, OptimizeReport):
        _write(path, optimize_json(result))
        return
    if fmt == "json":
        _write(path, sweep_json(result))
        return
    _write(path, sweep_csv(result))
    if result.spec.mode == "dephasing":
        if path == "-":
            sys.stdout.write("\n" + maxima_csv(result))
        else:
            _write(_maxima_path(path), maxima_csv(result))
