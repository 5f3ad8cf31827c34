"""Command line entry point and configuration handling.

A run is a subcommand plus flat key = value settings. Settings come from
three layers with increasing precedence: built-in defaults, an optional
config file (``--config``), and command line flags. ``render_config`` writes
a config back out in exactly the form ``parse_config`` accepts, so a parsed
configuration survives a round trip unchanged.

Exit codes: 0 on success, 1 for runtime or file errors, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import __version__, io
from .errors import InvalidParameters, QupairError, UsageError
from .explore import (
    AxisSpec,
    SweepSpec,
    dephasing_sweep,
    family_trace,
    grid_sweep,
    maximize_concurrence,
    sample_plane,
)
from .metrics import entanglement_report
from .model import SystemParams, observables_from_rho, steady_state

__all__ = ["RunConfig", "parse_config", "render_config", "main"]

_COMMON = {"out": "-", "format": "", "seed": "0", "workers": "1"}

#: Per-subcommand setting names and their defaults. An empty default means
#: the setting is unset unless given.
_KEYS: dict[str, dict[str, str]] = {
    "steady": {**_COMMON, "gamma1": "", "pump1": "", "gamma2": "", "pump2": "",
               "Gamma1": "", "r1": "", "Gamma2": "", "r2": "",
               "delta": "0", "deph1": "0", "deph2": "0"},
    "sample": {**_COMMON, "count": "1000", "preset": "all",
               "r1": "", "r2": "", "delta": "", "deph": "", "tie_r": ""},
    "grid": {**_COMMON, "r1": "", "r2": "", "delta": "0", "deph": "0",
             "gamma1_axis": "0.1:20:48:log", "gamma2_axis": "0.1:20:48:log"},
    "family": {**_COMMON, "family": "optimal", "alpha_axis": "0:8:161"},
    "dephasing": {**_COMMON, "gd_values": "0,2,4,6,8,10,12,14,16,18,20",
                  "gamma_axis": "0.05:60:121"},
    "optimize": {**_COMMON, "preset": "all"},
}

_INT_KEYS = ("seed", "workers", "count")
_FLOAT_KEYS = ("gamma1", "pump1", "gamma2", "pump2", "Gamma1", "r1",
               "Gamma2", "r2", "delta", "deph1", "deph2", "deph", "tie_r")
_DEFAULT_FORMAT = {"steady": "json", "optimize": "json"}

_VERSION_LINE = f"qupair {__version__} (schema {io.SCHEMA_VERSION})"


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: subcommand plus every setting as a string."""

    subcommand: str
    settings: tuple[tuple[str, str], ...]

    def value(self, key: str) -> str:
        return dict(self.settings)[key]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def _valid_keys_note(mode: str) -> str:
    return f"valid keys for {mode}: " + ", ".join(sorted(_KEYS[mode]))


def _parse_config_text(text: str, source: str) -> dict[str, str]:
    settings: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{source}:{lineno}: expected key = value, "
                             f"got {raw!r}")
        key, _, value = line.partition("=")
        settings[key.strip()] = value.strip()
    return settings


def _check_types(mode: str, settings: dict[str, str]) -> None:
    for key, value in settings.items():
        if value == "":
            continue
        try:
            if key in _INT_KEYS:
                int(value)
            elif key in _FLOAT_KEYS:
                float(value)
        except ValueError:
            kind = "an integer" if key in _INT_KEYS else "a number"
            raise UsageError(f"{key} must be {kind}, got {value!r}") from None
    fmt = settings.get("format", "")
    if fmt not in ("", "csv", "json"):
        raise UsageError(f"format must be csv or json, got {fmt!r}")


def parse_config(argv: list[str]) -> RunConfig:
    """Resolve argv (and any ``--config`` file it names) into a RunConfig."""
    pre = _Parser(prog="qupair", add_help=False)
    pre.add_argument("--config")
    pre.add_argument("--version", action="version", version=_VERSION_LINE)
    ns0, rest = pre.parse_known_args(argv)

    file_settings: dict[str, str] = {}
    if ns0.config is not None:
        try:
            with open(ns0.config, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from exc
        file_settings = _parse_config_text(text, ns0.config)

    mode = None
    if rest and not rest[0].startswith("-"):
        mode = rest[0]
        rest = rest[1:]
    elif "subcommand" in file_settings:
        mode = file_settings["subcommand"]
    if mode not in _KEYS:
        raise UsageError(
            f"unknown or missing subcommand {mode!r}; "
            f"expected one of: {', '.join(_KEYS)}"
        )

    parser = _Parser(prog=f"qupair {mode}")
    for key in _KEYS[mode]:
        parser.add_argument(_flag(key), dest=key, default=None, metavar="V")
    ns, extra = parser.parse_known_args(rest)
    if extra:
        raise UsageError(f"unknown arguments: {' '.join(extra)}; "
                         + _valid_keys_note(mode))

    merged = dict(_KEYS[mode])
    for key, value in file_settings.items():
        if key == "subcommand":
            continue
        if key not in merged:
            raise UsageError(f"unknown config key {key!r}; "
                             + _valid_keys_note(mode))
        merged[key] = value
    for key in _KEYS[mode]:
        given = getattr(ns, key)
        if given is not None:
            merged[key] = given

    _check_types(mode, merged)
    return RunConfig(subcommand=mode, settings=tuple(sorted(merged.items())))


def render_config(config: RunConfig) -> str:
    """Config-file text that parses back to an equal RunConfig."""
    lines = [f"subcommand = {config.subcommand}"]
    lines += [f"{key} = {value}" for key, value in config.settings
              if value != ""]
    return "\n".join(lines) + "\n"


def _built(factory, *args, **kwargs):
    """Constructing run inputs from user settings; bad values are usage."""
    try:
        return factory(*args, **kwargs)
    except InvalidParameters as exc:
        raise UsageError(str(exc)) from exc


def _parse_axis(text: str, key: str) -> AxisSpec:
    parts = text.split(":")
    log = False
    if len(parts) == 4:
        if parts[3] != "log":
            raise UsageError(f"{key}: fourth field must be 'log', "
                             f"got {parts[3]!r}")
        log = True
        parts = parts[:3]
    if len(parts) != 3:
        raise UsageError(f"{key} must be LO:HI:STEPS[:log], got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"{key} must be LO:HI:STEPS[:log], "
                         f"got {text!r}") from None
    return _built(AxisSpec, lo, hi, steps, log=log)


def _qubit_rates(s: dict[str, str], qubit: int) -> tuple[float, float]:
    """One qubit's (decay, pump) from either entry style, never both."""
    direct = [f"gamma{qubit}", f"pump{qubit}"]
    derived = [f"Gamma{qubit}", f"r{qubit}"]
    has_direct = any(s[k] != "" for k in direct)
    has_derived = any(s[k] != "" for k in derived)
    if has_direct and has_derived:
        raise UsageError(
            f"qubit {qubit}: give either {'/'.join(direct)} or "
            f"{'/'.join(derived)}, not both"
        )
    if has_derived:
        total = float(s[derived[0]] or "0")
        nature = float(s[derived[1]] or "0")
        if not 0.0 <= nature <= 1.0:
            raise UsageError(f"r{qubit} must be in [0, 1], got {nature!r}")
        return (1.0 - nature) * total, nature * total
    return float(s[direct[0]] or "0"), float(s[direct[1]] or "0")


def _run_steady(s: dict[str, str]) -> io.SteadyReport:
    gamma1, pump1 = _qubit_rates(s, 1)
    gamma2, pump2 = _qubit_rates(s, 2)
    params = _built(
        SystemParams, delta=float(s["delta"]), gamma1=gamma1, pump1=pump1,
        gamma2=gamma2, pump2=pump2, deph1=float(s["deph1"]),
        deph2=float(s["deph2"]),
    )
    rho = steady_state(params)
    return io.SteadyReport(params=params, rho=rho,
                           observables=observables_from_rho(rho),
                           report=entanglement_report(rho))


def _run_sample(s: dict[str, str]):
    overrides = {key: float(s[key])
                 for key in ("r1", "r2", "delta", "deph", "tie_r")
                 if s[key] != ""}
    spec = _built(SweepSpec.plane, int(s["count"]), s["preset"],
                  seed=int(s["seed"]), workers=int(s["workers"]), **overrides)
    return sample_plane(spec)


def _run_grid(s: dict[str, str]):
    if s["r1"] == "" or s["r2"] == "":
        raise UsageError("grid needs both bath natures: --r1 and --r2")
    spec = _built(
        SweepSpec.grid,
        _parse_axis(s["gamma1_axis"], "gamma1_axis"),
        _parse_axis(s["gamma2_axis"], "gamma2_axis"),
        r1=float(s["r1"]), r2=float(s["r2"]), delta=float(s["delta"]),
        deph=float(s["deph"]), seed=int(s["seed"]), workers=int(s["workers"]),
    )
    return grid_sweep(spec)


def _run_family(s: dict[str, str]):
    axis = _parse_axis(s["alpha_axis"], "alpha_axis")
    if axis.log:
        raise UsageError("alpha_axis is linear; drop the :log field")
    return _built(family_trace, s["family"], (axis.start, axis.stop),
                  axis.steps)


def _run_dephasing(s: dict[str, str]):
    try:
        levels = tuple(float(v) for v in s["gd_values"].split(","))
    except ValueError:
        raise UsageError(
            f"gd_values must be comma-separated numbers, "
            f"got {s['gd_values']!r}"
        ) from None
    axis = _parse_axis(s["gamma_axis"], "gamma_axis")
    if axis.log:
        raise UsageError("gamma_axis spacing is always by decade; "
                         "drop the :log field")
    return _built(dephasing_sweep, levels, (axis.start, axis.stop),
                  axis.steps)


def _run_optimize(s: dict[str, str]) -> io.OptimizeReport:
    seed = int(s["seed"])
    params, report = _built(maximize_concurrence, s["preset"], rng_seed=seed)
    return io.OptimizeReport(preset=s["preset"], seed=seed, params=params,
                             report=report)


_RUNNERS = {
    "steady": _run_steady,
    "sample": _run_sample,
    "grid": _run_grid,
    "family": _run_family,
    "dephasing": _run_dephasing,
    "optimize": _run_optimize,
}


def _run(config: RunConfig) -> int:
    s = dict(config.settings)
    mode = config.subcommand
    fmt = s["format"] or _DEFAULT_FORMAT.get(mode, "csv")
    if mode in _DEFAULT_FORMAT and fmt != "json":
        raise UsageError(f"{mode} reports are json only")
    result = _RUNNERS[mode](s)
    io.emit(result, fmt, s["out"])
    return 0


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(list(argv))
        return _run(config)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, QupairError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
