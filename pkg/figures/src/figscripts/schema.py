"""CSV schemas the figure scripts understand, and strict loading.

Each figure id names the kinds of CSV it consumes, in order. A file whose
header line differs from its kind's expectation is rejected with
SchemaMismatch; nothing is ever guessed from column positions.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

__all__ = ["SchemaMismatch", "FigureSpec", "HEADERS", "FIGURE_INPUTS",
           "load_table", "load_inputs"]


class SchemaMismatch(Exception):
    """A CSV does not carry the header a figure expects."""


HEADERS = {
    "sample": ("r1,r2,Gamma1,Gamma2,Delta,deph1,deph2,"
               "n1,n2,n1n2,n12_re,n12_im,C,SL,delta,g2,err"),
    "family": "alpha,C,SL,delta,Rt1,Rt2,Rtpsi,Rt",
    "grid": "Gamma1,Gamma2,C,SL,delta,err",
    "dephasing": "gamma_d,Gamma,C,delta,err",
    "maxima": "gamma_d,Gamma_at_Cmax,Cmax,Gamma_at_deltamax,deltamax",
}

#: Input kinds per figure id: (required, optional). Optional inputs extend
#: the required ones in order.
FIGURE_INPUTS = {
    "plane_csl": (("sample", "family"), ("sample",)),
    "family_curves": (("family", "family"), ()),
    "contours": (("grid", "grid"), ()),
    "plane_cdelta": (("sample", "family"), ("sample",)),
    "dephasing": (("dephasing", "maxima"), ()),
}


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: figure id, input CSV paths, output image path."""

    figure: str
    inputs: tuple[str, ...]
    output: str

    def __post_init__(self):
        if self.figure not in FIGURE_INPUTS:
            raise SchemaMismatch(
                f"unknown figure {self.figure!r}; "
                f"valid: {', '.join(sorted(FIGURE_INPUTS))}"
            )
        required, optional = FIGURE_INPUTS[self.figure]
        lo, hi = len(required), len(required) + len(optional)
        if not lo <= len(self.inputs) <= hi:
            raise SchemaMismatch(
                f"{self.figure} takes {lo}"
                + (f" to {hi}" if hi > lo else "")
                + f" input CSVs ({', '.join(required + optional)}), "
                f"got {len(self.inputs)}"
            )


class Table:
    """Columns of one CSV: floats with NaN for empty cells, plus the raw
    error column when present."""

    def __init__(self, kind: str, columns: dict):
        self.kind = kind
        self.columns = columns

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def __contains__(self, name: str) -> bool:
        return name in self.columns


def load_table(path: str, kind: str) -> Table:
    expected = HEADERS[kind]
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(f"{path}: empty file, expected a "
                                 f"{kind} header") from None
        if ",".join(header) != expected:
            raise SchemaMismatch(
                f"{path}: header does not match the {kind} schema; "
                f"expected {expected!r}, got {','.join(header)!r}"
            )
        rows = list(reader)
    names = expected.split(",")
    columns: dict = {}
    for j, name in enumerate(names):
        if name == "err":
            columns[name] = np.array([row[j] for row in rows], dtype=object)
        else:
            columns[name] = np.array(
                [float(row[j]) if row[j] != "" else np.nan for row in rows]
            )
    return Table(kind, columns)


def load_inputs(spec: FigureSpec) -> list[Table]:
    required, optional = FIGURE_INPUTS[spec.figure]
    kinds = (required + optional)[:len(spec.inputs)]
    return [load_table(path, kind)
            for path, kind in zip(spec.inputs, kinds)]
