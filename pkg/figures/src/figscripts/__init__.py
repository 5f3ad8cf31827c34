"""Figure scripts for the steady-state entanglement survey.

The package turns result CSV files into the survey's five summary figures.
It never recomputes physics: every curve and point is read from a CSV column
or derived from one by a fixed coordinate transform.
"""

__version__ = "0.1.0"

from .figures import render
from .schema import (
    FIGURE_INPUTS,
    HEADERS,
    FigureSpec,
    SchemaMismatch,
    Table,
    load_inputs,
    load_table,
)

__all__ = [
    "FIGURE_INPUTS",
    "HEADERS",
    "FigureSpec",
    "SchemaMismatch",
    "Table",
    "load_inputs",
    "load_table",
    "render",
    "__version__",
]
