"""Steady states and entanglement of two dissipatively coupled qubits."""

__version__ = "0.1.0"

from .errors import (
    DegenerateRates,
    DeltaOutOfRange,
    InvalidObservables,
    InvalidParameters,
    NonUniqueSteadyState,
    NotBlockForm,
    NotPositive,
    QupairError,
    UsageError,
)
from .model import (
    BASIS_LABELS,
    TRACE_INDICES,
    DensityMatrix,
    Liouvillian,
    SteadyObservables,
    SystemParams,
    build_liouvillian,
    observables_from_rho,
    rho_from_observables,
    solve_steady_state,
    steady_state,
    unvec,
    vec,
)
from .metrics import (
    BellDecomposition,
    EntanglementReport,
    c_bounds,
    concurrence_block,
    concurrence_general,
    delta_correlator,
    entanglement_report,
    g2_cross,
    linear_entropy,
    r_decomposition,
)
from .analytic import (
    AlphaPoint,
    EffectiveRates,
    FamilyPoint,
    ThermalPoint,
    alpha_point,
    effective_observables,
    effective_rates,
    mems_reference,
    optimal_concurrence_from_entropy,
    optimal_family,
    thermal_family,
)
from .explore import (
    AxisSpec,
    DephasingMaxima,
    SweepResult,
    SweepRow,
    SweepSpec,
    dephasing_sweep,
    family_trace,
    grid_sweep,
    maximize_concurrence,
    sample_plane,
)

__all__ = [
    "QupairError",
    "InvalidParameters",
    "NonUniqueSteadyState",
    "NotPositive",
    "InvalidObservables",
    "NotBlockForm",
    "DeltaOutOfRange",
    "DegenerateRates",
    "UsageError",
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
    "__version__",
]
