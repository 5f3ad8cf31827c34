"""Shared test helpers: sampling-law draws and hypothesis strategies."""
import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qupair.model import SystemParams

settings.register_profile(
    "qupair",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qupair")


def law_draw(rng, preset="all", dephasing=False):
    """One parameter draw following the documented sampling law."""
    if preset == "opposite":
        r1, r2 = 1.0, 0.0
        g1 = g2 = 10.0 ** rng.uniform(-2.0, 2.0)
    else:
        hi = 0.5 if preset == "thermal" else 1.0
        r = np.sort(rng.uniform(0.0, hi, 2))
        r1, r2 = r[1], r[0]
        g1, g2 = 10.0 ** rng.uniform(-2.0, 2.0, 2)
    delta = 0.0 if rng.uniform() < 0.5 else rng.uniform(0.0, 10.0)
    d1 = d2 = 0.0
    if dephasing:
        d1, d2 = rng.uniform(0.0, 20.0, 2)
    return SystemParams.from_bath_nature(
        g1, r1, g2, r2, delta=delta, deph1=d1, deph2=d2
    )


_rate = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)
_detuning = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


def params_strategy(min_gamma=0.0):
    """Strategy over valid parameter sets.

    With ``min_gamma`` > 0 both qubits keep a nonzero total rate, which
    guarantees a unique steady state.
    """
    lo = st.floats(min_value=min_gamma, max_value=50.0, allow_nan=False)
    return st.builds(
        SystemParams,
        delta=_detuning,
        gamma1=lo,
        pump1=_rate,
        gamma2=lo,
        pump2=_rate,
        deph1=st.floats(min_value=0.0, max_value=20.0, allow_nan=False),
        deph2=st.floats(min_value=0.0, max_value=20.0, allow_nan=False),
    )
