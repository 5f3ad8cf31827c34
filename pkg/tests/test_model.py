"""Core model tests.

The generator is checked against a brute-force oracle that applies the
master equation directly to each basis matrix |i><j| with plain matrix
products. All operators here are rebuilt from kets on purpose; nothing is
shared with the implementation under test.
"""
import numpy as np
import pytest
from hypothesis import given, settings

from conftest import law_draw, params_strategy
from qupair.errors import (
    DegenerateRates,
    InvalidObservables,
    InvalidParameters,
    NonUniqueSteadyState,
    NotPositive,
)
from qupair.model import (
    DensityMatrix,
    Liouvillian,
    SteadyObservables,
    SystemParams,
    TRACE_INDICES,
    build_liouvillian,
    observables_from_rho,
    rho_from_observables,
    solve_steady_state,
    steady_state,
    unvec,
    vec,
)

# ---------------------------------------------------------------- oracle

_K = np.eye(4)


def _kb(i, j):
    return np.outer(_K[i], _K[j]).astype(complex)


# Basis |0>=gg, |1>=eg, |2>=ge, |3>=ee; first letter is qubit 1.
_LOWER1 = _kb(0, 1) + _kb(2, 3)
_LOWER2 = _kb(0, 2) + _kb(1, 3)


def _oracle_rhs(rho, p):
    """Right-hand side of the master equation, written out literally."""
    num2 = _LOWER2.conj().T @ _LOWER2
    hop = _LOWER1.conj().T @ _LOWER2
    h = -p.delta * num2 + p.g * (hop + hop.conj().T)
    out = 1j * (rho @ h - h @ rho)
    pairs = (
        (p.gamma1, _LOWER1),
        (p.pump1, _LOWER1.conj().T),
        (p.gamma2, _LOWER2),
        (p.pump2, _LOWER2.conj().T),
        (p.deph1, _LOWER1.conj().T @ _LOWER1),
        (p.deph2, _LOWER2.conj().T @ _LOWER2),
    )
    for rate, op in pairs:
        opd = op.conj().T
        out += (rate / 2.0) * (2.0 * op @ rho @ opd - opd @ op @ rho - rho @ opd @ op)
    return out


def _oracle_liouvillian(p):
    cols = np.empty((16, 16), complex)
    for j in range(4):
        for i in range(4):
            cols[:, i + 4 * j] = _oracle_rhs(_kb(i, j), p).flatten(order="F")
    return cols


PINNED = SystemParams(
    delta=0.3, gamma1=0.2, pump1=0.5, gamma2=0.7, pump2=0.1, deph1=0.05, deph2=0.05
)


# ------------------------------------------------------------- generator


def test_generator_matches_brute_force_at_pinned_params():
    got = build_liouvillian(PINNED).matrix
    want = _oracle_liouvillian(PINNED)
    assert np.max(np.abs(got - want)) <= 1e-13


def test_generator_matches_brute_force_random():
    rng = np.random.default_rng(314)
    for _ in range(60):
        p = law_draw(rng, dephasing=True)
        err = np.max(np.abs(build_liouvillian(p).matrix - _oracle_liouvillian(p)))
        assert err <= 1e-12


def test_zero_system_gives_zero_generator():
    p = SystemParams(g=0.0)
    assert np.all(build_liouvillian(p).matrix == 0)


def test_decay_only_annihilates_vacuum():
    p = SystemParams(gamma1=1.0, gamma2=2.0, g=1.0)
    vac = _kb(0, 0)
    out = build_liouvillian(p).matrix @ vec(vac)
    assert np.max(np.abs(out)) <= 1e-14


def test_trace_row_is_left_null():
    rng = np.random.default_rng(7)
    tr = np.zeros(16)
    tr[list(TRACE_INDICES)] = 1.0
    for _ in range(25):
        p = law_draw(rng, dephasing=True)
        assert np.max(np.abs(tr @ build_liouvillian(p).matrix)) <= 1e-12


def test_generator_is_affine_in_each_rate():
    base = dict(delta=0.7, gamma1=0.3, pump1=0.2, gamma2=0.4, pump2=0.6,
                deph1=0.1, deph2=0.9)
    for name in ("gamma1", "pump1", "gamma2", "pump2", "deph1", "deph2", "delta"):
        lo = build_liouvillian(SystemParams(**{**base, name: 0.0})).matrix
        hi = build_liouvillian(SystemParams(**{**base, name: 1.0})).matrix
        at = build_liouvillian(SystemParams(**{**base, name: 2.5})).matrix
        assert np.max(np.abs(at - (lo + 2.5 * (hi - lo)))) <= 1e-12


def test_generators_add_over_dissipative_parts():
    a = SystemParams(delta=0.4, gamma1=0.2, pump2=0.3)
    b = SystemParams(gamma2=1.1, pump1=0.8, deph1=0.2, g=0.0)
    both = SystemParams(delta=0.4, gamma1=0.2, pump2=0.3, gamma2=1.1,
                        pump1=0.8, deph1=0.2)
    total = build_liouvillian(a).matrix + build_liouvillian(b).matrix
    assert np.max(np.abs(total - build_liouvillian(both).matrix)) <= 1e-13


def test_generator_has_a_null_vector():
    rng = np.random.default_rng(11)
    for _ in range(25):
        sv = np.linalg.svd(build_liouvillian(law_draw(rng)).matrix,
                           compute_uv=False)
        assert sv[-1] <= 1e-10 * sv[0]


# ----------------------------------------------------------------- solve


def test_vacuum_steady_state():
    p = SystemParams(gamma1=1.0, gamma2=0.5)
    rho = steady_state(p).matrix
    want = np.zeros((4, 4)); want[0, 0] = 1.0
    assert np.max(np.abs(rho - want)) <= 1e-12


def test_equal_nature_reservoirs_give_uncorrelated_diagonal():
    rng = np.random.default_rng(23)
    for _ in range(40):
        r = rng.uniform(0.0, 1.0)
        p = SystemParams.from_bath_nature(
            10 ** rng.uniform(-2, 2), r, 10 ** rng.uniform(-2, 2), r,
            delta=rng.uniform(-5, 5),
        )
        rho = steady_state(p).matrix
        want = np.diag([(1 - r) ** 2, r * (1 - r), r * (1 - r), r ** 2])
        assert np.max(np.abs(rho - want)) <= 1e-11


def test_single_excitation_point_closed_form():
    # Pump qubit 1 at its full rate, drain qubit 2 at the same rate, on
    # resonance, with the rate equal to the coupling.
    p = SystemParams(gamma2=1.0, pump1=1.0)
    rho = steady_state(p).matrix
    want = np.array(
        [
            [0.2, 0, 0, 0],
            [0, 0.4, 0.2j, 0],
            [0, -0.2j, 0.2, 0],
            [0, 0, 0, 0.2],
        ],
        complex,
    )
    assert np.max(np.abs(rho - want)) <= 1e-10
    obs = observables_from_rho(DensityMatrix.from_matrix(rho))
    assert abs(obs.n1 - 0.6) <= 1e-10
    assert abs(obs.n2 - 0.4) <= 1e-10
    assert abs(obs.n1n2 - 0.2) <= 1e-10
    assert abs(obs.n12 - (-0.2j)) <= 1e-10


def test_degenerate_generator_is_rejected():
    with pytest.raises(NonUniqueSteadyState):
        steady_state(SystemParams())  # coupling only, no baths
    with pytest.raises(NonUniqueSteadyState):
        steady_state(SystemParams(gamma1=1.0, g=0.0))  # qubit 2 frozen
    with pytest.raises(NonUniqueSteadyState):
        steady_state(SystemParams(g=0.0))  # zero generator


def test_not_positive_raised_for_crafted_generator():
    # Trace-preserving population flow with a negative rate: its unique
    # fixed point is diag(1.5, -0.5, 0, 0), which no valid model produces.
    flow = np.array(
        [
            [-1.0, -3.0, 1.0, 1.0],
            [1.0, 3.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ]
    )
    m = -np.eye(16, dtype=complex)
    for a, i in enumerate(TRACE_INDICES):
        for b, j in enumerate(TRACE_INDICES):
            m[i, j] = flow[a, b]
    with pytest.raises(NotPositive):
        solve_steady_state(Liouvillian(matrix=m))


def test_steady_state_invariants_bulk():
    rng = np.random.default_rng(99)
    for _ in range(400):
        p = law_draw(rng, dephasing=rng.uniform() < 0.4)
        liou = build_liouvillian(p)
        rho = solve_steady_state(liou).matrix
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
        assert abs(np.trace(rho).real - 1.0) <= 1e-12
        assert np.linalg.eigvalsh(rho).min() >= -1e-9
        assert np.max(np.abs(liou.matrix @ vec(rho))) <= 1e-11
        # Only the two diagonal blocks survive in the stationary state.
        mask = np.ones((4, 4), bool)
        for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1)):
            mask[i, j] = False
        assert np.max(np.abs(rho[mask])) <= 1e-11


def test_swapping_qubit_labels_permutes_the_state():
    perm = np.eye(4)[[0, 2, 1, 3]]
    rng = np.random.default_rng(55)
    for _ in range(40):
        p = law_draw(rng, dephasing=True)
        rho = steady_state(p).matrix
        rho_swapped = steady_state(p.swapped()).matrix
        assert np.max(np.abs(rho_swapped - perm @ rho @ perm)) <= 1e-11


@given(params_strategy(min_gamma=0.05))
@settings(max_examples=50)
def test_steady_state_is_a_fixed_point(p):
    liou = build_liouvillian(p)
    rho = solve_steady_state(liou)
    assert np.max(np.abs(liou.matrix @ vec(rho.matrix))) <= 1e-11


# ----------------------------------------------------------- observables


def test_observables_of_bell_state():
    psi = np.zeros(4, complex)
    psi[1] = psi[2] = 1 / np.sqrt(2)
    rho = DensityMatrix.from_matrix(np.outer(psi, psi.conj()))
    obs = observables_from_rho(rho)
    assert abs(obs.n1 - 0.5) <= 1e-15
    assert abs(obs.n2 - 0.5) <= 1e-15
    assert obs.n1n2 == 0.0
    assert abs(obs.n12 - 0.5) <= 1e-15


def test_round_trip_through_observables():
    rng = np.random.default_rng(3)
    for _ in range(40):
        p = law_draw(rng)
        rho = steady_state(p)
        obs = observables_from_rho(rho)
        back = rho_from_observables(obs)
        assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-10
        again = observables_from_rho(back)
        for name in ("n1", "n2", "n1n2"):
            assert abs(getattr(again, name) - getattr(obs, name)) <= 1e-14
        assert abs(again.n12 - obs.n12) <= 1e-14


def test_uncorrelated_observables_reconstruct_product_diagonal():
    obs = SteadyObservables(n1=0.3, n2=0.2, n1n2=0.06, n12=0j)
    rho = rho_from_observables(obs).matrix
    want = np.diag([0.56, 0.24, 0.14, 0.06])
    assert np.max(np.abs(rho - want)) <= 1e-15


def test_invalid_observables_rejected():
    with pytest.raises(InvalidObservables):
        rho_from_observables(SteadyObservables(n1=0.1, n2=0.5, n1n2=0.2, n12=0j))
    with pytest.raises(InvalidObservables):
        rho_from_observables(SteadyObservables(n1=0.5, n2=0.5, n1n2=0.0, n12=0.6 + 0j))
    with pytest.raises(InvalidObservables):
        rho_from_observables(SteadyObservables(n1=float("nan"), n2=0.5, n1n2=0.0, n12=0j))


# ---------------------------------------------------------------- types


def test_parameters_reject_bad_rates():
    with pytest.raises(InvalidParameters):
        SystemParams(gamma1=-0.1)
    with pytest.raises(InvalidParameters):
        SystemParams(pump2=float("nan"))
    with pytest.raises(InvalidParameters):
        SystemParams(delta=float("inf"))
    with pytest.raises(InvalidParameters):
        SystemParams(g=-1.0)
    with pytest.raises(InvalidParameters):
        SystemParams.from_bath_nature(1.0, 1.2, 1.0, 0.0)


def test_bath_nature_translation():
    p = SystemParams.from_bath_nature(3.0, 0.5, 3.0, 0.5)
    assert p.gamma1 == pytest.approx(1.5)
    assert p.pump1 == pytest.approx(1.5)
    assert p.Gamma1 == pytest.approx(3.0)
    assert p.r1 == pytest.approx(0.5)
    assert p.Gamma_tot == pytest.approx(6.0)
    with pytest.raises(DegenerateRates):
        SystemParams().r1


def test_density_matrix_validation():
    good = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
    m = DensityMatrix.from_matrix(good)
    assert not m.matrix.flags.writeable
    with pytest.raises(ValueError):
        DensityMatrix.from_matrix(good * 2.0)  # trace 2
    bad = good.copy(); bad[0, 1] = 0.3  # not hermitian
    with pytest.raises(ValueError):
        DensityMatrix.from_matrix(bad)
    neg = np.diag([1.2, -0.2, 0.0, 0.0]).astype(complex)
    with pytest.raises(NotPositive):
        DensityMatrix.from_matrix(neg)


def test_vec_unvec_are_column_stacked():
    m = np.arange(16, dtype=complex).reshape(4, 4)
    v = vec(m)
    assert v[1] == m[1, 0]
    assert v[4] == m[0, 1]
    assert np.all(unvec(v) == m)
