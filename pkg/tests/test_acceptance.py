"""Acceptance suite: one test per headline claim, at the stated tolerance.

Each test prints a single PASS line on success so a verbose run reads as a
checklist. Everything here goes through public entry points only.
"""
import math
import time

import numpy as np
import pytest

from conftest import law_draw
from qupair import (
    SystemParams,
    c_bounds,
    concurrence_block,
    concurrence_general,
    dephasing_sweep,
    effective_observables,
    maximize_concurrence,
    observables_from_rho,
    optimal_family,
    sample_plane,
    steady_state,
    thermal_family,
)
from qupair.cli import main
from qupair.explore import SweepSpec

C_MAX = (math.sqrt(5.0) - 1.0) / 4.0
ALPHA_MAX = 1.0 + math.sqrt(5.0)


def test_a1_global_maximum_and_speed():
    t0 = time.perf_counter()
    params, report = maximize_concurrence("opposite")
    elapsed = time.perf_counter() - t0
    assert abs(report.concurrence - C_MAX) <= 1e-6
    assert params.pump1 == pytest.approx(ALPHA_MAX, abs=1e-5)
    assert params.gamma2 == pytest.approx(ALPHA_MAX, abs=1e-5)
    assert elapsed < 1.0
    print(f"A1 PASS - C_max {report.concurrence:.8f} at "
          f"Gamma {params.pump1:.6f} in {elapsed:.3f}s")


def test_a2_entanglement_onset():
    for alpha in (0.0, 0.5, 1.0):
        assert optimal_family(alpha).concurrence <= 1e-12
    assert optimal_family(1.001).concurrence > 1e-12
    print("A2 PASS - concurrence switches on just above the onset drive")


def test_a3_numeric_and_closed_form_agree():
    rng = np.random.default_rng(20230817)
    t0 = time.perf_counter()
    worst_obs = 0.0
    worst_conc = 0.0
    for _ in range(10_000):
        params = law_draw(rng, dephasing=True)
        rho = steady_state(params)
        got = observables_from_rho(rho)
        want = effective_observables(params)
        worst_obs = max(
            worst_obs,
            abs(got.n1 - want.n1), abs(got.n2 - want.n2),
            abs(got.n1n2 - want.n1n2), abs(got.n12 - want.n12),
        )
        worst_conc = max(
            worst_conc,
            abs(concurrence_general(rho) - concurrence_block(rho)),
        )
    elapsed = time.perf_counter() - t0
    assert worst_obs <= 1e-10
    assert worst_conc <= 1e-12
    assert elapsed < 30.0
    print(f"A3 PASS - 10^4 points, observables within {worst_obs:.2e}, "
          f"concurrences within {worst_conc:.2e}, {elapsed:.1f}s")


def test_a4_thermal_maxima():
    curve = max(thermal_family(a).concurrence
                for a in np.linspace(0.0, 12.0, 1201))
    assert curve == pytest.approx(0.040, abs=0.002)

    params, report = maximize_concurrence("thermal_unequal")
    assert report.concurrence == pytest.approx(0.10, abs=0.005)
    assert params.Gamma1 == pytest.approx(1.24, abs=0.05)
    assert params.Gamma2 == pytest.approx(6.45, abs=0.05)
    print(f"A4 PASS - equal-rate peak {curve:.4f}; unequal-rate peak "
          f"{report.concurrence:.4f} at ({params.Gamma1:.3f}, "
          f"{params.Gamma2:.3f})")


def test_a5_equal_natures_give_a_product_state():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        r = rng.uniform()
        g1, g2 = 10.0 ** rng.uniform(-2.0, 2.0, 2)
        delta = 0.0 if rng.uniform() < 0.5 else rng.uniform(0.0, 10.0)
        params = SystemParams.from_bath_nature(g1, r, g2, r, delta=delta)
        rho = steady_state(params)
        assert concurrence_general(rho) <= 1e-12
        expected = np.diag([(1 - r) ** 2, r * (1 - r), r * (1 - r), r ** 2])
        worst = max(worst, float(np.max(np.abs(rho.matrix - expected))))
    assert worst <= 1e-11
    print(f"A5 PASS - 10^3 equal-nature states separable, product form "
          f"within {worst:.2e}")


def test_a6_correlator_bounds_on_random_states():
    result = sample_plane(SweepSpec.plane(100_000, "all", seed=1234))
    flagged = sum(1 for row in result.rows if row.error)
    assert flagged == 0
    for row in result.rows:
        d = row.report.delta_corr
        c = row.report.concurrence
        assert -1e-12 <= d <= 1.0 / 16.0 + 1e-9
        lo, hi = c_bounds(min(max(d, 0.0), 1.0 / 16.0))
        assert lo - 1e-9 <= c <= hi + 1e-9
    lo, hi = c_bounds(0.061)
    assert lo == pytest.approx(0.205, abs=0.001)
    assert hi == pytest.approx(0.283, abs=0.001)
    print("A6 PASS - 10^5 states inside the correlator-concurrence envelope")


def test_a7_dephasing_peaks():
    levels = tuple(float(g) for g in range(0, 21, 2))
    result = dephasing_sweep(levels, (0.2, 30.0), 31)
    c_peaks = []
    for m in result.maxima:
        assert m.delta_max == pytest.approx(1.0 / 16.0, abs=1e-6)
        c_peaks.append(m.c_max)
    assert all(a > b for a, b in zip(c_peaks, c_peaks[1:]))
    at_ten = dict(zip(levels, c_peaks))[10.0]
    assert at_ten == pytest.approx(0.10, abs=0.02)
    print(f"A7 PASS - correlator ceiling held at 1/16 for 11 dephasing "
          f"levels; peak concurrence decreasing, {at_ten:.4f} at level 10")


def test_a8_entropy_at_the_maximum():
    want = (17.0 - 3.0 * math.sqrt(5.0)) / 30.0
    got = optimal_family(ALPHA_MAX).linear_entropy
    assert abs(got - want) <= 1e-12
    print(f"A8 PASS - mixedness at the optimum equals {want:.12f}")


def test_a9_byte_identical_across_workers(tmp_path):
    outputs = []
    for tag, workers in (("a", 1), ("b", 1), ("c", 4), ("d", 16)):
        out = tmp_path / f"{tag}.csv"
        code = main(["sample", "--count", "512", "--seed", "99",
                     "--workers", str(workers), "--out", str(out)])
        assert code == 0
        outputs.append(out.read_bytes())
    assert all(raw == outputs[0] for raw in outputs[1:])
    print("A9 PASS - 512-row sweep byte-identical over reruns and "
          "worker counts 1, 4, 16")
