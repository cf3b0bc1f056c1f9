"""Acceptance suite: one test per release criterion, one printed verdict each.

Run with `pytest tests/test_acceptance.py -v -s`.  The expensive sandwich
computations are shared across criteria through session fixtures; the two
timed criteria (table 1 and the cross-oracle sweep) measure their own fresh
computations.
"""

import math
import time

import numpy as np
import pytest

from gcrit import (Potential, critical_coupling_nystrom,
                   critical_coupling_shooting, nested_double, nested_triple,
                   reproduce_table, sandwich, integrate_semi_infinite,
                   stis_exact_swave, upper_variational, upper_variational_at)
from gcrit.bounds import (Method, lower_bargmann_schwinger, lower_ggmt,
                          lower_second_order, lower_third_order,
                          upper_calogero_I, upper_calogero_II)
from gcrit.quadrature import QuadratureConfig

BUILTIN_FACTORIES = {
    "square_well": Potential.square_well,
    "exponential": Potential.exponential,
    "yukawa": Potential.yukawa,
    "stis": lambda R=1.0: Potential.stis(alpha=1.0, R=R),
}
ELLS = (0, 1, 2, 3, 4, 5)


def verdict(criterion: str, ok: bool, detail: str):
    print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{criterion}: {detail}"


def random_compact_tabulated(rng, index: int) -> tuple[Potential, int]:
    """Smooth nonnegative bump mixtures on a compact support, plus an ell."""
    n_knots = 28
    r_max = float(rng.uniform(2.0, 4.0))
    r = np.linspace(0.02, r_max, n_knots)
    v = np.zeros_like(r)
    for _ in range(int(rng.integers(1, 3))):
        center = rng.uniform(0.2, 0.8) * r_max
        width = rng.uniform(0.2, 0.5) * r_max
        v += rng.uniform(0.5, 2.0) * np.exp(-((r - center) / width) ** 2)
    v[-1] = 0.0
    return Potential.tabulated(list(zip(r, v))), index % 3


@pytest.fixture(scope="session")
def builtin_sandwiches():
    out = {}
    for name, factory in BUILTIN_FACTORIES.items():
        for ell in ELLS:
            out[(name, ell)] = sandwich(factory(), ell)
    return out


@pytest.fixture(scope="session")
def tabulated_sandwiches():
    rng = np.random.default_rng(1234)
    out = []
    for i in range(10):
        pot, ell = random_compact_tabulated(rng, i)
        out.append(sandwich(pot, ell))
    return out


def _check_table(artifact):
    bad = []
    for label, devs in zip(artifact.row_labels, artifact.deviations):
        for col, dev, tol in zip(artifact.columns, devs, artifact.tolerances):
            if dev > tol:
                bad.append(f"row {label:g} col {col} dev {dev:.2e} > {tol:g}")
    return bad


def test_criterion_1_table_1_square_well():
    t0 = time.perf_counter()
    art = reproduce_table(1)
    elapsed = time.perf_counter() - t0
    bad = _check_table(art)
    ok = not bad and elapsed < 30.0
    verdict("1 (table 1, square well)", ok,
            f"max deviation {art.max_deviation:.2e}, {elapsed:.1f}s"
            + (f"; {bad}" if bad else ""))


def test_criterion_2_table_2_exponential():
    art = reproduce_table(2)
    bad = _check_table(art)
    verdict("2 (table 2, exponential)", not bad,
            f"max deviation {art.max_deviation:.2e}"
            + (f"; {bad}" if bad else ""))


def test_criterion_3_table_3_yukawa():
    art = reproduce_table(3)
    bad = _check_table(art)
    verdict("3 (table 3, yukawa)", not bad,
            f"max deviation {art.max_deviation:.2e}"
            + (f"; {bad}" if bad else ""))


def test_criterion_4_table_4_stis():
    art = reproduce_table(4)
    bad = _check_table(art)
    worst_exact = 0.0
    for alpha in art.row_labels:
        reference = stis_exact_swave(alpha)
        dev = abs(art.cell(alpha, "g_c") - reference) / reference
        worst_exact = max(worst_exact, dev)
    ok = not bad and worst_exact <= 1e-9
    verdict("4 (table 4, stis + transcendental cross-check)", ok,
            f"max table deviation {art.max_deviation:.2e}, "
            f"worst solver-vs-closed-form {worst_exact:.2e}"
            + (f"; {bad}" if bad else ""))


def test_criterion_5_square_well_closed_form():
    worst_v, worst_p = 0.0, 0.0
    for ell in ELLS:
        L = ell + 0.5
        closed = L * (math.sqrt(L + 1.0) + 1.0) ** 2
        res = upper_variational(Potential.square_well(), ell)
        worst_v = max(worst_v, abs(res.value - closed) / closed)
        worst_p = max(worst_p, abs(res.optimal_param - math.sqrt(L + 1.0)))
    ok = worst_v <= 1e-7 and worst_p <= 1e-3
    verdict("5 (square-well closed form)", ok,
            f"worst value dev {worst_v:.2e} (tol 1e-7), "
            f"worst p dev {worst_p:.2e} (tol 1e-3)")


def test_criterion_6_cross_oracle():
    t0 = time.perf_counter()
    worst = (0.0, None)
    for name, factory in BUILTIN_FACTORIES.items():
        pot = factory()
        for ell in ELLS:
            shoot = critical_coupling_shooting(pot, ell)
            nys = critical_coupling_nystrom(pot, ell, 400)
            dev = abs(shoot - nys) / shoot
            if dev > worst[0]:
                worst = (dev, f"{name} ell={ell}")
    elapsed = time.perf_counter() - t0
    ok = worst[0] <= 1e-5 and elapsed < 120.0
    verdict("6 (cross-oracle, 24 cases)", ok,
            f"worst disagreement {worst[0]:.2e} at {worst[1]}, {elapsed:.1f}s")


def test_criterion_7_sandwich(builtin_sandwiches, tabulated_sandwiches):
    worst = (math.inf, None)
    reports = list(builtin_sandwiches.values()) + tabulated_sandwiches
    for rep in reports:
        margin = min(rep.lower_margin, rep.upper_margin)
        if margin < worst[0]:
            worst = (margin, f"{rep.potential.label()} ell={rep.ell}")
    ok = worst[0] >= -1e-6
    verdict("7 (sandwich ordering, 34 cases)", ok,
            f"tightest margin {worst[0]:.2e} at {worst[1]} (floor -1e-6)")


def test_criterion_8_monotone_lower_sequence(builtin_sandwiches,
                                             tabulated_sandwiches):
    worst = (0.0, None)
    for rep in list(builtin_sandwiches.values()) + tabulated_sandwiches:
        bs = rep.by_method(Method.BARGMANN_SCHWINGER).value
        second = rep.by_method(Method.SECOND_ORDER).value
        third = rep.by_method(Method.THIRD_ORDER).value
        slack = max(bs - second, second - third) / bs
        if slack > worst[0]:
            worst = (slack, f"{rep.potential.label()} ell={rep.ell}")
    ok = worst[0] <= 1e-9
    verdict("8 (monotone lower sequence)", ok,
            f"worst inversion {worst[0]:.2e} at {worst[1]}")


def test_criterion_9_scale_invariance():
    methods = (lower_bargmann_schwinger, lower_second_order, lower_third_order,
               lower_ggmt, upper_calogero_I, upper_calogero_II,
               upper_variational)
    worst = (0.0, None)
    for name, factory in BUILTIN_FACTORIES.items():
        for ell in (0, 3):
            for method in methods:
                values = [method(factory(R=R), ell).value for R in (0.5, 1.0, 2.0)]
                spread = (max(values) - min(values)) / min(values)
                if spread > worst[0]:
                    worst = (spread, f"{name} ell={ell} {method.__name__}")
    ok = worst[0] <= 1e-8
    verdict("9 (scale invariance of every bound)", ok,
            f"worst spread {worst[0]:.2e} at {worst[1]}")


def test_criterion_10_delta_shell_saturation():
    shell = Potential.shell(width=1e-3)
    ratio = (upper_variational_at(shell, 0, 1.0).value
             / critical_coupling_shooting(shell, 0))
    ok = 1.0 <= ratio <= 1.01
    verdict("10 (delta-shell saturation)", ok,
            f"variational(p=1)/solver = {ratio:.9f}, window [1.0, 1.01]")


def test_criterion_11_nested_quadrature_identities():
    cfg = QuadratureConfig()
    e = lambda x: np.exp(-x)
    one = lambda x: np.where(x <= 1.0, 1.0, 0.0)
    total = integrate_semi_infinite(e, 0.0, cfg).value
    checks = [
        ("exchange symmetry", nested_double(e, e, cfg), 0.5 * total ** 2),
        ("ordered simplex", nested_triple(one, one, one, cfg, upper=1.0), 1.0 / 6.0),
        ("triple symmetry", nested_triple(e, e, e, cfg), total ** 3 / 6.0),
    ]
    worst = max(abs(got - want) / abs(want) for _, got, want in checks)
    verdict("11 (nested quadrature identities)", worst <= 1e-9,
            f"worst identity deviation {worst:.2e} (tol 1e-9)")
