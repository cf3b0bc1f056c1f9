import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcrit.bounds import (Method, Side, lower_bargmann_schwinger, lower_ggmt,
                          lower_ggmt_at, lower_second_order, lower_third_order,
                          sandwich, sufficient_condition_holds,
                          upper_calogero_I, upper_calogero_I_at,
                          upper_calogero_II, upper_calogero_II_at,
                          upper_variational, upper_variational_at,
                          upper_variational_square_well)
from gcrit.errors import DomainError
from gcrit.potentials import Potential

SW = Potential.square_well()
EXP = Potential.exponential()
YUK = Potential.yukawa()
PRINTED_TOL = 1e-4  # five significant digits in the reference tables


def test_first_moment_values():
    assert math.isclose(lower_bargmann_schwinger(SW, 0).value, 2.0, rel_tol=1e-12)
    assert math.isclose(lower_bargmann_schwinger(YUK, 2).value, 5.0, rel_tol=1e-12)
    # truncated inverse-square shape, alpha = 1: 1 / (ln 2 - 1/2)
    got = lower_bargmann_schwinger(Potential.stis(1.0), 0).value
    assert math.isclose(got, 1.0 / (math.log(2.0) - 0.5), rel_tol=1e-11)


def test_first_moment_result_fields():
    res = lower_bargmann_schwinger(SW, 1)
    assert res.method is Method.BARGMANN_SCHWINGER
    assert res.side is Side.LOWER
    assert res.ell == 1
    assert res.optimal_param is None


def test_second_order_square_well():
    assert math.isclose(lower_second_order(SW, 0).value, math.sqrt(6.0), rel_tol=1e-9)
    # nested moment for ell = 1 evaluates to 1/90 analytically
    assert math.isclose(lower_second_order(SW, 1).value, math.sqrt(90.0), rel_tol=1e-9)


def test_third_order_square_well():
    assert math.isclose(lower_third_order(SW, 0).value, 15.0 ** (1.0 / 3.0), rel_tol=1e-9)
    assert math.isclose(lower_third_order(SW, 1).value, 945.0 ** (1.0 / 3.0), rel_tol=1e-9)


def test_second_order_sits_between_neighbors():
    lo = lower_bargmann_schwinger(EXP, 0).value
    mid = lower_second_order(EXP, 0).value
    hi = lower_third_order(EXP, 0).value
    assert lo < mid < hi


def test_power_family_reduces_to_first_moment_at_unit_power():
    for pot in (SW, EXP, YUK, Potential.stis(1.0)):
        at1 = lower_ggmt_at(pot, 0, 1.0).value
        bs = lower_bargmann_schwinger(pot, 0).value
        assert math.isclose(at1, bs, rel_tol=1e-9), pot.label()


def test_power_family_printed_values():
    assert math.isclose(lower_ggmt(SW, 0).value, 2.3593, rel_tol=PRINTED_TOL)
    assert math.isclose(lower_ggmt(YUK, 5).value, 92.850, rel_tol=PRINTED_TOL)


def test_power_family_never_below_first_moment():
    for pot, ell in ((SW, 2), (EXP, 1), (YUK, 0)):
        assert lower_ggmt(pot, ell).value >= lower_bargmann_schwinger(pot, ell).value * (1 - 1e-9)


def test_power_family_domain():
    with pytest.raises(DomainError):
        lower_ggmt_at(SW, 0, 0.5)


def test_matching_radius_I_square_well_analytic():
    # I(a) = a - 2 a^2 / 3 for the unit square well at ell = 0
    res = upper_calogero_I_at(SW, 0, 0.5)
    assert math.isclose(res.value, 1.0 / (0.5 - 2.0 * 0.25 / 3.0), rel_tol=1e-10)
    best = upper_calogero_I(SW, 0)
    assert math.isclose(best.value, 8.0 / 3.0, rel_tol=1e-8)
    assert math.isclose(best.optimal_param, 0.75, rel_tol=1e-4)


def test_matching_radius_I_printed():
    assert math.isclose(upper_calogero_I(EXP, 1).value, 9.7188, rel_tol=PRINTED_TOL)
    assert math.isclose(upper_calogero_I(Potential.stis(0.1), 0).value, 306.01,
                        rel_tol=PRINTED_TOL)


def test_matching_radius_II_square_well_analytic():
    # at fixed a the condition reads a g / (1 + a^2 g) = 1, so g = 1/(a(1-a))
    res = upper_calogero_II_at(SW, 0, 0.5)
    assert math.isclose(res.value, 4.0, rel_tol=1e-9)
    res = upper_calogero_II_at(SW, 0, 0.25)
    assert math.isclose(res.value, 1.0 / (0.25 * 0.75), rel_tol=1e-9)
    best = upper_calogero_II(SW, 0)
    assert math.isclose(best.value, 4.0, rel_tol=1e-8)
    assert math.isclose(best.optimal_param, 0.5, rel_tol=1e-3)


def test_matching_radius_II_printed():
    assert math.isclose(upper_calogero_II(YUK, 0).value, 1.6810, rel_tol=PRINTED_TOL)
    assert math.isclose(upper_calogero_II(EXP, 5).value, 91.708, rel_tol=PRINTED_TOL)


@given(st.floats(0.05, 40.0), st.integers(0, 5))
def test_variational_square_well_identity(p, ell):
    # analytic reduction: L (p + L + 1) (p + 1) / p
    L = ell + 0.5
    expected = L * (p + L + 1.0) * (p + 1.0) / p
    got = upper_variational_at(SW, ell, p).value
    assert math.isclose(got, expected, rel_tol=1e-9)


def test_variational_minimum_matches_closed_form():
    for ell in (0, 1):
        num = upper_variational(SW, ell)
        closed = upper_variational_square_well(ell)
        assert math.isclose(num.value, closed.value, rel_tol=1e-8)
        assert abs(num.optimal_param - closed.optimal_param) < 1e-4
    assert math.isclose(upper_variational_square_well(0).value,
                        0.5 * (math.sqrt(1.5) + 1.0) ** 2, rel_tol=1e-14)


def test_variational_printed_values():
    res = upper_variational(EXP, 2)
    assert math.isclose(res.value, 16.334, rel_tol=PRINTED_TOL)
    assert math.isclose(res.optimal_param, 3.4103, rel_tol=1e-3)


def test_variational_handles_small_power():
    # integrand has an integrable x^(p/2 - 1) ramp at the origin
    res = upper_variational_at(YUK, 0, 0.4)
    assert res.value > 1.6798  # any trial power stays above the true threshold


def test_variational_domain():
    with pytest.raises(DomainError):
        upper_variational_at(SW, 0, -1.0)


def test_sufficient_condition():
    assert sufficient_condition_holds(SW, 0, 2.48, 1.2247448713915890)
    assert not sufficient_condition_holds(SW, 0, 2.40, 1.2247448713915890)
    assert not sufficient_condition_holds(SW, 0, 1e-6, 1.0)


@given(st.floats(0.6, 3.0), st.floats(1.2, 4.0))
def test_sufficient_condition_monotone_in_strength(g, factor):
    p = 1.5
    if sufficient_condition_holds(EXP, 0, g, p):
        assert sufficient_condition_holds(EXP, 0, g * factor, p)


@pytest.mark.parametrize("g,p", [(1.2, 1.5), (1.6, 1.5), (2.5, 2.0)])
def test_sufficient_condition_matches_direct_evaluation(g, p):
    # evaluate the condition's left side directly from the strength-scaled
    # weights x^q |V|^((q+1)/2) with |V| = g v, instead of through the
    # fixed-power upper limit
    import numpy as np

    from gcrit.quadrature import integrate_semi_infinite, nested_double

    pot, ell = EXP, 0
    L = ell + 0.5

    def weight(q):
        def f(x):
            x = np.asarray(x, dtype=float)
            return x ** q * (g * pot.evaluate(x)) ** (0.5 * (q + 1.0))
        return f

    fp = weight(p)
    numerator = nested_double(lambda x: fp(x) * x ** (-L),
                              lambda y: fp(y) * y ** L)
    denominator = L * integrate_semi_infinite(weight(2.0 * p - 1.0), 0.0).value
    lhs = numerator / denominator
    assert math.isclose(lhs, g / upper_variational_at(pot, ell, p).value,
                        rel_tol=1e-8)
    assert (lhs >= 1.0) == sufficient_condition_holds(pot, ell, g, p)


def test_sandwich_square_well():
    rep = sandwich(SW, 2)
    assert rep.ordering_ok()
    assert rep.max_lower <= 20.191 * (1 + 1e-4)
    assert rep.min_upper >= 20.191 * (1 - 1e-4)
    assert math.isclose(rep.exact_shooting, 20.191, rel_tol=1e-4)
    assert {b.method for b in rep.lowers} == {
        Method.BARGMANN_SCHWINGER, Method.SECOND_ORDER, Method.THIRD_ORDER,
        Method.GGMT}
    assert {b.method for b in rep.uppers} == {
        Method.CALOGERO_I, Method.CALOGERO_II, Method.VARIATIONAL}
    assert rep.by_method(Method.GGMT).optimal_param is not None


def test_scale_invariance_smoke():
    for R in (0.5, 2.0):
        scaled = Potential.yukawa(R=R)
        assert math.isclose(lower_bargmann_schwinger(scaled, 0).value, 1.0,
                            rel_tol=1e-10)
        assert math.isclose(upper_variational(scaled, 0).value,
                            upper_variational(YUK, 0).value, rel_tol=1e-8)
