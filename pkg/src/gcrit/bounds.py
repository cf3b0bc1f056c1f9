"""Lower and upper limits on the critical coupling constant.

Every operation takes a unit-strength shape v and a partial wave l and
returns a dimensionless bound on the smallest strength g at which
V = -g v(r) first binds an l-wave state.  Lower limits come from necessary
conditions for binding (moment inequalities of first, second and third
order, and a one-parameter family with an optimized power p >= 1); upper
limits come from sufficient conditions (two classical matching-radius
criteria and a variational bound built on the trial density
f(r)^2 ~ r^(2p-1) v(r)^p, minimized over p > 0).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import (AccuracyError, DegeneratePotentialError, DomainError,
                     InvariantViolation, SearchRangeError)
from .exact import critical_coupling_nystrom, critical_coupling_shooting
from .optimize import minimize_scalar_log
from .potentials import AngularMomentum, Potential
from .quadrature import (DEFAULT_CONFIG, QuadratureConfig, integrate,
                         integrate_semi_infinite, nested_double, nested_triple)


class Method(str, Enum):
    BARGMANN_SCHWINGER = "bargmann_schwinger"
    SECOND_ORDER = "second_order"
    THIRD_ORDER = "third_order"
    GGMT = "ggmt"
    CALOGERO_I = "calogero_i"
    CALOGERO_II = "calogero_ii"
    VARIATIONAL = "variational"
    VARIATIONAL_CLOSED_FORM = "variational_closed_form"


class Side(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


LOWER_METHODS = (Method.BARGMANN_SCHWINGER, Method.SECOND_ORDER,
                 Method.THIRD_ORDER, Method.GGMT)
UPPER_METHODS = (Method.CALOGERO_I, Method.CALOGERO_II, Method.VARIATIONAL,
                 Method.VARIATIONAL_CLOSED_FORM)


@dataclass(frozen=True)
class BoundResult:
    method: Method
    side: Side
    value: float
    ell: int
    optimal_param: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise DegeneratePotentialError(
                f"{self.method.value} produced a non-positive bound {self.value!r}")


# Bound values are ratios of shape integrals whose magnitudes can legitimately
# be far below any fixed absolute tolerance (strong powers of the shape), so
# the defining integrals are resolved in relative terms: the absolute floor is
# dropped to just above the underflow limit and only silences integrals that
# are exactly zero.
_ABS_FLOOR = 1e-280


def _rel_cfg(cfg: QuadratureConfig) -> QuadratureConfig:
    if cfg.abs_tol <= _ABS_FLOOR:
        return cfg
    return replace(cfg, abs_tol=_ABS_FLOOR)


def _shape_integral(pot: Potential, f, cfg: QuadratureConfig,
                    upper: float | None = None) -> float:
    """Integrate f over the shape's support (or to infinity for tails)."""
    cfg = _rel_cfg(cfg)
    points = pot.breakpoints()
    if pot.is_compact:
        hi = pot.cutoff if upper is None else min(upper, pot.cutoff)
        return integrate(f, 0.0, hi, cfg, points=points).value
    if upper is not None:
        return integrate(f, 0.0, upper, cfg, points=points).value
    return integrate_semi_infinite(f, 0.0, cfg, points=points).value


def _nested_kwargs(pot: Potential) -> dict:
    return {
        "upper": pot.cutoff if pot.is_compact else None,
        "points": pot.breakpoints(),
    }


def _positive(value: float, what: str) -> float:
    if not (math.isfinite(value) and value > 0):
        raise DegeneratePotentialError(f"{what} evaluated to {value!r}")
    return value


# ---------------------------------------------------------------------------
# lower limits
# ---------------------------------------------------------------------------

def lower_bargmann_schwinger(pot: Potential, ell: int,
                             cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """First-moment necessary condition: g >= (2l+1) / integral of r v(r)."""
    ell = AngularMomentum(ell).ell
    moment = _positive(_shape_integral(pot, lambda r: r * pot.evaluate(r), cfg),
                       "first moment of the shape")
    return BoundResult(Method.BARGMANN_SCHWINGER, Side.LOWER,
                       (2 * ell + 1) / moment, ell)


def lower_second_order(pot: Potential, ell: int,
                       cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Second-order nested-moment necessary condition."""
    ell = AngularMomentum(ell).ell
    raw = nested_double(
        lambda x: x ** (-2.0 * ell) * pot.evaluate(x),
        lambda y: y ** (2.0 * ell + 2.0) * pot.evaluate(y),
        _rel_cfg(cfg), **_nested_kwargs(pot))
    d2 = _positive(2.0 / (2 * ell + 1) ** 2 * raw, "second-order moment")
    return BoundResult(Method.SECOND_ORDER, Side.LOWER, d2 ** -0.5, ell)


def lower_third_order(pot: Potential, ell: int,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Third-order nested-moment necessary condition."""
    ell = AngularMomentum(ell).ell
    raw = nested_triple(
        lambda x: x ** (-2.0 * ell) * pot.evaluate(x),
        lambda y: y * pot.evaluate(y),
        lambda z: z ** (2.0 * ell + 2.0) * pot.evaluate(z),
        _rel_cfg(cfg), **_nested_kwargs(pot))
    d3 = _positive(6.0 / (2 * ell + 1) ** 3 * raw, "third-order moment")
    return BoundResult(Method.THIRD_ORDER, Side.LOWER, d3 ** (-1.0 / 3.0), ell)


def _ggmt_log_constant(p: float, ell: int) -> float:
    """log of (p-1)^(p-1) Gamma(2p) / ((2l+1)^(2p-1) p^p Gamma(p)^2).

    The factor (p-1)^(p-1) tends to 1 as p -> 1, handled explicitly so the
    p = 1 member reduces exactly to the first-moment condition.
    """
    edge = 0.0 if p <= 1.0 + 1e-14 else (p - 1.0) * math.log(p - 1.0)
    return (edge + math.lgamma(2.0 * p) - (2.0 * p - 1.0) * math.log(2 * ell + 1)
            - p * math.log(p) - 2.0 * math.lgamma(p))


GGMT_P_MAX = 50.0  # beyond this (r^2 v)^p underflows before it informs


def lower_ggmt_at(pot: Potential, ell: int, p: float,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Power-family necessary condition at fixed exponent p >= 1."""
    ell = AngularMomentum(ell).ell
    if not p >= 1.0:
        raise DomainError("the power-family condition requires p >= 1")

    def integrand(r):
        return (r * r * pot.evaluate(r)) ** p / r

    moment = _positive(_shape_integral(pot, integrand, cfg),
                       f"power moment at p={p}")
    value = math.exp(-(_ggmt_log_constant(p, ell) + math.log(moment)) / p)
    return BoundResult(Method.GGMT, Side.LOWER, value, ell, optimal_param=p)


def lower_ggmt(pot: Potential, ell: int,
               cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Strongest member of the power family over p in [1, GGMT_P_MAX]."""
    ell = AngularMomentum(ell).ell
    search_cfg = cfg.loosened(rel_tol=1e-9, max_subdivisions=600)

    def objective(p):
        try:
            return -lower_ggmt_at(pot, ell, p, search_cfg).value
        except AccuracyError:
            return math.inf

    best = minimize_scalar_log(objective, 1.0, GGMT_P_MAX, hard_edges=True)
    return lower_ggmt_at(pot, ell, best.x, cfg)


# ---------------------------------------------------------------------------
# upper limits
# ---------------------------------------------------------------------------

def upper_calogero_I_at(pot: Potential, ell: int, a: float,
                        cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Matching-radius sufficient condition at fixed radius a."""
    ell = AngularMomentum(ell).ell
    if not a > 0:
        raise DomainError("matching radius a must be positive")
    k = 2 * ell + 1

    def inner(r):
        return r * pot.evaluate(r) * (r / a) ** k

    def outer(r):
        return r * pot.evaluate(r) * (a / r) ** k

    rcfg = _rel_cfg(cfg)
    cut = pot.cutoff if pot.is_compact else None
    total = 0.0
    lo_hi = min(a, cut) if cut is not None else a
    if lo_hi > 0:
        total += integrate(inner, 0.0, lo_hi, rcfg, points=pot.breakpoints()).value
    if cut is None:
        total += integrate_semi_infinite(outer, a, rcfg, points=pot.breakpoints()).value
    elif a < cut:
        total += integrate(outer, a, cut, rcfg, points=pot.breakpoints()).value
    total = _positive(total, "matching-radius functional")
    return BoundResult(Method.CALOGERO_I, Side.UPPER, k / total, ell,
                       optimal_param=a)


def upper_calogero_I(pot: Potential, ell: int,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Best matching radius for the first sufficient condition."""
    ell = AngularMomentum(ell).ell
    search_cfg = cfg.loosened(rel_tol=1e-9, max_subdivisions=600)

    def objective(a):
        try:
            return upper_calogero_I_at(pot, ell, a, search_cfg).value
        except AccuracyError:
            return math.inf

    best = minimize_scalar_log(objective, 1e-2, 1e2)
    return upper_calogero_I_at(pot, ell, best.x, cfg)


def _calogero_II_lhs(pot: Potential, ell: int, a: float, g: float,
                     cfg: QuadratureConfig) -> float:
    """Left side of the nonlinear sufficient condition at (a, g).

    Written as g v t / (t^2 + a^2 g v) with t = (r/a)^(2l), which is finite
    for every r > 0 including shapes unbounded at the origin.
    """
    def integrand(r):
        v = pot.evaluate(r)
        with np.errstate(over="ignore"):
            t = (r / a) ** (2 * ell)
            den = t * t + a * a * g * v
            out = np.where(den > 0, g * v * t / den, 0.0)
        return out

    return a * _shape_integral(pot, integrand, cfg)


G_SEARCH_RANGE = (1e-6, 1e6)


def upper_calogero_II_at(pot: Potential, ell: int, a: float,
                         g_trial: float = 1.0,
                         cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Threshold strength of the nonlinear sufficient condition at fixed a.

    The strength enters the condition nonlinearly but the left side grows
    monotonically with g, so the smallest g with LHS = 1 is found by
    expanding a bracket around g_trial and bisecting it.
    """
    ell = AngularMomentum(ell).ell
    if not a > 0:
        raise DomainError("matching radius a must be positive")

    def excess(g):
        return _calogero_II_lhs(pot, ell, a, g, cfg) - 1.0

    g_lo, g_hi = G_SEARCH_RANGE
    lo = hi = min(max(g_trial, g_lo), g_hi)
    f = excess(lo)
    if f < 0:
        while f < 0:
            lo = hi
            hi *= 4.0
            if hi > g_hi:
                raise SearchRangeError(
                    f"sufficient condition never reached 1 below g = {g_hi:g}")
            f = excess(hi)
    else:
        while excess(lo) >= 0:
            hi = lo
            lo /= 4.0
            if lo < g_lo:
                raise SearchRangeError(
                    f"sufficient condition already holds at g = {g_lo:g}")
    # plain bisection: the left side is monotone in g, so this cannot fail
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) >= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-12 * hi:
            break
    return BoundResult(Method.CALOGERO_II, Side.UPPER, hi, ell, optimal_param=a)


def upper_calogero_II(pot: Potential, ell: int,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Best matching radius for the nonlinear sufficient condition."""
    ell = AngularMomentum(ell).ell
    search_cfg = cfg.loosened(rel_tol=1e-8, max_subdivisions=600)
    warm = {"g": 1.0}

    def objective(a):
        try:
            res = upper_calogero_II_at(pot, ell, a, warm["g"], search_cfg)
        except (AccuracyError, SearchRangeError):
            return math.inf
        warm["g"] = res.value
        return res.value

    best = minimize_scalar_log(objective, 1e-2, 1e2)
    return upper_calogero_II_at(pot, ell, best.x, warm["g"], cfg)


def _trial_weight(pot: Potential, q: float):
    """F(q; x) = x^q v(x)^((q+1)/2), the building block of the trial bound.

    Evaluated in log space: at large powers the bare factors overflow or
    underflow long before their finite product does.
    """
    ex = 0.5 * (q + 1.0)

    def f(x):
        x = np.asarray(x, dtype=float)
        v = pot.evaluate(x)
        out = np.zeros_like(v)
        m = v > 0
        with np.errstate(under="ignore"):
            out[m] = np.exp(q * np.log(x[m]) + ex * np.log(v[m]))
        return out

    return f


def upper_variational_at(pot: Potential, ell: int, p: float,
                         cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Variational upper limit with trial density r^(2p-1) v^p at fixed p.

    value = L * int F(2p-1) / [ int F(p;x) x^-L int_0^x F(p;y) y^L dy dx ]
    with F(q;x) = x^q v(x)^((q+1)/2) and L = l + 1/2.
    """
    ell = AngularMomentum(ell).ell
    if not p > 0:
        raise DomainError("trial power p must be positive")
    L = ell + 0.5
    norm = _positive(_shape_integral(pot, _trial_weight(pot, 2.0 * p - 1.0), cfg),
                     "trial normalization")
    fp = _trial_weight(pot, p)
    kernel_form = nested_double(
        lambda x: fp(x) * x ** (-L),
        lambda y: fp(y) * y ** L,
        _rel_cfg(cfg), **_nested_kwargs(pot))
    kernel_form = _positive(kernel_form, "trial kernel form")
    return BoundResult(Method.VARIATIONAL, Side.UPPER, L * norm / kernel_form,
                       ell, optimal_param=p)


def upper_variational(pot: Potential, ell: int,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> BoundResult:
    """Variational upper limit minimized over the trial power p."""
    ell = AngularMomentum(ell).ell
    search_cfg = cfg.loosened(rel_tol=1e-9, max_subdivisions=600)
    # at extreme p both integrals underflow and their ratio is meaningless;
    # no genuine upper limit can undercut this lower limit, so anything
    # below it is rejected as corrupted
    floor = 0.5 * lower_bargmann_schwinger(pot, ell, search_cfg).value

    def objective(p):
        try:
            value = upper_variational_at(pot, ell, p, search_cfg).value
        except (AccuracyError, DegeneratePotentialError):
            return math.inf
        return value if value > floor else math.inf

    best = minimize_scalar_log(objective, 1e-2, 1e2)
    return upper_variational_at(pot, ell, best.x, cfg)


def upper_variational_square_well(ell: int) -> BoundResult:
    """Closed-form minimum of the variational bound for the square well.

    For v = theta(R - r)/R^2 the bound at power p is L(p+L+1)(p+1)/p, whose
    minimum over p sits at p = sqrt(L+1) with value L(sqrt(L+1)+1)^2.
    """
    ell = AngularMomentum(ell).ell
    L = ell + 0.5
    p_star = math.sqrt(L + 1.0)
    return BoundResult(Method.VARIATIONAL_CLOSED_FORM, Side.UPPER,
                       L * (p_star + 1.0) ** 2, ell, optimal_param=p_star)


def sufficient_condition_holds(pot: Potential, ell: int, g: float, p: float,
                               cfg: QuadratureConfig = DEFAULT_CONFIG) -> bool:
    """Whether strength g provably binds an l-wave state at trial power p.

    The condition compares the nested trial form of |V| = g v against its
    normalization; the numerator scales as g^(p+1) and the denominator as
    g^p, so the left side reduces to g divided by the fixed-p upper limit.
    True is conclusive; False only means this trial was inconclusive.
    """
    if not g > 0:
        raise DomainError("strength g must be positive")
    threshold = upper_variational_at(pot, ell, p, cfg).value
    return g >= threshold


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SandwichReport:
    """All limits and both solver values for one (shape, partial wave) pair."""

    potential: Potential
    ell: int
    lowers: tuple[BoundResult, ...]
    uppers: tuple[BoundResult, ...]
    exact_shooting: float
    exact_nystrom: float
    elapsed_s: float

    @property
    def max_lower(self) -> float:
        return max(b.value for b in self.lowers)

    @property
    def min_upper(self) -> float:
        return min(b.value for b in self.uppers)

    @property
    def lower_margin(self) -> float:
        """(exact - strongest lower limit) / exact; negative means violation."""
        return (self.exact_shooting - self.max_lower) / self.exact_shooting

    @property
    def upper_margin(self) -> float:
        """(weakest needed upper limit - exact) / exact."""
        return (self.min_upper - self.exact_shooting) / self.exact_shooting

    def ordering_ok(self, tol: float = 1e-6) -> bool:
        return self.lower_margin >= -tol and self.upper_margin >= -tol

    def by_method(self, method: Method) -> BoundResult:
        for b in self.lowers + self.uppers:
            if b.method is method:
                return b
        raise KeyError(method)


def sandwich(pot: Potential, ell: int,
             cfg: QuadratureConfig = DEFAULT_CONFIG,
             n_nystrom: int = 400,
             ordering_tol: float = 1e-6) -> SandwichReport:
    """Compute every limit plus both solvers and check the bracketing order.

    Raises InvariantViolation when the strongest lower limit exceeds the
    solver value or the solver value exceeds the weakest upper limit beyond
    the stated relative tolerance.
    """
    ell = AngularMomentum(ell).ell
    t0 = time.perf_counter()
    lowers = (
        lower_bargmann_schwinger(pot, ell, cfg),
        lower_second_order(pot, ell, cfg),
        lower_third_order(pot, ell, cfg),
        lower_ggmt(pot, ell, cfg),
    )
    uppers = (
        upper_calogero_I(pot, ell, cfg),
        upper_calogero_II(pot, ell, cfg),
        upper_variational(pot, ell, cfg),
    )
    g_shoot = critical_coupling_shooting(pot, ell, cfg)
    g_nys = critical_coupling_nystrom(pot, ell, n_nystrom, cfg)
    report = SandwichReport(pot, ell, lowers, uppers, g_shoot, g_nys,
                            time.perf_counter() - t0)
    if not report.ordering_ok(ordering_tol):
        raise InvariantViolation(
            f"bound ordering violated for {pot.label()} ell={ell}: "
            f"max lower {report.max_lower!r}, exact {g_shoot!r}, "
            f"min upper {report.min_upper!r}")
    return report
