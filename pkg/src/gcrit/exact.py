"""Two independent solvers for the true critical strength, plus closed forms.

The shooting solver integrates the zero-energy radial equation outward in
log-radius and tracks the coefficient of the growing large-r mode; the
strength at which that coefficient first crosses zero is the threshold.  The
Nystrom solver discretizes the symmetric kernel

    K(r, r') = sqrt(v(r)) * G(r, r') * sqrt(v(r'))

with G(r, r') = min^( l+1) max^(-l) / (2l+1), whose largest eigenvalue is the
reciprocal of the critical strength.  The two methods share no numerics, so
their agreement is a strong correctness check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import jv

from .errors import (AccuracyError, DomainError, IntegrationError,
                     NoBoundStateError)
from .potentials import AngularMomentum, Potential
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate, integrate_semi_infinite

#: default step of the log-radius RK4 grid; 0.004 keeps the threshold error
#: near 1e-11 relative for every built-in shape while a solve stays a few ms
DEFAULT_LOG_STEP = 0.004

_TAIL_TOL = 1e-12
_EDGE_NUDGE = 1e-13


def greens_function(ell: int, r, rp):
    """Zero-energy radial kernel min(r,r')^(l+1) * max(r,r')^(-l) / (2l+1)."""
    ell = AngularMomentum(ell).ell
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    lo = np.minimum(r, rp)
    hi = np.maximum(r, rp)
    out = lo ** (ell + 1) * hi ** (-ell) / (2 * ell + 1)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class ShootingState:
    """Radial solution sample (u, u') at radius r; u is regular at the origin."""

    r: float
    u: float
    du: float


def _segment_radii(pot: Potential, max_radius: float) -> list[float]:
    """Integration segments: [r0, interior breakpoints..., R_match]."""
    r0_scale = 1e-8 if pot.kind.value == "yukawa" else 1e-6
    r0 = r0_scale * pot.R
    r_sup = pot.support_radius(_TAIL_TOL, max_radius)
    r_match = r_sup * (1.0 if pot.is_compact else 1.5)
    pts = [r0]
    for b in pot.breakpoints():
        if r0 < b < r_match:
            pts.append(b)
    pts.append(r_match)
    return pts


def shoot_zero_energy(pot: Potential, ell: int, g: float,
                      cfg: QuadratureConfig = DEFAULT_CONFIG,
                      log_step: float = DEFAULT_LOG_STEP) -> float:
    """Growing-mode coefficient of the zero-energy radial solution.

    Integrates u'' = [l(l+1)/r^2 - g v(r)] u outward from the regular
    power-law start u ~ r^(l+1) and decomposes u = A r^(l+1) + B r^(-l)
    past the effective support.  Returns A normalized by the local solution
    scale: positive below the first threshold, zero at it, alternating sign
    at later thresholds.

    Works in s = ln r with w(s) = u e^(-s/2), where w'' = [L^2 - g r^2 v] w
    and L = l + 1/2; the log grid resolves both the centrifugal region and
    wide supports with uniform cost.
    """
    w, dw, _ = _integrate_log_radial(pot, ell, g, cfg, log_step)
    L = AngularMomentum(ell).L
    # u = e^{s/2} w gives r u' + l u = e^{s/2}(w' + L w); dividing by the
    # growing mode leaves A up to a positive factor, normalized here by the
    # solution scale so thresholds mean |A| ~ 0 on an O(1) scale
    return (dw + L * w) / max(abs(w), abs(dw), 1e-300)


def zero_energy_state(pot: Potential, ell: int, g: float,
                      cfg: QuadratureConfig = DEFAULT_CONFIG,
                      log_step: float = DEFAULT_LOG_STEP) -> ShootingState:
    """Regular zero-energy solution (u, u') at the matching radius.

    The solution is normalized to unit scale (the radial equation is
    linear), with u ~ r^(l+1) near the origin.
    """
    w, dw, s_end = _integrate_log_radial(pot, ell, g, cfg, log_step)
    scale = max(abs(w), abs(dw), 1e-300)
    w, dw = w / scale, dw / scale
    half = math.exp(0.5 * s_end)
    return ShootingState(r=math.exp(s_end), u=half * w,
                         du=(dw + 0.5 * w) / half)


def _integrate_log_radial(pot: Potential, ell: int, g: float,
                          cfg: QuadratureConfig,
                          log_step: float) -> tuple[float, float, float]:
    if not g > 0:
        raise DomainError("strength g must be positive")
    L = AngularMomentum(ell).L
    pts = _segment_radii(pot, cfg.max_radius)
    s_pts = [math.log(p) for p in pts]
    w, dw = 1.0, L
    for i in range(len(pts) - 1):
        sa, sb = s_pts[i], s_pts[i + 1]
        n = max(8, math.ceil((sb - sa) / log_step))
        h = (sb - sa) / n
        s_nodes = sa + h * np.arange(2 * n + 1) / 2.0
        r_nodes = np.exp(s_nodes)
        # pin segment ends to the exact radii, nudged one-sided so jumps of
        # v at breakpoints are evaluated with their interior limit
        r_nodes[0] = pts[i] * (1.0 + _EDGE_NUDGE)
        r_nodes[-1] = pts[i + 1] * (1.0 - _EDGE_NUDGE)
        q = L * L - g * r_nodes ** 2 * pot.evaluate(r_nodes)
        for j in range(n):
            q0, qh, q1 = q[2 * j], q[2 * j + 1], q[2 * j + 2]
            k1w, k1d = dw, q0 * w
            k2w, k2d = dw + 0.5 * h * k1d, qh * (w + 0.5 * h * k1w)
            k3w, k3d = dw + 0.5 * h * k2d, qh * (w + 0.5 * h * k2w)
            k4w, k4d = dw + h * k3d, q1 * (w + h * k3w)
            w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
            dw += (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
            scale = abs(w) + abs(dw)
            if scale > 1e250:
                w /= scale
                dw /= scale
            elif not math.isfinite(scale):
                raise IntegrationError(
                    f"shooting state became non-finite at g={g!r}")
    return w, dw, s_pts[-1]


def critical_coupling_shooting(pot: Potential, ell: int,
                               cfg: QuadratureConfig = DEFAULT_CONFIG,
                               log_step: float = DEFAULT_LOG_STEP,
                               g_start: float | None = None) -> float:
    """Smallest strength with a zero-energy bound state, via sign change.

    Scans geometrically upward from just below the weakest lower bound
    (strength per unit shape integral), brackets the first sign change of
    the growing-mode coefficient, then polishes the root to relative 1e-12.
    """
    if g_start is None:
        if pot.is_compact:
            moment = integrate(lambda r: r * pot.evaluate(r), 0.0, pot.cutoff,
                               cfg, points=pot.breakpoints()).value
        else:
            moment = integrate_semi_infinite(
                lambda r: r * pot.evaluate(r), 0.0, cfg).value
        if not moment > 0:
            raise NoBoundStateError("shape has a vanishing first moment")
        g_start = 0.98 * (2 * ell + 1) / moment

    def coeff(g):
        return shoot_zero_energy(pot, ell, g, cfg, log_step)

    a = g_start
    fa = coeff(a)
    while fa <= 0 and a > g_start * 1e-6:
        a *= 0.5
        fa = coeff(a)
    if fa <= 0:
        raise NoBoundStateError("no subcritical strength found below the scan start")
    cap = g_start * 1e4
    while True:
        b = a * 1.25
        fb = coeff(b)
        if fa > 0 and fb <= 0:
            break
        a, fa = b, fb
        if a > cap:
            raise NoBoundStateError(
                f"growing-mode coefficient did not change sign below g = {cap:g}")
    return brentq(coeff, a, b, rtol=1e-12, xtol=1e-300)


@dataclass(frozen=True)
class KernelDiscretization:
    """Symmetric quadrature discretization of the coupling-eigenvalue kernel."""

    nodes: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray


def kernel_discretization(pot: Potential, ell: int, n: int,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> KernelDiscretization:
    """Build the n-node symmetric matrix M_ij = sqrt(w_i w_j) K(x_i, x_j).

    Nodes are the square-graded trapezoid grid x_j = R_eff (j/n)^2, j >= 1,
    which keeps every node strictly positive (the 1/sqrt(r) of a Yukawa
    shape stays finite) and turns half-integer powers of r near the origin
    into smooth functions of the grid parameter.  End weights carry
    fourth-order Gregory corrections, and the diagonal carries the local
    correction for the derivative jump of the kernel across r = r'; both are
    needed for the eigenvalue to converge fast enough to cross-check the
    shooting solver at moderate n.
    """
    ell = AngularMomentum(ell).ell
    if n < 8:
        raise DomainError("kernel discretization requires n >= 8")
    r_eff = pot.support_radius(1e-13, cfg.max_radius)
    h = 1.0 / n
    z = h * np.arange(1, n + 1)
    x = r_eff * z * z
    xp = 2.0 * r_eff * z
    gregory = np.ones(n + 1)
    gregory[[0, -1]] = 3.0 / 8.0
    gregory[[1, -2]] = 7.0 / 6.0
    gregory[[2, -3]] = 23.0 / 24.0
    w = h * xp * gregory[1:]
    v = pot.evaluate(x)
    lo = np.minimum.outer(x, x)
    hi = np.maximum.outer(x, x)
    with np.errstate(divide="ignore"):
        kernel = lo ** (ell + 1) * hi ** (-ell) / (2 * ell + 1)
    s = np.sqrt(w * v)
    matrix = s[:, None] * s[None, :] * kernel
    # trapezoid picks up an O(h^2) term from the slope jump of the kernel
    # across the diagonal; subtracting it locally restores fast convergence
    diag = np.diag_indices(n)
    corrected = matrix[diag] - (h * h / 12.0) * xp * xp * v
    matrix[diag] = np.maximum(corrected, 0.0)
    return KernelDiscretization(nodes=x, weights=w, matrix=matrix)


def largest_eigenvalue(matrix: np.ndarray, tol: float = 1e-12,
                       max_iterations: int = 20000) -> float:
    """Dominant eigenvalue of a symmetric nonnegative kernel matrix.

    Power iteration from a positive start vector; the Rayleigh quotient
    converges geometrically in the squared eigenvalue gap.
    """
    n = matrix.shape[0]
    b = np.full(n, 1.0 / math.sqrt(n))
    mu_old = math.inf
    for _ in range(max_iterations):
        y = matrix @ b
        mu = float(b @ y)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise AccuracyError("kernel matrix annihilated the iterate")
        b = y / norm
        if abs(mu - mu_old) <= tol * abs(mu):
            return mu
        mu_old = mu
    raise AccuracyError("power iteration stagnated before reaching tolerance")


def critical_coupling_nystrom(pot: Potential, ell: int, n: int = 400,
                              cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Critical strength as the reciprocal dominant kernel eigenvalue."""
    disc = kernel_discretization(pot, ell, n, cfg)
    return 1.0 / largest_eigenvalue(disc.matrix)


def bessel_first_zero(nu: float) -> float:
    """First positive zero of the Bessel function J_nu, nu >= -1/2.

    J_nu is positive on (0, j1), so an outward scan brackets the first sign
    change and a bracketed root polish finishes the job.
    """
    if not nu >= -0.5:
        raise DomainError("order must satisfy nu >= -1/2")
    step = 0.4
    a = 0.05
    fa = jv(nu, a)
    while True:
        b = a + step
        fb = jv(nu, b)
        if fa > 0 and fb <= 0:
            return brentq(lambda t: jv(nu, t), a, b, rtol=8.9e-16, xtol=1e-300)
        a, fa = b, fb
        if a > 4.0 * (abs(nu) + 4.0):
            raise AccuracyError(f"failed to bracket the first zero of J_{nu}")


def square_well_exact(ell: int) -> float:
    """Critical strength of the square well: squared first zero of J_(l-1/2)."""
    ell = AngularMomentum(ell).ell
    return bessel_first_zero(ell - 0.5) ** 2


def exponential_exact_swave() -> float:
    """s-wave critical strength of the exponential shape: (j_{0,1}/2)^2."""
    return (bessel_first_zero(0.0) / 2.0) ** 2


def stis_exact_swave(alpha: float) -> float:
    """s-wave critical strength of the truncated inverse-square shape.

    Solves lam*ln(1+alpha) + 2*arctan(lam) = 2*pi for lam > 0 (the left side
    grows monotonically from 0, so the root is unique) and returns
    (lam^2 + 1)/4.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    log1a = math.log1p(alpha)

    def residual(lam):
        return lam * log1a + 2.0 * math.atan(lam) - 2.0 * math.pi

    hi = 2.0 * math.pi / log1a + 10.0
    lam = brentq(residual, 1e-12, hi, rtol=8.9e-16, xtol=1e-300)
    return (lam * lam + 1.0) / 4.0
