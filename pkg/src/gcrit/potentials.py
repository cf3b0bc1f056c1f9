"""Radial shape functions v(r) for attractive potentials V(r) = -g v(r).

The built-in catalog covers a square well, an exponential, a Yukawa and a
shifted truncated inverse-square (STIS) well, all normalized so the critical
strength is independent of the radius parameter R.  A narrow-shell shape
approximates a delta ring, and tabulated shapes interpolate user grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, DomainError, TruncationError


class Kind(str, Enum):
    SQUARE_WELL = "square_well"
    EXPONENTIAL = "exponential"
    YUKAWA = "yukawa"
    STIS = "stis"
    SHELL = "shell"
    TABULATED = "tabulated"


_COMPACT = {Kind.SQUARE_WELL, Kind.STIS, Kind.SHELL, Kind.TABULATED}


@dataclass(frozen=True)
class AngularMomentum:
    """Partial-wave index; L is the half-integer combination ell + 1/2."""

    ell: int

    def __post_init__(self):
        if not isinstance(self.ell, (int, np.integer)) or self.ell < 0:
            raise DomainError(f"ell must be a nonnegative integer, got {self.ell!r}")

    @property
    def L(self) -> float:
        return self.ell + 0.5


@dataclass(frozen=True)
class RegularityReport:
    """Diagnostic for the behavior of v near the origin and at infinity."""

    eps: float
    origin_ok: bool
    tail_ok: bool
    origin_samples: tuple
    tail_samples: tuple

    @property
    def ok(self) -> bool:
        return self.origin_ok and self.tail_ok


@dataclass(frozen=True)
class Potential:
    """A nonnegative radial shape v(r), immutable after construction.

    Use the classmethod constructors; the generic fields exist so a shape is
    fully described by (kind, parameters).
    """

    kind: Kind
    R: float = 1.0
    alpha: float | None = None
    shell_width: float | None = None
    grid: tuple[tuple[float, float], ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if not (isinstance(self.R, (int, float)) and math.isfinite(self.R) and self.R > 0):
            raise ConfigurationError(f"R must be a positive finite length, got {self.R!r}")
        if self.kind is Kind.STIS:
            if self.alpha is None or not (math.isfinite(self.alpha) and self.alpha > 0):
                raise ConfigurationError("stis requires a positive cutoff multiplier alpha")
        elif self.alpha is not None:
            raise ConfigurationError(f"alpha is only meaningful for stis, not {self.kind.value}")
        if self.kind is Kind.SHELL:
            if self.shell_width is None or not (math.isfinite(self.shell_width) and self.shell_width > 0):
                raise ConfigurationError("shell requires a positive shell_width")
        elif self.shell_width is not None:
            raise ConfigurationError("shell_width is only meaningful for shell")
        if self.kind is Kind.TABULATED:
            if not self.grid:
                raise ConfigurationError("tabulated potential requires a nonempty grid")
            radii = np.array([p[0] for p in self.grid], dtype=float)
            values = np.array([p[1] for p in self.grid], dtype=float)
            if not np.all(np.isfinite(radii)) or not np.all(np.isfinite(values)):
                raise ConfigurationError("grid entries must be finite")
            if radii[0] <= 0 or np.any(np.diff(radii) <= 0):
                raise ConfigurationError("grid radii must be positive and strictly increasing")
            if np.any(values < 0):
                raise ConfigurationError("grid values must be nonnegative")
        elif self.grid is not None:
            raise ConfigurationError("grid is only meaningful for tabulated")

    # -- constructors -------------------------------------------------------

    @classmethod
    def square_well(cls, R: float = 1.0) -> "Potential":
        """v(r) = 1/R^2 for r <= R, else 0."""
        return cls(Kind.SQUARE_WELL, R=R)

    @classmethod
    def exponential(cls, R: float = 1.0) -> "Potential":
        """v(r) = exp(-r/R)/R^2."""
        return cls(Kind.EXPONENTIAL, R=R)

    @classmethod
    def yukawa(cls, R: float = 1.0) -> "Potential":
        """v(r) = exp(-r/R)/(r R)."""
        return cls(Kind.YUKAWA, R=R)

    @classmethod
    def stis(cls, alpha: float, R: float = 1.0) -> "Potential":
        """v(r) = (R + r)^-2 on [0, alpha R], zero beyond the cutoff."""
        return cls(Kind.STIS, R=R, alpha=float(alpha))

    @classmethod
    def shell(cls, width: float, R: float = 1.0) -> "Potential":
        """v(r) = 1/(width R) on [R, R + width], else 0.

        The area integral of v is 1/R for every width, so the shape tends to
        a delta ring at radius R as width -> 0 (critical strength -> 1).
        """
        return cls(Kind.SHELL, R=R, shell_width=float(width))

    @classmethod
    def tabulated(cls, points: Sequence[tuple[float, float]]) -> "Potential":
        """Linear interpolation of (radius, value) samples.

        Below the first radius the first value is held constant; beyond the
        last radius the shape is zero.  R is set to the last radius.
        """
        pts = tuple((float(r), float(v)) for r, v in points)
        if not pts:
            raise ConfigurationError("tabulated potential requires a nonempty grid")
        return cls(Kind.TABULATED, R=pts[-1][0], grid=pts)

    # -- geometry -----------------------------------------------------------

    @property
    def is_compact(self) -> bool:
        return self.kind in _COMPACT

    @property
    def cutoff(self) -> float | None:
        """End of the support for compact shapes, None for decaying ones."""
        if self.kind is Kind.SQUARE_WELL:
            return self.R
        if self.kind is Kind.STIS:
            return self.alpha * self.R
        if self.kind is Kind.SHELL:
            return self.R + self.shell_width
        if self.kind is Kind.TABULATED:
            return self.grid[-1][0]
        return None

    def breakpoints(self) -> tuple[float, ...]:
        """Interior radii where v jumps or kinks (support ends excluded)."""
        if self.kind is Kind.SHELL:
            return (self.R,)
        if self.kind is Kind.TABULATED:
            return tuple(r for r, _ in self.grid[:-1])
        return ()

    # -- evaluation ---------------------------------------------------------

    def _shape(self, r: np.ndarray) -> np.ndarray:
        if self.kind is Kind.SQUARE_WELL:
            return np.where(r <= self.R, self.R ** -2, 0.0)
        if self.kind is Kind.EXPONENTIAL:
            return np.exp(-r / self.R) / self.R ** 2
        if self.kind is Kind.YUKAWA:
            return np.exp(-r / self.R) / (r * self.R)
        if self.kind is Kind.STIS:
            return np.where(r <= self.alpha * self.R, (self.R + r) ** -2.0, 0.0)
        if self.kind is Kind.SHELL:
            w = self.shell_width
            inside = (r >= self.R) & (r <= self.R + w)
            return np.where(inside, 1.0 / (w * self.R), 0.0)
        radii = np.array([p[0] for p in self.grid])
        values = np.array([p[1] for p in self.grid])
        return np.interp(r, radii, values, left=values[0], right=0.0)

    def evaluate(self, r):
        """v(r) for a positive radius or an array of positive radii."""
        arr = np.asarray(r, dtype=float)
        if arr.size and (np.any(arr <= 0) or not np.all(np.isfinite(arr))):
            raise DomainError("radius must be positive and finite")
        out = self._shape(arr)
        if arr.ndim == 0:
            return float(out)
        return out

    def support_radius(self, tail_tol: float, max_radius: float = 1e4) -> float:
        """Radius beyond which r*v(r) stays below tail_tol.

        Exact cutoff for compact shapes.  For decaying shapes the crossing of
        r*v(r) = tail_tol is bracketed by geometric scan and bisected.
        """
        if not tail_tol > 0:
            raise DomainError("tail_tol must be positive")
        if self.is_compact:
            return self.cutoff

        def excess(r):
            return r * self.evaluate(r) - tail_tol

        lo = self.R
        if excess(lo) <= 0:
            # already below at the scale radius: walk inward for a bracket
            while lo > 1e-12 * self.R and excess(lo) <= 0:
                lo *= 0.5
            if excess(lo) <= 0:
                return self.R
        hi = 2.0 * lo
        while excess(hi) > 0:
            hi *= 2.0
            if hi > max_radius:
                raise TruncationError(
                    f"tail of r*v never drops below {tail_tol} within r <= {max_radius}")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if excess(mid) > 0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * hi:
                break
        return hi

    def validate_regularity(self, eps: float) -> RegularityReport:
        """Sample r^(2-eps) v near 0 and r^(2+eps) v at large r.

        Radii run over the geometric ladders 2^-k and 2^k, k = 0..40; each
        sequence passes if its last three samples are non-increasing, the
        pragmatic proxy for the limits being zero.  Never raises on a
        failing shape.
        """
        if not 0 < eps < 1:
            raise DomainError("eps must lie in (0, 1)")
        ks = np.arange(41)
        r_origin = 2.0 ** -ks
        r_tail = 2.0 ** ks
        s_origin = r_origin ** (2.0 - eps) * self._shape(r_origin)
        s_tail = r_tail ** (2.0 + eps) * self._shape(r_tail)
        origin_ok = bool(s_origin[-3] >= s_origin[-2] >= s_origin[-1])
        tail_ok = bool(s_tail[-3] >= s_tail[-2] >= s_tail[-1])
        return RegularityReport(eps, origin_ok, tail_ok,
                                tuple(s_origin), tuple(s_tail))

    def label(self) -> str:
        if self.kind is Kind.STIS:
            return f"stis(alpha={self.alpha:g})"
        if self.kind is Kind.SHELL:
            return f"shell(width={self.shell_width:g})"
        return self.kind.value
