"""Scalar minimization on a logarithmic axis.

The bound optimizations (trial-function power p, matching radius a) are
smooth and empirically unimodal but their minima spread over two decades, so
the search works in log space: a geometric pre-scan locates a bracket, the
bracket is expanded geometrically while the best sample sits on a soft edge,
and golden-section refinement finishes to a relative width target.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import AccuracyError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScalarMinResult:
    x: float
    fx: float
    evaluations: int
    edge_hit: bool


def minimize_scalar_log(f, lo: float, hi: float, *, rel_tol: float = 1e-6,
                        prescan: int = 13, expand_factor: float = 100.0,
                        max_expansions: int = 4,
                        hard_edges: bool = False) -> ScalarMinResult:
    """Minimize f over [lo, hi] on a log axis.

    With hard_edges=False the bracket grows by expand_factor whenever the
    pre-scan minimum lands on an edge; running out of expansions raises
    AccuracyError.  With hard_edges=True an edge minimum is legitimate
    (capped parameter ranges) and is refined in place with a warning at the
    upper cap.
    """
    if not (0 < lo < hi):
        raise AccuracyError(f"invalid search range [{lo}, {hi}]")
    nev = 0

    def eval_log(s):
        nonlocal nev
        nev += 1
        return f(math.exp(s))

    a, b = math.log(lo), math.log(hi)
    n = max(prescan, 5)
    ss = [a + (b - a) * i / (n - 1) for i in range(n)]
    fs = [eval_log(s) for s in ss]

    expansions = 0
    while not hard_edges:
        imin = min(range(len(fs)), key=lambda i: fs[i])
        if 0 < imin < len(fs) - 1:
            break
        if expansions >= max_expansions:
            raise AccuracyError(
                "optimizer failed to bracket a minimum after "
                f"{max_expansions} expansions of [{lo}, {hi}]")
        expansions += 1
        step = (b - a) / (n - 1)
        if imin == 0:
            new = [ss[0] - step * (k + 1) for k in range(n - 1)]
            ss = new[::-1] + ss
            fs = [eval_log(s) for s in new[::-1]] + fs
            a = ss[0]
        else:
            new = [ss[-1] + step * (k + 1) for k in range(n - 1)]
            ss = ss + new
            fs = fs + [eval_log(s) for s in new]
            b = ss[-1]

    imin = min(range(len(fs)), key=lambda i: fs[i])
    edge_hit = imin == 0 or imin == len(fs) - 1
    if edge_hit and hard_edges and imin == len(fs) - 1:
        warnings.warn("minimum sits at the upper parameter cap", stacklevel=2)
    s_lo = ss[max(imin - 1, 0)]
    s_hi = ss[min(imin + 1, len(ss) - 1)]

    # golden-section refinement; log width equals relative width in x
    c = s_hi - _INVPHI * (s_hi - s_lo)
    d = s_lo + _INVPHI * (s_hi - s_lo)
    fc, fd = eval_log(c), eval_log(d)
    while s_hi - s_lo > rel_tol:
        if fc <= fd:
            s_hi, d, fd = d, c, fc
            c = s_hi - _INVPHI * (s_hi - s_lo)
            fc = eval_log(c)
        else:
            s_lo, c, fc = c, d, fd
            d = s_lo + _INVPHI * (s_hi - s_lo)
            fd = eval_log(d)
    s_best, f_best = (c, fc) if fc <= fd else (d, fd)
    return ScalarMinResult(math.exp(s_best), f_best, nev, edge_hit)
