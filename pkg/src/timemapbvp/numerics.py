"""Shared numerical kernels: quadrature, extrema search, monotone roots.

All integrals in this package reduce, after an explicit substitution chosen
by the caller, to a smooth (or mildly singular) integrand on a finite
interval.  They are evaluated with composite Gauss-Legendre panels whose
count doubles until the estimate stabilises; the error estimate is the last
panel-doubling difference.  Integrands must be vectorised over numpy arrays.

Extended-real bookkeeping: the constants B, C, A, D, K may be +inf.  They
are stored as ordinary floats, but every arithmetic step involving them goes
through the explicit helpers below so that no inf ever enters an expression
silently.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import AccuracyError

INF = math.inf

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def is_finite(x: float) -> bool:
    return math.isfinite(x)


def ext_div(a: float, b: float) -> float:
    """a / b for extended nonnegative reals; a finite, b may be +inf or 0.

    Convention: a / inf = 0 (used for B/C when C = +inf), a / 0 = +inf.
    """
    if not is_finite(b):
        return 0.0
    if b == 0.0:
        return INF
    return a / b


def ext_repr(x: float) -> str:
    return "inf" if x == INF else repr(x)


@lru_cache(maxsize=8)
def gl_nodes(order: int):
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1.0) / 2.0, w / 2.0


def integrate_adaptive(fn, a: float, b: float, tol: float = 1e-9,
                       order: int = 16, max_levels: int = 13,
                       min_levels: int = 2, strict: bool = True):
    """Integrate ``fn`` over [a, b] by panel-doubling Gauss-Legendre.

    Returns ``(value, est_error)`` where ``est_error`` is the difference
    between the final two refinement levels.  Convergence criterion:
    ``est_error <= tol * max(1, |value|)``.

    With ``strict=True`` an :class:`AccuracyError` (carrying the best
    estimate) is raised when the level budget is exhausted.
    """
    if b <= a:
        return 0.0, 0.0
    x0, w0 = gl_nodes(order)
    span = b - a
    prev = None
    err = INF
    for level in range(max_levels + 1):
        m = 1 << level
        h = span / m
        offsets = a + h * np.arange(m)
        nodes = (offsets[:, None] + h * x0[None, :]).ravel()
        vals = np.asarray(fn(nodes), dtype=float)
        if vals.shape != nodes.shape:
            raise ValueError("integrand is not properly vectorised")
        bad = ~np.isfinite(vals)
        if bad.any():
            raise AccuracyError(
                f"non-finite integrand at {int(bad.sum())} node(s), "
                f"first at x={nodes[bad][0]!r}")
        cur = h * float(np.dot(vals.reshape(m, order), w0).sum())
        if prev is not None:
            err = abs(cur - prev)
            if level >= min_levels and err <= tol * max(1.0, abs(cur)):
                return cur, err
        prev = cur
    if strict:
        raise AccuracyError("quadrature did not converge",
                            best=prev, est_error=err)
    return prev, err


def golden_extremum(fn, a: float, b: float, kind: str,
                    xtol_rel: float = 1e-7, max_iter: int = 200):
    """Golden-section search for a single interior extremum of ``fn``.

    ``kind`` is "max" or "min".  ``fn`` takes a scalar.  Returns
    ``(x, fn(x))``.  The bracket [a, b] must contain exactly one extremum
    of the requested kind.
    """
    sign = -1.0 if kind == "max" else 1.0
    lo, hi = (a, b) if a < b else (b, a)
    h = hi - lo
    c = lo + _INVPHI2 * h
    d = lo + _INVPHI * h
    yc = sign * fn(c)
    yd = sign * fn(d)
    for _ in range(max_iter):
        if h <= xtol_rel * max(abs(lo), abs(hi), 1e-300):
            break
        if yc < yd:
            hi, d, yd = d, c, yc
            h = hi - lo
            c = lo + _INVPHI2 * h
            yc = sign * fn(c)
        else:
            lo, c, yc = c, d, yd
            h = hi - lo
            d = lo + _INVPHI * h
            yd = sign * fn(d)
    if yc < yd:
        return c, sign * yc
    return d, sign * yd


def solve_monotone(fn, target: float, lo: float, hi: float,
                   xtol: float = 1e-14, rtol: float = 4e-16) -> float:
    """Root of ``fn(x) = target`` on a bracket where fn is monotone.

    Brent bracketed iteration; the bracket endpoints must straddle the
    target.  (Monotonicity of the callers' functions guarantees the
    bracket, which is why no derivative safeguards are needed here.)
    """
    g = lambda x: fn(x) - target
    return brentq(g, lo, hi, xtol=xtol, rtol=max(rtol, 9e-16))


def expand_bracket_up(fn, target: float, start: float, cap: float,
                      factor: float = 2.0, max_iter: int = 400):
    """Grow ``hi`` geometrically (toward ``cap``) until fn(hi) >= target.

    ``fn`` must be increasing.  Returns ``(lo, hi)`` with
    fn(lo) < target <= fn(hi).  For a finite cap the growth halves the
    remaining gap instead of multiplying.
    """
    lo = 0.0
    hi = start
    for _ in range(max_iter):
        if fn(hi) >= target:
            return lo, hi
        lo = hi
        hi = hi * factor if not is_finite(cap) else cap - (cap - hi) / factor
    raise AccuracyError("bracket expansion failed to reach target")
