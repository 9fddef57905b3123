"""Additive building blocks for the nonlinearity catalog.

Every cataloged nonlinearity is a sum of primitive terms, each carrying its
own exact antiderivative, its leading Taylor orders at 0, the right endpoint
of its domain, its contribution to C = lim F, and its growth class at the
right endpoint (which fixes D = lim F/f for the sum).

Antiderivatives are written to stay accurate where naive closed forms
cancel catastrophically: expm1/log1p forms for moderate arguments, explicit
positive-term series near zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfi, gammaln, hyp2f1

from ..errors import FamilyError
from ..numerics import INF, gl_nodes

# growth classes at the right endpoint, in increasing dominance
GROWTH_POWER = "power"      # F/f -> +inf
GROWTH_EXP = "exp"          # F/f -> 1/k
GROWTH_EXPSQ = "expsq"      # F/f -> 0
GROWTH_BLOWUP = "blowup"    # A < +inf, f -> +inf, F/f -> 0


def _as_array(u):
    return np.asarray(u, dtype=float)


@dataclass(frozen=True)
class PowerTerm:
    """c * u**p with p > 0."""

    c: float
    p: float

    def __post_init__(self):
        if self.p <= 0:
            raise FamilyError(f"power term needs p > 0, got p={self.p!r}")

    a_endpoint = INF

    def f(self, u):
        return self.c * _as_array(u) ** self.p

    def df(self, u):
        return self.c * self.p * _as_array(u) ** (self.p - 1.0)

    def F(self, u):
        return self.c * _as_array(u) ** (self.p + 1.0) / (self.p + 1.0)

    def series(self):
        return [(self.p, self.c)]

    def c_limit(self):
        return INF

    def growth(self):
        return (GROWTH_POWER, self.p)


@dataclass(frozen=True)
class ExpTerm:
    """c * (exp(k*u) - 1) with k > 0."""

    c: float
    k: float

    def __post_init__(self):
        if self.k <= 0:
            raise FamilyError(f"exp term needs k > 0, got k={self.k!r}")

    a_endpoint = INF

    def f(self, u):
        return self.c * np.expm1(self.k * _as_array(u))

    def df(self, u):
        return self.c * self.k * np.exp(self.k * _as_array(u))

    def F(self, u):
        x = self.k * _as_array(u)
        out = np.where(x < 1e-3,
                       # sum_{j>=2} k^{j-1} u^j / j! truncated; all positive
                       (x * x / self.k) * (0.5 + x / 6.0 + x * x / 24.0
                                           + x ** 3 / 120.0),
                       np.expm1(x) / self.k - _as_array(u))
        return self.c * out

    def series(self):
        k = self.k
        return [(1.0, self.c * k), (2.0, self.c * k * k / 2.0),
                (3.0, self.c * k ** 3 / 6.0), (4.0, self.c * k ** 4 / 24.0)]

    def c_limit(self):
        return INF

    def growth(self):
        return (GROWTH_EXP, self.k)


@dataclass(frozen=True)
class ExpSqTerm:
    """c * (exp(u^2) - 1)."""

    c: float

    a_endpoint = INF
    _SQPI2 = math.sqrt(math.pi) / 2.0

    def f(self, u):
        x = _as_array(u)
        return self.c * np.expm1(x * x)

    def df(self, u):
        x = _as_array(u)
        return self.c * 2.0 * x * np.exp(x * x)

    def F(self, u):
        x = _as_array(u)
        small = x < 0.5
        out = np.empty_like(x)
        xs = x[small]
        # sum_{j>=1} u^(2j+1) / (j! (2j+1)); positive terms, |x|<0.5
        acc = np.zeros_like(xs)
        term = xs ** 3 / 3.0
        j = 1
        while np.any(term > 1e-18 * (acc + 1e-300)) and j < 24:
            acc = acc + term
            j += 1
            term = xs ** (2 * j + 1) / (math.factorial(j) * (2 * j + 1))
        out[small] = acc
        xl = x[~small]
        out[~small] = self._SQPI2 * erfi(xl) - xl
        return self.c * out

    def series(self):
        return [(2.0, self.c), (4.0, self.c / 2.0), (6.0, self.c / 6.0)]

    def c_limit(self):
        return INF

    def growth(self):
        return (GROWTH_EXPSQ, 0.0)


@dataclass(frozen=True)
class PowerExpTerm:
    """c * u**p * exp(k*u) with integer p >= 1 and k > 0."""

    c: float
    p: int
    k: float

    def __post_init__(self):
        if self.p < 1 or self.p != int(self.p):
            raise FamilyError(f"power-exp term needs integer p >= 1, got {self.p!r}")
        if self.k <= 0:
            raise FamilyError(f"power-exp term needs k > 0, got k={self.k!r}")

    a_endpoint = INF

    def f(self, u):
        x = _as_array(u)
        return self.c * x ** self.p * np.exp(self.k * x)

    def df(self, u):
        x = _as_array(u)
        return self.c * np.exp(self.k * x) * (self.p * x ** (self.p - 1)
                                              + self.k * x ** self.p)

    def F(self, u):
        x = _as_array(u)
        kx = self.k * x
        p, k = int(self.p), self.k
        out = np.empty_like(x)
        small = kx <= 30.0
        # series sum_{j>=0} k^j u^(p+1+j) / (j! (p+1+j)): positive terms
        xs = x[small]
        acc = np.zeros_like(xs)
        term = xs ** (p + 1) / (p + 1.0)
        j = 0
        while np.any(term > 1e-18 * (acc + 1e-300)) and j < 120:
            acc = acc + term
            j += 1
            term = xs ** (p + 1 + j) * k ** j / (math.exp(gammaln(j + 1)) * (p + 1 + j))
        out[small] = acc
        xl = x[~small]
        if xl.size:
            # repeated integration by parts; e^(ku) dominates, no cancellation
            poly = np.zeros_like(xl)
            fall = 1.0
            for j in range(p + 1):
                poly = poly + ((-1.0) ** j) * fall * xl ** (p - j) / k ** (j + 1)
                fall *= (p - j)
            const = ((-1.0) ** (p + 1)) * math.factorial(p) / k ** (p + 1)
            out[~small] = np.exp(k * xl) * poly + const
        return self.c * out

    def series(self):
        p, k = float(self.p), self.k
        return [(p, self.c), (p + 1.0, self.c * k), (p + 2.0, self.c * k * k / 2.0)]

    def c_limit(self):
        return INF

    def growth(self):
        return (GROWTH_EXP, self.k)


@dataclass(frozen=True)
class ShiftPowTerm:
    """c * ((1+u)**p - 1) with p > 0."""

    c: float
    p: float

    def __post_init__(self):
        if self.p <= 0:
            raise FamilyError(f"shifted power term needs p > 0, got p={self.p!r}")

    a_endpoint = INF

    def f(self, u):
        x = _as_array(u)
        return self.c * np.expm1(self.p * np.log1p(x))

    def df(self, u):
        x = _as_array(u)
        return self.c * self.p * (1.0 + x) ** (self.p - 1.0)

    def F(self, u):
        x = _as_array(u)
        p1 = self.p + 1.0
        small = x < 1e-3
        out = np.where(
            small,
            # sum_{j>=2} binom(p+1, j) u^j / (p+1), truncated at j=6
            x * x * (self.p / 2.0
                     + x * (self.p * (self.p - 1.0) / 6.0
                            + x * (self.p * (self.p - 1.0) * (self.p - 2.0) / 24.0))),
            np.expm1(p1 * np.log1p(np.where(small, 0.0, x))) / p1 - x)
        return self.c * out

    def series(self):
        p = self.p
        return [(1.0, self.c * p), (2.0, self.c * p * (p - 1.0) / 2.0),
                (3.0, self.c * p * (p - 1.0) * (p - 2.0) / 6.0)]

    def c_limit(self):
        return INF

    def growth(self):
        return (GROWTH_POWER, self.p)


class _TabulatedF:
    """Cumulative integral of f on [0, A) via a graded Gauss-Legendre mesh.

    Used by terms without a closed-form antiderivative.  Mesh cells are
    geometrically graded toward both endpoints; within a cell the integral
    from the cell edge is done with a fixed high-order rule, so the
    tabulated F is consistent with f to near machine precision.
    """

    def __init__(self, f, a_endpoint: float, cells: int = 240, order: int = 24):
        half = cells // 2
        lo = a_endpoint * np.geomspace(1e-12, 0.5, half)
        hi = a_endpoint * (1.0 - np.geomspace(1e-13, 0.5, cells - half))[::-1]
        self.edges = np.concatenate([[0.0], lo, hi])
        self.f = f
        self.order = order
        x, w = gl_nodes(order)
        widths = np.diff(self.edges)
        nodes = self.edges[:-1, None] + widths[:, None] * x[None, :]
        vals = f(nodes.ravel()).reshape(nodes.shape)
        cell_ints = widths * (vals @ w)
        self.cum = np.concatenate([[0.0], np.cumsum(cell_ints)])

    def __call__(self, u):
        x = np.asarray(u, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x).copy()
        np.clip(x, 0.0, self.edges[-1], out=x)
        idx = np.searchsorted(self.edges, x, side="right") - 1
        idx = np.clip(idx, 0, len(self.edges) - 2)
        left = self.edges[idx]
        gx, gw = gl_nodes(self.order)
        span = x - left
        nodes = left[:, None] + span[:, None] * gx[None, :]
        vals = self.f(nodes.ravel()).reshape(nodes.shape)
        out = self.cum[idx] + span * (vals @ gw)
        return float(out[0]) if scalar else out


@dataclass(frozen=True)
class TanPowTerm:
    """tan(u**q) on [0, (pi/2)**(1/q)); q >= 1."""

    q: float

    def __post_init__(self):
        if self.q < 1:
            raise FamilyError(f"tan power term needs q >= 1, got q={self.q!r}")
        if self.q != 1.0:
            object.__setattr__(self, "_tab",
                               _TabulatedF(self.f, self.a_endpoint))

    @property
    def a_endpoint(self):
        return (math.pi / 2.0) ** (1.0 / self.q)

    def f(self, u):
        x = _as_array(u)
        return np.tan(x ** self.q)

    def df(self, u):
        x = _as_array(u)
        return self.q * x ** (self.q - 1.0) / np.cos(x ** self.q) ** 2

    def F(self, u):
        if self.q == 1.0:
            return -np.log(np.cos(_as_array(u)))
        return self._tab(u)

    def series(self):
        q = self.q
        return [(q, 1.0), (3.0 * q, 1.0 / 3.0), (5.0 * q, 2.0 / 15.0)]

    def c_limit(self):
        return INF

    def growth(self):
        return (GROWTH_BLOWUP, 0.0)


@dataclass(frozen=True)
class SingPowTerm:
    """c * ((1 - u**q)**(-p) - 1) on [0, 1); p > 0, q >= 1."""

    c: float
    p: float
    q: float

    def __post_init__(self):
        if self.p <= 0 or self.q < 1:
            raise FamilyError(
                f"singular power term needs p > 0 and q >= 1, got p={self.p!r} q={self.q!r}")

    a_endpoint = 1.0

    def f(self, u):
        x = _as_array(u)
        return self.c * np.expm1(-self.p * np.log1p(-x ** self.q))

    def df(self, u):
        x = _as_array(u)
        return (self.c * self.p * self.q * x ** (self.q - 1.0)
                * (1.0 - x ** self.q) ** (-self.p - 1.0))

    def _F_large(self, x):
        p, q = self.p, self.q
        if q == 1.0 and p == 1.0:
            return -np.log1p(-x) - x
        if q == 1.0:
            return np.expm1((1.0 - p) * np.log1p(-x)) / (p - 1.0) - x
        if q == 2.0 and p == 0.5:
            return np.arcsin(x) - x
        if q == 2.0 and p == 1.0:
            return np.arctanh(x) - x
        return x * (hyp2f1(p, 1.0 / q, 1.0 + 1.0 / q, x ** q) - 1.0)

    def F(self, u):
        x = _as_array(u)
        small = x ** self.q < 0.25
        out = np.empty_like(x)
        xs = x[small]
        # sum_{j>=1} (p)_j u^(qj+1) / (j! (qj+1)); positive terms
        acc = np.zeros_like(xs)
        rising = self.p
        factj = 1.0
        j = 1
        term = rising * xs ** (self.q + 1.0) / (self.q + 1.0)
        while np.any(term > 1e-18 * (acc + 1e-300)) and j < 80:
            acc = acc + term
            j += 1
            rising *= (self.p + j - 1.0)
            factj *= j
            term = rising * xs ** (self.q * j + 1.0) / (factj * (self.q * j + 1.0))
        out[small] = acc
        out[~small] = self._F_large(x[~small])
        return self.c * out

    def series(self):
        p, q = self.p, self.q
        return [(q, self.c * p), (2.0 * q, self.c * p * (p + 1.0) / 2.0),
                (3.0 * q, self.c * p * (p + 1.0) * (p + 2.0) / 6.0)]

    def c_limit(self):
        if self.p >= 1.0:
            return INF
        g = math.lgamma
        val = math.exp(g(1.0 + 1.0 / self.q) + g(1.0 - self.p)
                       - g(1.0 + 1.0 / self.q - self.p))
        return self.c * (val - 1.0)

    def growth(self):
        return (GROWTH_BLOWUP, 0.0)


def merge_series(terms, n_orders: int = 3):
    """Combine per-term leading orders, cancelling exactly opposite ones.

    Returns the first ``n_orders`` (order, coefficient) pairs with nonzero
    net coefficient, sorted by order.  Orders closer than 1e-9 are merged.
    """
    bucket: dict[float, float] = {}
    for t in terms:
        for order, coeff in t.series():
            for key in bucket:
                if abs(key - order) < 1e-9:
                    bucket[key] += coeff
                    break
            else:
                bucket[order] = coeff
    out = [(o, c) for o, c in sorted(bucket.items()) if abs(c) > 1e-13]
    return out[:n_orders]
