"""Nonlinearity families f on [0, A) with f(0)=0 and f > 0 on (0, A).

A family carries the derived quantities the time-map machinery consumes:

* F(u) = int_0^u f and a cancellation-free difference F(r) - F(u),
* the bracketed inverse of F,
* the endpoint A and C = lim_{u->A} F(u),
* f'(0) and, when available, the small-u order (alpha, E) with
  f(u) ~ E u^alpha,
* D = lim_{u->A} F(u)/f(u) in [0, +inf].

Cataloged families are sums of the primitive terms in :mod:`.terms`; the
small-u order comes from exact series merging (so e.g. e^u - u - 1 is
recognised as order u^2/2 after the linear parts cancel), and D follows
from the dominant growth class.  A user-supplied numeric triple
(f, f', A) is supported with tabulated F and an extrapolated, explicitly
approximate D.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from ..errors import DomainError, FamilyError
from ..numerics import INF, gl_nodes, is_finite
from .terms import (GROWTH_BLOWUP, GROWTH_EXP, GROWTH_EXPSQ, GROWTH_POWER,
                    ExpSqTerm, ExpTerm, PowerExpTerm, PowerTerm, ShiftPowTerm,
                    SingPowTerm, TanPowTerm, _TabulatedF, merge_series)

_NEAR_DIFF_REL = 1e-4   # switch to local quadrature when (r-u)/r below this
_SATURATION_REL = 1e-12  # clamp u at A*(1 - this) for finite A


class NonlinearityFamily:
    """Immutable bundle of f, f', F, F^-1 and the derived constants.

    All evaluators accept scalars or numpy arrays.  Instances never mutate
    after construction; every method is a pure function of its arguments.
    """

    def __init__(self, terms: Sequence, label: str, *,
                 f_callable: Callable | None = None,
                 df_callable: Callable | None = None,
                 F_callable: Callable | None = None,
                 endpoint_a: float | None = None,
                 left_order: tuple[float, float] | None = None,
                 d_limit: float | None = None,
                 d_limit_approximate: bool = False,
                 f_prime_at_zero: float | None = None):
        self.terms = tuple(terms)
        self.label = label
        self._f = f_callable
        self._df = df_callable
        self._F = F_callable

        if self.terms:
            self.endpoint_a = min(t.a_endpoint for t in self.terms)
            series = merge_series(self.terms)
            if not series:
                raise FamilyError(f"{label}: vanishing leading series")
            alpha, coef = series[0]
            if coef <= 0:
                raise FamilyError(f"{label}: leading coefficient not positive")
            self.left_order = (alpha, coef)
            if abs(alpha - 1.0) < 1e-12:
                self.f_prime_at_zero = coef
            elif alpha > 1.0:
                self.f_prime_at_zero = 0.0
            else:
                self.f_prime_at_zero = INF
            self.c_constant = self._c_from_terms()
            self.d_limit = self._d_from_terms()
            self.d_limit_approximate = False
        else:
            if f_callable is None or df_callable is None or endpoint_a is None:
                raise FamilyError("custom family needs f, f' and A")
            self.endpoint_a = float(endpoint_a)
            self.left_order = left_order
            if f_prime_at_zero is not None:
                self.f_prime_at_zero = float(f_prime_at_zero)
            elif left_order is not None:
                a, e = left_order
                self.f_prime_at_zero = e if abs(a - 1) < 1e-12 else (0.0 if a > 1 else INF)
            else:
                self.f_prime_at_zero = float(df_callable(0.0))
            if self._F is None:
                cap = self.endpoint_a if is_finite(self.endpoint_a) else 1e6
                self._F = _TabulatedF(lambda u: np.asarray(f_callable(u), dtype=float), cap)
            self.c_constant = self._c_numeric()
            if d_limit is not None:
                self.d_limit = float(d_limit)
                self.d_limit_approximate = bool(d_limit_approximate)
            else:
                self.d_limit, self.d_limit_approximate = self._d_numeric()
        self._check_positivity()

    # -- construction helpers -------------------------------------------

    def _c_from_terms(self) -> float:
        if not is_finite(self.endpoint_a):
            return INF
        total = 0.0
        for t in self.terms:
            if t.a_endpoint == self.endpoint_a:
                cl = t.c_limit()
                if not is_finite(cl):
                    return INF
                total += cl
            else:
                total += float(np.atleast_1d(t.F(np.asarray([self.endpoint_a])))[0])
        return total

    def _d_from_terms(self) -> float:
        classes = [t.growth() for t in self.terms]
        if any(c[0] == GROWTH_BLOWUP for c in classes):
            return 0.0
        if any(c[0] == GROWTH_EXPSQ for c in classes):
            return 0.0
        exp_ks = [c[1] for c in classes if c[0] == GROWTH_EXP]
        if exp_ks:
            return 1.0 / max(exp_ks)
        return INF

    def _c_numeric(self) -> float:
        if not is_finite(self.endpoint_a):
            return INF
        a = self.endpoint_a
        vals = [float(self.capital_f(a * (1.0 - 10.0 ** (-j)))) for j in (4, 6, 8)]
        if vals[-1] > 1e8 or (vals[-1] - vals[-2]) > 0.05 * abs(vals[-1]):
            return INF
        return vals[-1]

    def _d_numeric(self) -> tuple[float, bool]:
        a = self.endpoint_a
        if is_finite(a):
            us = [a * (1.0 - 10.0 ** (-j)) for j in range(2, 9)]
        else:
            us = [10.0 ** j for j in range(0, 7)]
        seq = []
        for u in us:
            fu = float(self.eval(u))
            if not math.isfinite(fu) or fu <= 0:
                break
            seq.append(float(self.capital_f(u)) / fu)
        if len(seq) >= 3:
            tail = seq[-3:]
            lo, hi = min(tail), max(tail)
            if hi > 1e6 and all(b > 1.5 * a_ for a_, b in zip(tail, tail[1:])):
                return INF, True
            if hi - lo <= 0.01 * max(abs(hi), 1e-12):
                return tail[-1], True
        return math.nan, True

    def _check_positivity(self):
        a = self.endpoint_a
        hi = a * (1 - 1e-6) if is_finite(a) else 10.0
        probe = np.geomspace(1e-9, hi, 64)
        vals = self.eval(probe)
        if np.any(~np.isfinite(vals)) or np.any(vals <= 0.0):
            raise FamilyError(f"{self.label}: f must be positive on (0, A)")

    # -- evaluation ------------------------------------------------------

    def _saturate(self, u):
        x = np.asarray(u, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x).astype(float, copy=True)
        if is_finite(self.endpoint_a):
            np.minimum(x, self.endpoint_a * (1.0 - _SATURATION_REL), out=x)
        return x, scalar

    def eval(self, u):
        x, scalar = self._saturate(u)
        with np.errstate(over="ignore"):
            if self.terms:
                out = sum(t.f(x) for t in self.terms)
            else:
                out = np.asarray(self._f(x), dtype=float)
        return float(out[0]) if scalar else out

    def deriv(self, u):
        x, scalar = self._saturate(u)
        with np.errstate(over="ignore"):
            if self.terms:
                out = sum(t.df(x) for t in self.terms)
            else:
                out = np.asarray(self._df(x), dtype=float)
        return float(out[0]) if scalar else out

    def capital_f(self, u):
        x, scalar = self._saturate(u)
        with np.errstate(over="ignore"):
            if self.terms:
                out = sum(t.F(x) for t in self.terms)
            else:
                out = np.asarray(self._F(x), dtype=float)
        return float(out[0]) if scalar else out

    def capital_f_diff(self, u, r: float):
        """F(r) - F(u) without cancellation for u close to r.

        Where (r - u) < 1e-4 * r the difference is replaced by a local
        8-point Gauss-Legendre integral of f over [u, r], which keeps full
        relative precision down to machine-size gaps.
        """
        x, scalar = self._saturate(u)
        out = self.capital_f_gap(r, np.asarray(r, dtype=float) - x)
        return float(out[0]) if scalar else out

    def near_gap_threshold(self, r: float) -> float:
        """Largest gap for which f is locally smooth over [r-gap, r].

        Near a finite A the local variation scale of f is (A - r), so the
        panel quadrature of f over the gap is only trusted well inside it.
        """
        thr = _NEAR_DIFF_REL * r
        if is_finite(self.endpoint_a):
            thr = min(thr, 0.05 * (self.endpoint_a - r))
        return thr

    def capital_f_gap(self, r: float, gap):
        """F(r) - F(r - gap) with the gap supplied exactly.

        Callers that derive u = r - gap from a substitution pass the gap
        itself, because forming u first would round it to absolute machine
        precision in r and destroy the relative accuracy of small gaps.
        """
        gap = np.atleast_1d(np.asarray(gap, dtype=float))
        r = float(min(r, self.endpoint_a * (1.0 - _SATURATION_REL))
                  if is_finite(self.endpoint_a) else r)
        out = self.capital_f(r) - self.capital_f(r - gap)
        near = gap < self.near_gap_threshold(r)
        if np.any(near):
            gn = gap[near]
            gx, gw = gl_nodes(8)
            nodes = r - gn[:, None] * (1.0 - gx[None, :])
            vals = self.eval(nodes.ravel()).reshape(nodes.shape)
            out[near] = gn * (vals @ gw)
        np.maximum(out, 0.0, out)
        return out

    def capital_f_inv(self, y: float) -> float:
        """Positive branch of F^-1; bracketed Brent plus a Newton polish."""
        y = float(y)
        if y < 0:
            raise DomainError(f"F inverse takes nonnegative arguments, got {y!r}")
        if y == 0.0:
            return 0.0
        if is_finite(self.c_constant) and y >= self.c_constant:
            if y <= self.c_constant * (1.0 + 1e-9):
                # rounding at the junction lambda = B/C; clamp to the wall
                return self.endpoint_a * (1.0 - _SATURATION_REL)
            raise DomainError(
                f"F inverse argument {y!r} >= C = {self.c_constant!r}")
        a = self.endpoint_a
        lo = 0.0
        hi = min(1.0, a / 2.0) if is_finite(a) else 1.0
        for _ in range(4000):
            if float(self.capital_f(hi)) >= y:
                break
            if is_finite(a) and hi >= a * (1.0 - 1.01 * _SATURATION_REL):
                # y < C but beyond the saturation clamp; report the clamp
                return a * (1.0 - _SATURATION_REL)
            lo = hi
            hi = hi * 2.0 if not is_finite(a) else a - (a - hi) / 2.0
        else:
            raise DomainError(f"could not bracket F inverse of {y!r}")
        root = brentq(lambda u: float(self.capital_f(u)) - y, lo, hi,
                      xtol=1e-280, rtol=9e-16)
        for _ in range(2):
            fu = float(self.eval(root))
            if fu > 0.0:
                step = (float(self.capital_f(root)) - y) / fu
                cand = root - step
                if lo < cand < hi:
                    root = cand
        return root


# ---------------------------------------------------------------------------
# named catalog
# ---------------------------------------------------------------------------

def _require(cond: bool, msg: str):
    if not cond:
        raise FamilyError(msg)


def _build_power(p: float = 2.0, **_):
    _require(p > 0, f"power: need p > 0, got {p!r}")
    return [PowerTerm(1.0, p)], f"u^{p:g}"


def _build_power_sum(p: float = 1.0, q: float = 6.0, **_):
    _require(0 < p < q, f"power_sum: need 0 < p < q, got p={p!r} q={q!r}")
    return [PowerTerm(1.0, p), PowerTerm(1.0, q)], f"u^{p:g}+u^{q:g}"


def _build_shifted_power(p: float = 2.0, **_):
    _require(p > 0, f"shifted_power: need p > 0, got {p!r}")
    return [ShiftPowTerm(1.0, p)], f"(1+u)^{p:g}-1"


def _build_exp_minus_one(**_):
    return [ExpTerm(1.0, 1.0)], "e^u-1"


def _build_exp_plus_power(p: float = 8.0, **_):
    _require(p > 0, f"exp_plus_power: need p > 0, got {p!r}")
    return [ExpTerm(1.0, 1.0), PowerTerm(1.0, p)], f"e^u+u^{p:g}-1"


def _build_exp_sq_minus_one(**_):
    return [ExpSqTerm(1.0)], "e^(u^2)-1"


def _build_exp_sq_plus_power(p: float = 8.0, **_):
    _require(p > 0, f"exp_sq_plus_power: need p > 0, got {p!r}")
    return [ExpSqTerm(1.0), PowerTerm(1.0, p)], f"e^(u^2)+u^{p:g}-1"


def _build_exp_minus_u_minus_one(**_):
    return [ExpTerm(1.0, 1.0), PowerTerm(-1.0, 1.0)], "e^u-u-1"


def _build_exp_plus_usq_minus_u_minus_one(**_):
    return ([ExpTerm(1.0, 1.0), PowerTerm(1.0, 2.0), PowerTerm(-1.0, 1.0)],
            "e^u+u^2-u-1")


def _build_power_exp_plus_power(p: float = 7, k: float = 1.0, q: float = 2.0, **_):
    _require(p >= 1 and q >= 1, f"power_exp_plus_power: need p,q >= 1, got p={p!r} q={q!r}")
    _require(k > 0, f"power_exp_plus_power: need k > 0, got {k!r}")
    return ([PowerExpTerm(1.0, int(p), k), PowerTerm(1.0, q)],
            f"u^{p:g}e^({k:g}u)+u^{q:g}")


def _build_exp_plus_power_minus_u(p: float = 8.0, **_):
    _require(p > 1, f"exp_plus_power_minus_u: need p > 1, got {p!r}")
    return ([ExpTerm(1.0, 1.0), PowerTerm(1.0, p), PowerTerm(-1.0, 1.0)],
            f"e^u+u^{p:g}-u-1")


def _build_exp_sq_plus_power_plus_u(p: float = 8.0, **_):
    _require(p > 1, f"exp_sq_plus_power_plus_u: need p > 1, got {p!r}")
    return ([ExpSqTerm(1.0), PowerTerm(1.0, p), PowerTerm(1.0, 1.0)],
            f"e^(u^2)+u^{p:g}+u-1")


def _build_tan(**_):
    return [TanPowTerm(1.0)], "tan(u)"


def _build_tan_power(q: float = 2.0, **_):
    _require(q > 1, f"tan_power: need q > 1, got {q!r}")
    return [TanPowTerm(q)], f"tan(u^{q:g})"


def _build_sing_power(p: float = 1.0, **_):
    _require(p > 0, f"sing_power: need p > 0, got {p!r}")
    return [SingPowTerm(1.0, p, 1.0)], f"(1-u)^(-{p:g})-1"


def _build_sing_power_q(p: float = 1.0, q: float = 2.0, **_):
    _require(p > 0 and q > 1, f"sing_power_q: need p > 0, q > 1, got p={p!r} q={q!r}")
    return [SingPowTerm(1.0, p, q)], f"(1-u^{q:g})^(-{p:g})-1"


_TERM_TYPES = {
    "power": lambda d: PowerTerm(float(d.get("c", 1.0)), float(d["p"])),
    "exp": lambda d: ExpTerm(float(d.get("c", 1.0)), float(d.get("k", 1.0))),
    "exp_sq": lambda d: ExpSqTerm(float(d.get("c", 1.0))),
    "power_exp": lambda d: PowerExpTerm(float(d.get("c", 1.0)), int(d["p"]),
                                        float(d["k"])),
    "shifted_power": lambda d: ShiftPowTerm(float(d.get("c", 1.0)), float(d["p"])),
    "tan_power": lambda d: TanPowTerm(float(d.get("q", 1.0))),
    "sing_power": lambda d: SingPowTerm(float(d.get("c", 1.0)), float(d["p"]),
                                        float(d.get("q", 1.0))),
}


def _build_term_sum(terms=(), label: str | None = None, **_):
    if not terms:
        raise FamilyError("term_sum: needs a nonempty 'terms' list")
    built = []
    for spec in terms:
        kind = spec.get("type")
        if kind not in _TERM_TYPES:
            raise FamilyError(f"term_sum: unknown term type {kind!r}")
        built.append(_TERM_TYPES[kind](spec))
    return built, (label or "+".join(type(t).__name__ for t in built))


_KIND_BUILDERS = {
    "power": _build_power,
    "power_sum": _build_power_sum,
    "shifted_power": _build_shifted_power,
    "exp_minus_one": _build_exp_minus_one,
    "exp_plus_power": _build_exp_plus_power,
    "exp_sq_minus_one": _build_exp_sq_minus_one,
    "exp_sq_plus_power": _build_exp_sq_plus_power,
    "exp_minus_u_minus_one": _build_exp_minus_u_minus_one,
    "exp_plus_usq_minus_u_minus_one": _build_exp_plus_usq_minus_u_minus_one,
    "power_exp_plus_power": _build_power_exp_plus_power,
    "exp_plus_power_minus_u": _build_exp_plus_power_minus_u,
    "exp_sq_plus_power_plus_u": _build_exp_sq_plus_power_plus_u,
    "tan": _build_tan,
    "tan_power": _build_tan_power,
    "sing_power": _build_sing_power,
    "sing_power_q": _build_sing_power_q,
    "u_over_one_minus_u": lambda **kw: _build_sing_power(p=1.0),
    "usq_over_one_minus_usq": lambda **kw: _build_sing_power_q(p=1.0, q=2.0),
    "term_sum": _build_term_sum,
}


def family_kinds() -> list[str]:
    return sorted(_KIND_BUILDERS)


def make_f(spec) -> NonlinearityFamily:
    """Build a cataloged nonlinearity from a descriptor.

    ``spec`` is either a kind name or a mapping with a ``kind`` key plus
    the kind's parameters, e.g. ``{"kind": "power_sum", "p": 1, "q": 6}``.
    Custom numeric triples go through :func:`make_custom_f`.
    """
    if isinstance(spec, str):
        spec = {"kind": spec}
    if not isinstance(spec, dict) or "kind" not in spec:
        raise FamilyError(f"bad family descriptor: {spec!r}")
    kind = spec["kind"]
    if kind == "custom":
        raise FamilyError("custom families are built with make_custom_f")
    if kind not in _KIND_BUILDERS:
        raise FamilyError(f"unknown family kind {kind!r}; known: {family_kinds()}")
    params = {k: v for k, v in spec.items() if k != "kind"}
    terms, label = _KIND_BUILDERS[kind](**params)
    return NonlinearityFamily(terms, label)


def make_custom_f(f, fprime, endpoint_a: float, *, capital_f=None,
                  left_order: tuple[float, float] | None = None,
                  d_limit: float | None = None,
                  label: str = "custom") -> NonlinearityFamily:
    """Wrap a user-supplied numeric triple (f, f', A).

    F defaults to a tabulated cumulative integral of f; D, when not given,
    is extrapolated along a geometric approach to A and flagged
    approximate.
    """
    return NonlinearityFamily((), label, f_callable=f, df_callable=fprime,
                              F_callable=capital_f, endpoint_a=endpoint_a,
                              left_order=left_order, d_limit=d_limit,
                              d_limit_approximate=False)
