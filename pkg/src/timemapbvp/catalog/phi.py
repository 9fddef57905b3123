"""Gradient-flux families phi_k(s) = int_0^s (1+t^2)^(-k/2) dt, k >= 0.

These odd, strictly increasing fluxes interpolate between the linear flux
(k=0), the arctangent flux (k=2) and the mean-curvature flux (k=3).  The
kinetic potential is

    Phi(z) = int_0^z t phi'(t) dt,

which for k != 2 has the closed form ((1+z^2)^((2-k)/2) - 1) / (2-k) and
for k = 2 equals log(1+z^2)/2.  Its supremum B = 1/(k-2) is finite exactly
when k > 2; a finite B is what produces gradient blow-up in the associated
boundary value problem.  The range sup phi is finite exactly when k > 1.

All evaluation callables are vectorised over numpy arrays and stable for
tiny arguments (expm1/log1p forms) and near the saturation value B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from scipy.special import gamma as _gamma, hyp2f1

from ..errors import DomainError
from ..numerics import INF, integrate_adaptive, is_finite


@dataclass(frozen=True)
class PhiFamily:
    """An odd flux phi with phi' > 0, its potential Phi and inverses.

    ``b_constant`` is sup Phi (+inf allowed) and ``phi_range_bound`` is
    sup phi (+inf allowed).  ``inv`` inverts phi on its open range; it is
    what the shooting integrator uses to recover u' from the flux variable.
    Instances are immutable and safe to share between threads.
    """

    label: str
    eval: Callable = field(repr=False)
    deriv: Callable = field(repr=False)
    deriv2: Callable = field(repr=False)
    capital_phi: Callable = field(repr=False)
    capital_phi_inv: Callable = field(repr=False)
    inv: Callable = field(repr=False)
    b_constant: float = INF
    phi_range_bound: float = INF
    k: float | None = None

    def deriv_at_zero(self) -> float:
        return float(self.deriv(0.0))


def _phi_k_eval(k: float):
    if k == 0.0:
        return lambda s: np.asarray(s, dtype=float) + 0.0
    if k == 1.0:
        return lambda s: np.arcsinh(np.asarray(s, dtype=float))
    if k == 2.0:
        return lambda s: np.arctan(np.asarray(s, dtype=float))
    if k == 3.0:
        return lambda s: (lambda a: a / np.sqrt(1.0 + a * a))(np.asarray(s, dtype=float))
    if k == 4.0:
        def _e4(s):
            a = np.asarray(s, dtype=float)
            return 0.5 * (np.arctan(a) + a / (1.0 + a * a))
        return _e4
    if k == 5.0:
        def _e5(s):
            a = np.asarray(s, dtype=float)
            w = 1.0 + a * a
            return a / np.sqrt(w) - (a ** 3) / (3.0 * w ** 1.5)
        return _e5

    def _e_gen(s):
        a = np.asarray(s, dtype=float)
        return a * hyp2f1(0.5, k / 2.0, 1.5, -a * a)
    return _e_gen


def _phi_k_inv(k: float, eval_fn, range_bound: float):
    if k == 0.0:
        return lambda y: np.asarray(y, dtype=float) + 0.0
    if k == 1.0:
        return lambda y: np.sinh(np.asarray(y, dtype=float))
    if k == 2.0:
        return lambda y: np.tan(np.asarray(y, dtype=float))
    if k == 3.0:
        def _i3(y):
            a = np.asarray(y, dtype=float)
            return a / np.sqrt((1.0 - a) * (1.0 + a))
        return _i3

    def _i_gen_scalar(y: float) -> float:
        if y == 0.0:
            return 0.0
        sign = 1.0 if y > 0 else -1.0
        t = abs(y)
        if is_finite(range_bound) and t >= range_bound:
            raise DomainError(f"phi inverse argument {y!r} outside range "
                              f"(sup phi = {range_bound!r})")
        hi = 1.0
        while float(eval_fn(hi)) < t:
            hi *= 2.0
            if hi > 1e160:
                raise DomainError("phi inverse bracket expansion failed")
        root = brentq(lambda s: float(eval_fn(s)) - t, 0.0, hi,
                      xtol=1e-15, rtol=9e-16)
        return sign * root

    return np.vectorize(_i_gen_scalar, otypes=[float])


def make_phi_k(k: float) -> PhiFamily:
    """Construct phi_k with closed forms wherever they exist.

    Valid for every k >= 0.  Closed forms: eval for k in {0,1,2,3,4,5}
    (hypergeometric otherwise), Phi and its inverse for all k, and
    B = 1/(k-2) when k > 2 (else +inf).  sup phi is finite iff k > 1.
    """
    if not (is_finite(k) and k >= 0.0):
        raise DomainError(f"phi_k requires k >= 0, got {k!r}")
    k = float(k)

    def deriv(s):
        a = np.asarray(s, dtype=float)
        return (1.0 + a * a) ** (-k / 2.0)

    def deriv2(s):
        a = np.asarray(s, dtype=float)
        return -k * a * (1.0 + a * a) ** (-k / 2.0 - 1.0)

    if k == 2.0:
        def capital_phi(z):
            a = np.asarray(z, dtype=float)
            return 0.5 * np.log1p(a * a)

        def capital_phi_inv(y):
            a = np.asarray(y, dtype=float)
            if np.any(a < 0):
                raise DomainError("Phi inverse takes nonnegative arguments")
            # exp(y)*sqrt(1 - exp(-2y)) never overflows before exp(y) does;
            # beyond that, +inf is the honest value
            with np.errstate(over="ignore"):
                return np.exp(a) * np.sqrt(-np.expm1(-2.0 * a))
    else:
        c = 2.0 - k  # Phi(z) = ((1+z^2)^(c/2) - 1)/c

        def capital_phi(z):
            a = np.asarray(z, dtype=float)
            return np.expm1(0.5 * c * np.log1p(a * a)) / c

        def capital_phi_inv(y):
            a = np.asarray(y, dtype=float)
            scalar = a.ndim == 0
            a = np.atleast_1d(a)
            if np.any(a < 0):
                raise DomainError("Phi inverse takes nonnegative arguments")
            ca = c * a  # 1 + ca -> 0+ as y -> B when k > 2
            if k > 2.0:
                out = np.full(a.shape, INF)
                ok = ca > -1.0
                with np.errstate(over="ignore"):
                    out[ok] = np.sqrt(np.expm1((2.0 / c) * np.log1p(ca[ok])))
            else:
                out = np.sqrt(np.expm1((2.0 / c) * np.log1p(ca)))
            return float(out[0]) if scalar else out

    b_constant = 1.0 / (k - 2.0) if k > 2.0 else INF
    if k > 1.0:
        range_bound = math.sqrt(math.pi) / 2.0 * _gamma((k - 1.0) / 2.0) / _gamma(k / 2.0)
    else:
        range_bound = INF

    eval_fn = _phi_k_eval(k)
    label = f"phi_k(k={k:g})"
    return PhiFamily(label=label, eval=eval_fn, deriv=deriv, deriv2=deriv2,
                     capital_phi=capital_phi, capital_phi_inv=capital_phi_inv,
                     inv=_phi_k_inv(k, eval_fn, range_bound),
                     b_constant=b_constant, phi_range_bound=range_bound, k=k)


def k_integral(phi: PhiFamily, tol: float = 1e-10) -> float:
    """K = int_0^B dy / (y * PhiInv(B - y)), the tail constant of g.

    The y -> B end has a square-root singularity (PhiInv(small) ~ sqrt);
    it is removed exactly by the substitution y = B - (B/2) t^2.  The
    y -> 0 end is tamed by PhiInv(B - y) -> +inf but may keep a mild
    algebraic singularity, so [0, B/2] is summed over geometric annuli
    with divergence detection by tail extrapolation: if the annulus
    contributions stop shrinking the integral is reported as +inf.
    """
    B = phi.b_constant
    if not is_finite(B):
        raise DomainError("k_integral requires B = sup Phi < +inf")

    def h(y):
        return 1.0 / (y * phi.capital_phi_inv(B - y))

    def right_integrand(t):
        y = B - 0.5 * B * t * t
        return B * t * h(y)

    total, _ = integrate_adaptive(right_integrand, 0.0, 1.0, tol=tol)

    hi = B / 2.0
    shrink_count = 0
    grow_count = 0
    prev_piece = None
    for _ in range(200):
        lo = hi / 4.0
        piece, _ = integrate_adaptive(h, lo, hi, tol=tol)
        total += piece
        if prev_piece is not None:
            if piece >= 0.95 * prev_piece:
                grow_count += 1
                if grow_count >= 6:
                    return INF
            else:
                grow_count = 0
        if piece <= tol * max(1.0, abs(total)):
            shrink_count += 1
            if shrink_count >= 2:
                return total
        else:
            shrink_count = 0
        prev_piece = piece
        hi = lo
    return INF
