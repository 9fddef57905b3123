"""The time map T(r, lambda) and its r-derivative.

For the problem -(phi(u'))' = lambda f(u), u(+-L) = 0, the half-length of
the positive symmetric solution with u(0) = r, u'(0) = 0 is

    T(r, lambda) = int_0^r du / PhiInv(lambda [F(r) - F(u)]),

defined for r in the interval I whose right endpoint r* depends on the
finiteness of B and C:

    B = +inf                          I = (0, A)
    B < +inf, C = +inf                I = (0, FInv(B/lambda)]
    B, C < +inf, lambda <= B/C        I = (0, A)
    B, C < +inf, lambda >  B/C        I = (0, FInv(B/lambda)]

Solutions of the boundary value problem on (-L, L) correspond exactly to
roots of T(r, lambda) = L.

Numerics.  The integrand has a universal square-root singularity at u = r
(since F(r) - F(u) ~ f(r)(r - u)); the substitution u = r(1 - t^2) removes
it exactly, after which panel-doubling Gauss-Legendre converges fast.  At
the closed endpoint r = r* the u -> 0 end has PhiInv(B) = +inf; the
integrand tends to zero there and is evaluated as zero once
lambda [F(r)-F(u)] >= B(1 - 1e-14).

The derivative dT/dr uses the combined single-integral form

    T'(r) = int_0^1 H(s) / (PhiInv(.)^3 phi'(PhiInv(.))) ds,
    H(s)  = PhiInv(.)^2 phi'(PhiInv(.)) - lambda r [f(r) - s f(rs)],

with the same endpoint substitution; the two-term split form subtracts two
divergent integrals and is never used numerically.  Both f(r) - s f(rs)
and F(r) - F(rs) are evaluated by local quadrature when s is close to 1,
so H keeps full relative accuracy where both of its parts vanish.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .catalog import Case, ProblemInstance
from .errors import DomainError, UnsupportedFamilyError
from .numerics import INF, gl_nodes, integrate_adaptive, is_finite

_ASYMPTOTIC_R = 1e-8     # below this, quadrature is replaced by the r->0 law
_ENDPOINT_CLAMP = 1.0 - 1e-14


class Branch(enum.Enum):
    WHOLE = "whole_(0,A)"
    UP_TO_BLOWUP = "up_to_blowup"


@dataclass(frozen=True)
class TimeMapDomain:
    """The interval I = (0, right) with its closure flag."""

    right: float
    right_closed: bool
    branch: Branch

    def contains(self, r: float) -> bool:
        if r <= 0.0:
            return False
        if self.right_closed:
            return r <= self.right * (1.0 + 1e-12)
        return r < self.right


@dataclass(frozen=True)
class TimeMapSample:
    r: float
    lam: float
    t_value: float
    est_error: float
    asymptotic: bool = False


def domain(p: ProblemInstance, lam: float) -> TimeMapDomain:
    """The definition interval of T(., lambda), by the four-branch table."""
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    B = p.phi.b_constant
    A = p.f.endpoint_a
    C = p.f.c_constant
    if not is_finite(B):
        return TimeMapDomain(right=A, right_closed=False, branch=Branch.WHOLE)
    if not is_finite(C):
        return TimeMapDomain(right=p.f.capital_f_inv(B / lam),
                             right_closed=True, branch=Branch.UP_TO_BLOWUP)
    if lam <= B / C:
        return TimeMapDomain(right=A, right_closed=False, branch=Branch.WHOLE)
    return TimeMapDomain(right=p.f.capital_f_inv(B / lam),
                         right_closed=True, branch=Branch.UP_TO_BLOWUP)


def _check_r(p: ProblemInstance, r: float, lam: float) -> TimeMapDomain:
    dom = domain(p, lam)
    if not dom.contains(r):
        raise DomainError(
            f"r={r!r} outside I=(0, {dom.right!r}"
            + ("]" if dom.right_closed else ")") + f" at lambda={lam!r}")
    return dom


def left_asymptotic_coefficient(p: ProblemInstance, lam: float) -> float:
    """J such that T(r) ~ J * r^((1-alpha)/2) as r -> 0.

    J = int_0^1 sqrt(phi'(0)(alpha+1) / (2 lambda E (1 - s^(alpha+1)))) ds,
    evaluated with the s = 1 - t^2 substitution.
    """
    if p.f.left_order is None:
        raise UnsupportedFamilyError(
            f"{p.f.label}: no small-u order (alpha, E) available")
    alpha, E = p.f.left_order
    phip0 = p.phi.deriv_at_zero()
    a1 = alpha + 1.0

    def integrand(t):
        s = 1.0 - t * t
        return 2.0 * t * np.sqrt(phip0 * a1 / (2.0 * lam * E * (1.0 - s ** a1)))

    val, _ = integrate_adaptive(integrand, 0.0, 1.0, tol=1e-11)
    return val


def left_limit(p: ProblemInstance, lam: float) -> float:
    """lim_{r->0} T(r, lambda) from the small-u behaviour of f.

    With f(u) ~ E u^alpha: 0 for alpha < 1, (pi/2) sqrt(phi'(0)/(lambda E))
    for alpha = 1, +inf for alpha > 1.  Equivalently, via f'(0): a finite
    positive slope gives (pi/2) sqrt(phi'(0)/(lambda f'(0))); zero slope
    with the superlinearity condition gives +inf.
    """
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    phip0 = p.phi.deriv_at_zero()
    if p.f.left_order is not None:
        alpha, E = p.f.left_order
        if alpha < 1.0:
            return 0.0
        if alpha == 1.0:
            return (math.pi / 2.0) * math.sqrt(phip0 / (lam * E))
        return INF
    fp0 = p.f.f_prime_at_zero
    if fp0 is None or (isinstance(fp0, float) and math.isnan(fp0)):
        raise UnsupportedFamilyError(
            f"{p.f.label}: neither (alpha, E) nor f'(0) known")
    if fp0 == INF:
        return 0.0
    if fp0 > 0.0:
        return (math.pi / 2.0) * math.sqrt(phip0 / (lam * fp0))
    from .catalog import Verdict
    if p.conditions.superlinearity is Verdict.PASS:
        return INF
    raise UnsupportedFamilyError(
        f"{p.f.label}: f'(0)=0 without certified superlinearity")


def time_map(p: ProblemInstance, r: float, lam: float,
             tol: float = 1e-9) -> TimeMapSample:
    """T(r, lambda) with an error estimate no larger than ``tol``."""
    if tol < 1e-12:
        raise DomainError("tol below 1e-12 is not supported")
    _check_r(p, r, lam)
    if r < _ASYMPTOTIC_R:
        alpha, _E = p.f.left_order if p.f.left_order else (1.0, None)
        j = left_asymptotic_coefficient(p, lam)
        t_val = j * r ** ((1.0 - alpha) / 2.0)
        return TimeMapSample(r=r, lam=lam, t_value=t_val, est_error=math.nan,
                             asymptotic=True)

    B = p.phi.b_constant
    arg_cap = B * _ENDPOINT_CLAMP if is_finite(B) else INF

    # u = r(1 - tau^4): removes the sqrt endpoint singularity (any tau^2
    # would do) and clusters nodes at u ~ r where F can vary sharply
    def integrand(tau):
        gap = r * tau ** 4
        arg = lam * p.f.capital_f_gap(r, gap)
        out = np.zeros_like(arg)
        live = (arg > 0.0) & (arg < arg_cap)  # both ends tend to 0
        z = p.phi.capital_phi_inv(arg[live])
        out[live] = 4.0 * r * tau[live] ** 3 / z
        return out

    val, err = integrate_adaptive(integrand, 0.0, 1.0, tol=tol)
    return TimeMapSample(r=r, lam=lam, t_value=val, est_error=err)


def time_map_derivative(p: ProblemInstance, r: float, lam: float,
                        tol: float = 1e-9) -> float:
    """dT/dr at an interior point of I, by the combined integrand."""
    dom = _check_r(p, r, lam)
    if dom.right_closed and r > dom.right * (1.0 - 1e-12):
        raise DomainError("derivative needs r in the interior of I")

    gx, gw = gl_nodes(8)

    def f_weighted_diff(gap):
        """f(r) - s f(rs) at s = 1 - gap/r, as (f(r) - f(r-gap)) + (gap/r) f(r-gap)."""
        u_s = r - gap
        f_us = p.f.eval(u_s)
        out = np.empty_like(gap)
        near = gap < p.f.near_gap_threshold(r)
        if np.any(near):
            gn = gap[near]
            nodes = r - gn[:, None] * (1.0 - gx[None, :])
            dvals = p.f.deriv(nodes.ravel()).reshape(nodes.shape)
            out[near] = gn * (dvals @ gw) + (gn / r) * f_us[near]
        far = ~near
        out[far] = (p.f.eval(r) - f_us[far]) + (gap[far] / r) * f_us[far]
        return out

    def integrand(tau):
        gap = r * tau ** 4  # r - rs, exact; s = 1 - tau^4
        arg = lam * p.f.capital_f_gap(r, gap)
        out = np.zeros_like(arg)
        live = arg > 0.0
        z = p.phi.capital_phi_inv(arg[live])
        pp = p.phi.deriv(z)
        h = z * z * pp - lam * r * f_weighted_diff(gap[live])
        out[live] = 4.0 * tau[live] ** 3 * h / (z ** 3 * pp)
        return out

    val, _ = integrate_adaptive(integrand, 0.0, 1.0, tol=tol)
    return val


def blow_up_radius(p: ProblemInstance, lam: float) -> float:
    """r(lambda) = FInv(B/lambda) on (B/C, +inf); gradient blow-up locus."""
    B = p.phi.b_constant
    if not is_finite(B):
        raise DomainError("blow-up curve requires B < +inf")
    if lam <= p.b_over_c():
        raise DomainError(
            f"blow-up curve defined for lambda > B/C = {p.b_over_c()!r}, "
            f"got {lam!r}")
    return p.f.capital_f_inv(B / lam)


def blow_up_exists(p: ProblemInstance) -> bool:
    return is_finite(p.phi.b_constant)


_CASE_BLOWUP = {Case.IV, Case.V, Case.VI}
