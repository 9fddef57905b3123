"""Independent verification oracle: direct integration of the profile ODE.

The positive symmetric solution with u(0) = r, u'(0) = 0 satisfies

    u' = phiInv(v),    v' = -lambda f(u),    v = phi(u'),

and conserves the energy  Phi(u') + lambda F(u) = lambda F(r).  Integrating
in (u, v) rather than (u, u') keeps the system regular when the flux range
is bounded: v' is smooth while u'' would involve 1/phi'(u') which
degenerates as |u'| -> infinity.  The half-length to the event u = 0 is an
estimate of T(r, lambda) obtained without any quadrature, which makes it a
genuinely independent cross-check of the time-map module.

Termination:
* ``hit_zero``      u reached 0 (event located on the dense output),
* ``blow_up_guard`` |v| entered the guard band (1 - 1e-9) sup phi,
* ``step_limit``    the x budget ran out first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .catalog import ProblemInstance
from .errors import DomainError
from .numerics import INF, is_finite

_GUARD_BAND = 1.0 - 1e-9


@dataclass(frozen=True)
class Trajectory:
    """Accepted integration steps (x, u, v) plus termination bookkeeping."""

    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    half_length: float | None
    max_energy_drift: float
    terminated: str

    def uprime(self, p: ProblemInstance) -> np.ndarray:
        return np.asarray(p.phi.inv(self.v), dtype=float)


def _x_budget(p: ProblemInstance, r: float, lam: float) -> float:
    """Generous upper bound for the half-length (scale of the energy orbit)."""
    z = p.phi.capital_phi_inv(min(lam * p.f.capital_f(r) / 2.0,
                                  p.phi.b_constant * (1 - 1e-12)
                                  if is_finite(p.phi.b_constant) else INF))
    z = float(z)
    if not math.isfinite(z) or z <= 0:
        z = 1e-6
    return 200.0 * max(1.0, r / z)


def shoot(p: ProblemInstance, r: float, lam: float,
          step_tol: float = 1e-10) -> Trajectory:
    """Integrate from the crest u(0)=r, u'(0)=0 until u = 0.

    ``step_tol`` is the local error tolerance of the embedded-pair
    integrator (DOP853).  The terminal events are located by root-finding
    on the dense output, so ``half_length`` inherits the step tolerance.
    """
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if not (0.0 < r < p.f.endpoint_a):
        raise DomainError(f"need 0 < r < A, got r={r!r}")

    sup_phi = p.phi.phi_range_bound
    v_guard = _GUARD_BAND * sup_phi if is_finite(sup_phi) else INF

    def rhs(_x, y):
        u, v = y
        if is_finite(sup_phi):
            v = max(v, -sup_phi * (1.0 - 1e-12))
        up = float(p.phi.inv(v))
        return (up, -lam * float(p.f.eval(max(u, 0.0))))

    def ev_zero(_x, y):
        return y[0]
    ev_zero.terminal = True
    ev_zero.direction = -1.0

    events = [ev_zero]
    if is_finite(sup_phi):
        def ev_guard(_x, y):
            return y[1] + v_guard
        ev_guard.terminal = True
        ev_guard.direction = -1.0
        events.append(ev_guard)

    sol = solve_ivp(rhs, (0.0, _x_budget(p, r, lam)), (r, 0.0),
                    method="DOP853", rtol=step_tol,
                    atol=step_tol * 1e-2, events=events, dense_output=False)

    x, u, v = sol.t, sol.y[0], sol.y[1]
    if sol.status == 1:
        if len(sol.t_events[0]):
            terminated = "hit_zero"
            half = float(sol.t_events[0][0])
            x = np.append(x, half)
            u = np.append(u, 0.0)
            v = np.append(v, float(sol.y_events[0][0][1]))
        else:
            terminated = "blow_up_guard"
            half = None
    else:
        terminated = "step_limit"
        half = None

    lamFr = lam * float(p.f.capital_f(r))
    keep = u >= 0.0
    drift = np.abs(np.asarray(p.phi.capital_phi(p.phi.inv(v[keep])))
                   + lam * np.asarray(p.f.capital_f(u[keep])) - lamFr)
    return Trajectory(x=x, u=u, v=v, half_length=half,
                      max_energy_drift=float(drift.max()) if drift.size else 0.0,
                      terminated=terminated)


def energy_residual(traj: Trajectory, p: ProblemInstance, lam: float,
                    r: float) -> float:
    """max |Phi(u') + lambda F(u) - lambda F(r)| / (lambda F(r))."""
    return traj.max_energy_drift / (lam * float(p.f.capital_f(r)))


def backward_recovery(traj: Trajectory, p: ProblemInstance, lam: float,
                      step_tol: float = 1e-10) -> float:
    """Re-integrate from (half_length, 0, v_end) back to x = 0; returns u(0).

    A symmetry self-check: the recovered value should equal the original
    crest height r.
    """
    if traj.half_length is None:
        raise DomainError("trajectory did not reach u = 0")
    sup_phi = p.phi.phi_range_bound

    def rhs(_x, y):
        u, v = y
        if is_finite(sup_phi):
            v = max(v, -sup_phi * (1.0 - 1e-12))
        return (float(p.phi.inv(v)), -lam * float(p.f.eval(max(u, 0.0))))

    sol = solve_ivp(rhs, (traj.half_length, 0.0), (0.0, float(traj.v[-1])),
                    method="DOP853", rtol=step_tol, atol=step_tol * 1e-2)
    return float(sol.y[0][-1])
