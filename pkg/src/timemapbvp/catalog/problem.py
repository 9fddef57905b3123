"""Problem instances: a (phi, f) pair, its six-case label and condition report.

The six cases are the finiteness pattern of (B, A, C):

    B = +inf:  A = +inf -> I;   A < +inf: C = +inf -> II, C < +inf -> III
    B < +inf:  A = +inf -> IV;  A < +inf: C = +inf -> V,  C < +inf -> VI

The structural conditions are checked on sampling grids only; verdicts are
therefore numerical evidence, not proofs.  A margin within tolerance of
zero counts as an equality point; the "strict except finitely many points"
clause is approximated by allowing at most max(2, 1%) equality points on
the grid (the exceptional set is never pinned down analytically, so this
grid heuristic is explicitly a heuristic).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..errors import FamilyError
from ..numerics import INF, is_finite
from .nonlinearity import NonlinearityFamily
from .phi import PhiFamily


class Case(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ConditionReport:
    """Grid-based verdicts for the structural inequalities.

    ``*_strict_count`` / ``*_equal_count`` record how many grid points were
    strictly inside versus within tolerance of equality; ``strictness`` is
    the combined requirement that at least one of the two monotonicity
    conditions is strict away from a finite exceptional set.
    """

    phi_concavity: Verdict
    phi_strict_count: int
    phi_equal_count: int
    superlinearity: Verdict
    f_strict_count: int
    f_equal_count: int
    strictness: bool
    f_condition: Verdict
    limit_condition: Verdict
    sample_grid: str
    dropped_points: int = 0

    def monotone_time_map(self) -> bool:
        """True when the report certifies T' < 0 (uniqueness machinery)."""
        return (self.phi_concavity is Verdict.PASS
                and self.superlinearity is Verdict.PASS
                and self.strictness)


def _few(n_points: int) -> int:
    return max(2, n_points // 100)


def _margin_verdict(margin: np.ndarray, scale: np.ndarray):
    """Classify sign of ``margin`` (>= 0 required) against a relative band."""
    tol = 1e-9 * scale
    fail = margin < -tol
    equal = ~fail & (margin <= tol)
    strict = margin > tol
    return int(fail.sum()), int(equal.sum()), int(strict.sum())


def check_conditions(phi: PhiFamily, f: NonlinearityFamily,
                     n_grid: int = 400) -> ConditionReport:
    """Evaluate the structural conditions on log-spaced grids.

    Grids: z in [1e-6, 1e3] for the flux inequality; u covering (0, A)
    with geometric refinement toward a finite A.  Points where f overflows
    are dropped and counted.
    """
    if n_grid < 100:
        raise FamilyError("condition grid needs at least 100 points")

    z = np.geomspace(1e-6, 1e3, n_grid)
    lhs = z * phi.deriv2(z)
    scale = np.abs(lhs) + np.abs(z * phi.deriv(z))
    phi_fail, phi_eq, phi_strict = _margin_verdict(-lhs, scale)
    phi_verdict = Verdict.FAIL if phi_fail else Verdict.PASS

    a = f.endpoint_a
    if is_finite(a):
        left = np.geomspace(1e-8, a / 2.0, n_grid // 2)
        right = a - np.geomspace(a * 1e-8, a / 2.0, n_grid - n_grid // 2)[::-1]
        u = np.concatenate([left, right])
    else:
        u = np.geomspace(1e-8, 1e3, n_grid)
    with np.errstate(over="ignore", invalid="ignore"):
        fu = f.eval(u)
        dfu = f.deriv(u)
        Fu = f.capital_f(u)
    ok = np.isfinite(fu) & np.isfinite(dfu) & np.isfinite(Fu)
    dropped = int((~ok).sum())
    u, fu, dfu, Fu = u[ok], fu[ok], dfu[ok], Fu[ok]

    margin_f = dfu * u - fu
    f_fail, f_eq, f_strict = _margin_verdict(margin_f, np.abs(dfu * u) + np.abs(fu))
    f_verdict = Verdict.FAIL if f_fail else Verdict.PASS

    strictness = False
    if phi_verdict is Verdict.PASS and f_verdict is Verdict.PASS:
        strictness = (phi_eq <= _few(len(z))) or (f_eq <= _few(len(u)))

    with np.errstate(over="ignore", invalid="ignore"):
        lhs_fc = dfu * Fu
        rhs_fc = fu * fu
        prod_ok = np.isfinite(lhs_fc) & np.isfinite(rhs_fc)
    dropped += int((~prod_ok).sum())
    fc_fail, fc_eq, fc_strict = _margin_verdict(
        rhs_fc[prod_ok] - lhs_fc[prod_ok],
        np.abs(lhs_fc[prod_ok]) + np.abs(rhs_fc[prod_ok]))
    if fc_fail:
        fc_verdict = Verdict.FAIL
    elif fc_eq > _few(len(u)):
        fc_verdict = Verdict.INDETERMINATE
    else:
        fc_verdict = Verdict.PASS

    limit_verdict = _limit_condition(phi, f)

    grid_desc = (f"z: 400 log points [1e-6,1e3]; u: {len(u)} points on (0,A), "
                 f"{dropped} dropped")
    return ConditionReport(
        phi_concavity=phi_verdict, phi_strict_count=phi_strict,
        phi_equal_count=phi_eq, superlinearity=f_verdict,
        f_strict_count=f_strict, f_equal_count=f_eq, strictness=strictness,
        f_condition=fc_verdict, limit_condition=limit_verdict,
        sample_grid=grid_desc, dropped_points=dropped)


def _limit_condition(phi: PhiFamily, f: NonlinearityFamily) -> Verdict:
    """Vanishing of phi(PhiInv(lambda t)) / f(FInv(t)) as t -> +inf.

    A bounded flux range makes the numerator bounded while the denominator
    blows up, so the condition holds analytically; the numeric sampling is
    only needed for unbounded-range fluxes.
    """
    if is_finite(phi.phi_range_bound):
        return Verdict.PASS
    if is_finite(f.endpoint_a) or is_finite(f.c_constant):
        return Verdict.PASS  # t stays below C; the limit clause is vacuous
    ratios_ok = True
    for lam in (0.5, 1.0, 2.0):
        seq = []
        for expo in range(2, 9):
            t = 10.0 ** expo
            try:
                denom = f.eval(f.capital_f_inv(t))
            except Exception:
                break
            if not np.isfinite(denom) or denom <= 0:
                break
            num = float(phi.eval(phi.capital_phi_inv(lam * t)))
            seq.append(num / denom)
        if len(seq) < 3:
            return Verdict.INDETERMINATE
        if not (seq[-1] < 1e-3 and seq[-1] <= seq[0]):
            ratios_ok = False
    return Verdict.PASS if ratios_ok else Verdict.FAIL


def classify_case(phi: PhiFamily, f: NonlinearityFamily) -> Case:
    """Six-case label from the finiteness of (B, A, C)."""
    B, A, C = phi.b_constant, f.endpoint_a, f.c_constant
    if not is_finite(A) and is_finite(C):
        raise FamilyError(
            f"inconsistent family {f.label}: A = +inf forces C = +inf "
            f"but C = {C!r}")
    if not is_finite(B):
        if not is_finite(A):
            return Case.I
        return Case.II if not is_finite(C) else Case.III
    if not is_finite(A):
        return Case.IV
    return Case.V if not is_finite(C) else Case.VI


@dataclass(frozen=True)
class ProblemInstance:
    """A (phi, f) pair with its case label and condition report."""

    phi: PhiFamily
    f: NonlinearityFamily
    case_id: Case
    conditions: ConditionReport

    @property
    def label(self) -> str:
        return f"({self.phi.label}, {self.f.label})"

    def b_over_c(self) -> float:
        """B/C in extended arithmetic (0 when C = +inf)."""
        if not is_finite(self.phi.b_constant):
            return INF
        if not is_finite(self.f.c_constant):
            return 0.0
        return self.phi.b_constant / self.f.c_constant


def make_problem(phi: PhiFamily, f: NonlinearityFamily,
                 n_grid: int = 400) -> ProblemInstance:
    return ProblemInstance(phi=phi, f=f, case_id=classify_case(phi, f),
                           conditions=check_conditions(phi, f, n_grid=n_grid))
