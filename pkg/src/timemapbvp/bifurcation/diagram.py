"""Bifurcation diagrams: the solved branch r(lambda) of T(r, lambda) = L.

For a fixed half-length L the solution count at lambda is 1 exactly when

    g(lambda) < L < lim_{r -> 0} T(r, lambda),

both strictly: the lower endpoint is the (non-classical) blow-up or
singular limit, the upper is the linearised threshold.  With f'(0) > 0 the
upper bound equals L exactly at lambda_1 = (phi'(0)/f'(0)) (pi/2L)^2, so
the branch lives in (0, lambda_1) and accumulates at (lambda_1, 0).

The interval decomposition comes from the crossings of g = L (named per
the governing pattern) and is verified by independent probes: inside each
interval, roots are hunted by bisection on T itself, which either finds
the unique r (T' < 0) or proves absence by bracketing failure at both
endpoints of the candidate range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..catalog import Case, ProblemInstance
from ..errors import ClassificationError, DomainError
from ..gfunction import GProfile, find_extrema, g_lambda, solve_g_crossings
from ..numerics import INF, is_finite, solve_monotone
from ..timemap import blow_up_radius, domain, left_limit, time_map
from .patterns import (LAM1, IntervalSpec, PATTERNS, cap_at_lambda1,
                       detect_regime, expected_pattern, pattern_key)


@dataclass(frozen=True)
class DiagramSpec:
    problem: ProblemInstance
    half_length: float
    lambda1: float | None = None

    @staticmethod
    def make(problem: ProblemInstance, half_length: float) -> "DiagramSpec":
        if half_length <= 0:
            raise DomainError("half-length L must be positive")
        fp0 = problem.f.f_prime_at_zero
        lam1 = None
        if fp0 is not None and is_finite(fp0) and fp0 > 0.0:
            lam1 = (problem.phi.deriv_at_zero() / fp0) \
                * (math.pi / (2.0 * half_length)) ** 2
        return DiagramSpec(problem=problem, half_length=half_length,
                           lambda1=lam1)


@dataclass(frozen=True)
class SolveResult:
    status: str                 # "unique" | "none" | "degenerate" | "refused"
    r: float | None = None
    t_value: float | None = None


@dataclass(frozen=True)
class DiagramInterval:
    lo: float
    hi: float
    count: int
    lo_closed: bool
    hi_closed: bool
    lo_name: str
    hi_name: str

    def interior_points(self, n: int = 3):
        """Geometric probe points strictly inside the interval."""
        lo = self.lo if self.lo > 0 else min(self.hi, 1.0) * 1e-3
        if self.lo == self.hi:
            return []
        hi = self.hi if is_finite(self.hi) else max(lo, 1.0 if self.lo == 0 else self.lo) * 1e3
        if self.lo > 0:
            lo = self.lo
        pts = np.geomspace(lo * (hi / lo) ** 0.02, hi * (lo / hi) ** 0.02, n)
        return [float(x) for x in pts]


@dataclass
class BifurcationDiagram:
    spec: DiagramSpec
    profile: GProfile
    regime: str
    thresholds: dict[str, float]
    degenerate: dict[str, bool]
    intervals: list[DiagramInterval]
    branch: list[tuple[float, float, bool]] = field(default_factory=list)
    blowup_curve: list[tuple[float, float]] = field(default_factory=list)


def solve_r(p: ProblemInstance, lam: float, L: float, tol: float = 1e-9,
            force: bool = False, profile: GProfile | None = None) -> SolveResult:
    """The unique r with T(r, lambda) = L, or a definite absence verdict.

    Requires the monotonicity certificate (T' < 0); without it the solve
    refuses unless forced, and a flat time map at level L is reported as
    degenerate (infinitely many solutions) rather than as a root.
    """
    if lam <= 0 or L <= 0:
        raise DomainError("lambda and L must be positive")
    dom = domain(p, lam)
    if not p.conditions.monotone_time_map():
        probes = [dom.right * frac for frac in (0.2, 0.5, 0.8)]
        vals = [time_map(p, r, lam, tol).t_value for r in probes]
        spread = max(vals) - min(vals)
        if spread <= 10 * tol * max(1.0, abs(vals[0])):
            if abs(vals[1] - L) <= 10 * tol * max(1.0, L):
                return SolveResult(status="degenerate")
            return SolveResult(status="none")
        if not force:
            return SolveResult(status="refused")

    g_val = g_lambda(p, lam)
    t_left = left_limit(p, lam)
    if not (g_val < L < t_left):
        return SolveResult(status="none")

    # bracket: T decreasing in r, so walk r_hi toward the right endpoint
    # until T < L and r_lo toward 0 until T > L
    if not is_finite(dom.right):
        r_hi = 1.0
        while time_map(p, r_hi, lam, tol).t_value >= L:
            r_hi *= 4.0
            if r_hi > 1e150:
                return SolveResult(status="none")
    else:
        r_hi = dom.right * (1.0 - 1e-9)
        for _ in range(60):
            if time_map(p, r_hi, lam, tol).t_value < L:
                break
            gap_next = (dom.right - r_hi) / 8.0
            if not dom.right_closed and gap_next < dom.right * 1e-13:
                # T(r_hi) > L while lim_{r->A} T = g < L certifies a unique
                # root between r_hi and A, below float resolution of A - r
                return SolveResult(status="unique", r=None)
            r_hi = dom.right - gap_next
        else:
            return SolveResult(status="none")
    r_lo = r_hi / 2.0
    for _ in range(200):
        if time_map(p, r_lo, lam, tol).t_value > L:
            break
        r_lo /= 2.0
        if r_lo < 1e-12 * dom.right:
            return SolveResult(status="none")
    root = solve_monotone(lambda r: -time_map(p, r, lam, tol).t_value, -L,
                          r_lo, r_hi, xtol=1e-280, rtol=1e-13)
    return SolveResult(status="unique", r=root,
                       t_value=time_map(p, root, lam, tol).t_value)


def thresholds_for_L(profile: GProfile, L: float, f_prime0: float,
                     phi_prime0: float, p: ProblemInstance | None = None):
    """Named lambda-thresholds for the (g-type, L) regime.

    Crossings of g = L are computed on each monotone segment of the
    profile, sorted ascending and zipped with the regime's names; lambda_1
    is appended when f'(0) > 0.  Tangency roots (L at a local extreme
    value) come back flagged degenerate.  Returns
    ``(regime_label, {name: lambda}, {name: degenerate}, {name: increasing})``.
    """
    key = pattern_key(profile.case_id.value, profile.g_type)
    if key is None:
        raise ClassificationError(
            f"no governing pattern for case {profile.case_id.value} "
            f"type {profile.g_type}")
    positive = is_finite(f_prime0) and f_prime0 > 0.0
    regime, names, _ = expected_pattern(key, L, profile.thresholds, positive)
    crossing_names = [n for n in names if n != LAM1]
    crossings = solve_g_crossings(p, profile, L) if p is not None else []
    if len(crossings) != len(crossing_names):
        raise ClassificationError(
            f"regime {regime.label!r} expects {len(crossing_names)} "
            f"crossings of g = L, found {len(crossings)}")
    values = {}
    degenerate = {}
    increasing = {}
    for name, (lam, degen, inc) in zip(crossing_names, crossings):
        values[name] = lam
        degenerate[name] = degen
        increasing[name] = inc
    if positive:
        lam1 = (phi_prime0 / f_prime0) * (math.pi / (2.0 * L)) ** 2
        if values and lam1 <= max(values.values()):
            raise ClassificationError(
                "lambda_1 is not above the g-crossings; "
                "inconsistent diagram inputs")
        values[LAM1] = lam1
        degenerate[LAM1] = False
        increasing[LAM1] = False
    return regime.label, values, degenerate, increasing


def build_diagram(spec: DiagramSpec, lambda_grid: int = 24,
                  tol: float = 1e-8,
                  profile: GProfile | None = None) -> BifurcationDiagram:
    """Assemble the diagram for one L: thresholds, intervals, branch, curves.

    ``lambda_grid`` is the number of branch samples per one-solution
    interval.  Interval counts are established by direct evaluation of the
    existence criterion at interior probes and cross-checked by actually
    solving T(r, lambda) = L there.
    """
    p = spec.problem
    L = spec.half_length
    prof = profile if profile is not None else find_extrema(p)
    key = pattern_key(prof.case_id.value, prof.g_type)
    if key is None:
        raise ClassificationError(
            f"no governing pattern for case {prof.case_id.value} "
            f"type {prof.g_type}")
    fp0 = p.f.f_prime_at_zero
    regime_label, values, degenerate, _inc = thresholds_for_L(
        prof, L, fp0, p.phi.deriv_at_zero(), p=p)
    positive = is_finite(fp0) and fp0 > 0.0
    _, names, interval_specs = expected_pattern(key, L, prof.thresholds,
                                                positive)

    intervals = []
    for ispec in interval_specs:
        lo = 0.0 if ispec.lo == "0" else values[ispec.lo]
        hi = INF if ispec.hi == "inf" else values[ispec.hi]
        intervals.append(DiagramInterval(
            lo=lo, hi=hi, count=ispec.count, lo_closed=ispec.lo_closed,
            hi_closed=ispec.hi_closed, lo_name=ispec.lo, hi_name=ispec.hi))

    # verify each interval's count at an interior probe
    for iv in intervals:
        if iv.lo == iv.hi:
            continue
        for lam in iv.interior_points(1):
            res = solve_r(p, lam, L, tol=tol, profile=prof)
            found = 1 if res.status == "unique" else 0
            if res.status == "degenerate":
                raise ClassificationError("degenerate instance; "
                                          "no isolated-solution diagram")
            if found != iv.count:
                raise ClassificationError(
                    f"interval ({iv.lo_name}, {iv.hi_name}) expected count "
                    f"{iv.count}, probe at lambda={lam!r} found {found}")

    diagram = BifurcationDiagram(spec=spec, profile=prof,
                                 regime=regime_label, thresholds=values,
                                 degenerate=degenerate, intervals=intervals)

    # branch sampling on one-solution intervals
    for iv in intervals:
        if iv.count != 1 or iv.lo == iv.hi:
            continue
        for lam in _branch_lambdas(iv, lambda_grid):
            res = solve_r(p, lam, L, tol=tol, profile=prof)
            if res.status == "unique" and res.r is not None:
                classical = True
                if is_finite(p.phi.b_constant) and lam > p.b_over_c():
                    r_star = blow_up_radius(p, lam)
                    classical = res.r < r_star * (1.0 - 1e-6)
                diagram.branch.append((lam, res.r, classical))
        # endpoint markers where the branch meets the blow-up curve
        for name in (iv.lo_name, iv.hi_name):
            if name in ("0", "inf", LAM1) or degenerate.get(name):
                continue
            lam_x = values[name]
            if is_finite(p.phi.b_constant) and lam_x > p.b_over_c():
                diagram.branch.append((lam_x, blow_up_radius(p, lam_x), False))
    diagram.branch.sort(key=lambda t: t[0])

    if is_finite(p.phi.b_constant):
        lam_lo = max(p.b_over_c() * 1.0001, min(values.values(), default=1.0) / 10.0)
        lam_hi = max(values.values(), default=1.0) * 10.0
        if lam_hi > lam_lo:
            for lam in np.geomspace(lam_lo, lam_hi, 64):
                diagram.blowup_curve.append((float(lam),
                                             blow_up_radius(p, float(lam))))
    return diagram


def _branch_lambdas(iv: DiagramInterval, n: int):
    lo, hi = iv.lo, iv.hi
    if lo == 0.0:
        lo = hi / 100.0 if is_finite(hi) else 1e-2
    if not is_finite(hi):
        hi = lo * 100.0
    lo *= 1.02
    hi *= 0.98
    if hi <= lo:
        return []
    return [float(x) for x in np.geomspace(lo, hi, n)]


@dataclass(frozen=True)
class PatternVerdict:
    ok: bool
    pattern: str | None
    regime: str | None
    mismatches: tuple[str, ...]

    def report(self) -> str:
        head = "PASS" if self.ok else ("NO-THEOREM" if self.pattern is None
                                       else "FAIL")
        lines = [f"{head}: pattern={self.pattern} regime={self.regime}"]
        lines += [f"  - {m}" for m in self.mismatches]
        return "\n".join(lines)


def verify_pattern(d: BifurcationDiagram, probes_per_interval: int = 3,
                   tol: float = 1e-8) -> PatternVerdict:
    """Check the diagram against the encoded exact-multiplicity pattern.

    Verifies: the regime resolves, the named thresholds exist in ascending
    order (all below lambda_1 when present), and every interval's count is
    reproduced by independent bisection solves at interior probes.
    """
    p = d.spec.problem
    L = d.spec.half_length
    key = pattern_key(d.profile.case_id.value, d.profile.g_type)
    if key is None:
        return PatternVerdict(ok=False, pattern=None, regime=None,
                              mismatches=("no governing pattern for "
                                          f"{d.profile.case_id.value}-"
                                          f"{d.profile.g_type}",))
    mismatches = []
    fp0 = p.f.f_prime_at_zero
    positive = is_finite(fp0) and fp0 > 0.0
    regime, names, interval_specs = expected_pattern(
        key, L, d.profile.thresholds, positive)
    if regime.label != d.regime:
        mismatches.append(f"regime {d.regime!r} != expected {regime.label!r}")
    missing = [n for n in names if n not in d.thresholds]
    if missing:
        mismatches.append(f"missing thresholds: {missing}")
    else:
        seq = [d.thresholds[n] for n in names]
        if any(b <= a for a, b in zip(seq, seq[1:])):
            mismatches.append(f"thresholds not ascending: {dict(zip(names, seq))}")
        for n in names:
            if n != LAM1 and abs(g_lambda(p, d.thresholds[n]) - L) \
                    > 1e-5 * max(1.0, L) and not d.degenerate.get(n):
                mismatches.append(f"g({n}) != L")
    if len(interval_specs) != len(d.intervals):
        mismatches.append(
            f"{len(d.intervals)} intervals, expected {len(interval_specs)}")
    if not mismatches:
        for ispec, iv in zip(interval_specs, d.intervals):
            if ispec.count != iv.count:
                mismatches.append(
                    f"interval ({ispec.lo},{ispec.hi}): count {iv.count} "
                    f"!= expected {ispec.count}")
                break
            if iv.lo == iv.hi:
                continue
            for lam in iv.interior_points(probes_per_interval):
                res = solve_r(p, lam, L, tol=tol, profile=d.profile)
                found = 1 if res.status == "unique" else 0
                if found != ispec.count:
                    mismatches.append(
                        f"probe lambda={lam!r} in ({ispec.lo},{ispec.hi}): "
                        f"count {found} != expected {ispec.count}")
                    break
            else:
                continue
            break
    return PatternVerdict(ok=not mismatches, pattern=key,
                          regime=regime.label, mismatches=tuple(mismatches))


@dataclass(frozen=True)
class MonotonicityReport:
    name_directions: dict[str, str]
    ok: bool
    details: tuple[str, ...]


def threshold_monotonicity_check(p: ProblemInstance, L_grid,
                                 profile: GProfile | None = None) -> MonotonicityReport:
    """Recompute thresholds across an L-grid and check monotone directions.

    Crossings on decreasing segments of g move left as L grows (strictly
    decreasing in L); crossings on increasing segments move right; lambda_1
    is strictly decreasing.  The grid must stay inside one regime; if it
    does not, it is split and each piece is checked separately.
    """
    prof = profile if profile is not None else find_extrema(p)
    key = pattern_key(prof.case_id.value, prof.g_type)
    fp0 = p.f.f_prime_at_zero
    positive = is_finite(fp0) and fp0 > 0.0
    seqs: dict[str, list[float]] = {}
    incs: dict[str, bool] = {}
    regimes = []
    for L in L_grid:
        label, values, _deg, inc = thresholds_for_L(
            prof, L, fp0, p.phi.deriv_at_zero(), p=p)
        regimes.append(label)
        for n, v in values.items():
            seqs.setdefault(n, []).append(v)
            if n != LAM1:
                incs[n] = inc[n]
    details = []
    if len(set(regimes)) > 1:
        details.append(f"grid crosses regimes: {sorted(set(regimes))}")
        boundary = next(i for i in range(1, len(regimes))
                        if regimes[i] != regimes[i - 1])
        left = threshold_monotonicity_check(p, list(L_grid)[:boundary], prof)
        right = threshold_monotonicity_check(p, list(L_grid)[boundary:], prof)
        return MonotonicityReport(
            name_directions={**left.name_directions, **right.name_directions},
            ok=left.ok and right.ok,
            details=tuple(details) + left.details + right.details)
    directions = {}
    ok = True
    for n, seq in seqs.items():
        want_increasing = incs.get(n, False) if n != LAM1 else False
        directions[n] = "increasing" if want_increasing else "decreasing"
        pairs = zip(seq, seq[1:])
        good = all(b > a for a, b in pairs) if want_increasing \
            else all(b < a for a, b in zip(seq, seq[1:]))
        if not good:
            ok = False
            details.append(f"{n} not strictly {directions[n]}: {seq}")
    return MonotonicityReport(name_directions=directions, ok=ok,
                              details=tuple(details))
