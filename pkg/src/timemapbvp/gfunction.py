"""The endpoint function g(lambda) = lim_{r -> r*} T(r, lambda).

g is what decides the bifurcation pattern: as the half-length L passes
through the local extreme values and limits of g, the solution count
structure of T(r, lambda) = L changes.  Per case:

* Cases I, II:  g is identically zero.
* Case III:     g(lambda) = int_0^C dy / (PhiInv(lambda y) f(FInv(C-y))),
                strictly decreasing from +inf to 0.
* Cases IV, V:  g(lambda) = T(FInv(B/lambda), lambda)
                          = int_0^B dy / (PhiInv(B-y) lambda f(FInv(y/lambda))).
* Case VI:      the Case III form for lambda <= B/C, the Case IV form
                beyond.

Shape hunting happens in the reparametrization gtilde(r) = g(B/F(r)),
which is the path traced by the right endpoint of the time map; the
lambda-parametrization compresses all structure toward lambda = 0 for
rapidly growing f.  Extrema are located on a sampled grid, refined by
golden-section, converted back to lambda = B/F(r) (a decreasing bijection:
kinds survive, ordering reverses), and finally pruned by a small relative
persistence threshold so that quadrature noise on long flat tails cannot
masquerade as structure.

Limits: lim_{lambda->0} g = D K for Cases IV/V (with K the flux tail
constant and D = lim F/f at A), +inf for Cases III/VI, and
lim_{lambda->inf} g = 0 whenever F/f -> 0 at zero and K < inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import Case, ProblemInstance, k_integral
from .errors import (AccuracyError, ClassificationError, DomainError,
                     RefinementError)
from .numerics import (INF, golden_extremum, integrate_adaptive, is_finite,
                       solve_monotone)

_EQ_BAND = 1e-4          # relative band for gamma3/delta3 boundary flagging
_EXACT_BAND = 1e-12      # below this, the boundary type itself is returned
_PROMINENCE = 1e-5       # relative persistence threshold for extrema pairs
_LAM_FLOOR = 1e-20       # smallest lambda reachable through r-sampling
_DEFAULT_POINTS = 400

G_TYPES = ("zero", "alpha0", "alpha1", "beta0", "beta1", "gamma0", "gamma1",
           "gamma2", "gamma3", "delta0", "delta1", "delta2", "delta3",
           "unclassified")


@dataclass(frozen=True)
class GExtremum:
    lam: float
    r: float          # nan when located on the lambda-branch (Case VI head)
    value: float
    kind: str         # "min" | "max"


@dataclass(frozen=True)
class GridSpec:
    r_min: float = 1e-4
    r_max: float | None = None       # None: spec default with overflow cap
    points: int = _DEFAULT_POINTS
    lam_floor: float = _LAM_FLOOR
    quad_tol: float = 1e-10


@dataclass
class GProfile:
    """Sampled shape of g with located extrema, limits and classification."""

    case_id: Case
    label: str
    lam_samples: np.ndarray
    g_samples: np.ndarray
    r_samples: np.ndarray | None
    gtilde_samples: np.ndarray | None
    limit_at_zero: float
    limit_at_infinity: float
    limit_indeterminate: bool
    k_value: float
    d_value: float
    extrema: list[GExtremum] = field(default_factory=list)
    g_type: str = "unclassified"
    boundary_flag: bool = False
    thresholds: dict[str, float] = field(default_factory=dict)

    def segment_bounds(self):
        """Monotone segments as (lam_lo, lam_hi, val_lo, val_hi) tuples."""
        lams = [0.0] + [e.lam for e in self.extrema] + [INF]
        vals = ([self.limit_at_zero] + [e.value for e in self.extrema]
                + [self.limit_at_infinity])
        return [(lams[i], lams[i + 1], vals[i], vals[i + 1])
                for i in range(len(lams) - 1)]


# ---------------------------------------------------------------------------
# point evaluators
# ---------------------------------------------------------------------------

def g_tilde_eval(p: ProblemInstance, r: float, tol: float = 1e-10) -> float:
    """gtilde(r) = g(B/F(r)) = int_0^r du / PhiInv(B [1 - F(u)/F(r)]).

    Direct u-space evaluation; the u = r endpoint square-root singularity
    is removed by u = r (1 - t^2), and the u -> 0 end vanishes because
    PhiInv(B) = +inf.
    """
    B = p.phi.b_constant
    if not is_finite(B):
        raise DomainError("gtilde requires B < +inf")
    if not (0.0 < r < p.f.endpoint_a):
        raise DomainError(f"need r in (0, A), got {r!r}")
    Fr = float(p.f.capital_f(r))
    cap = B * (1.0 - 1e-14)

    # u = r(1 - tau^4): the quartic clusters nodes at u ~ r, where all the
    # integrand variation lives when F accumulates near a finite A
    def integrand(tau):
        gap = r * tau ** 4
        arg = B * (p.f.capital_f_gap(r, gap) / Fr)
        out = np.zeros_like(arg)
        live = (arg > 0.0) & (arg < cap)
        z = p.phi.capital_phi_inv(arg[live])
        out[live] = 4.0 * r * tau[live] ** 3 / z
        return out

    val, _ = integrate_adaptive(integrand, 0.0, 1.0, tol=tol)
    return val


def _g_case3_u(p: ProblemInstance, lam: float, tol: float = 1e-10) -> float:
    """Case III / Case VI head: g = int_0^A du / PhiInv(lambda [C - F(u)]).

    The u -> A end carries an (A-u)^(-s) singularity with s < 1/2 (f blows
    up at A with C < inf); graded substitution A - u = (A/2) t^4.
    """
    A, C = p.f.endpoint_a, p.f.c_constant
    B = p.phi.b_constant
    cap = B * (1.0 - 1e-14) if is_finite(B) else INF

    def left(t):  # u in [0, A/2], plain
        u = 0.5 * A * t
        arg = lam * (C - p.f.capital_f(u))
        out = np.zeros_like(arg)
        live = arg < cap
        out[live] = 0.5 * A / p.phi.capital_phi_inv(arg[live])
        return out

    def right(t):  # A - u = (A/2) t^4
        w = 0.5 * A * t ** 4
        u = A - w
        arg = lam * (C - p.f.capital_f(u))
        out = np.zeros_like(arg)
        live = (arg < cap) & (arg > 0)
        out[live] = 2.0 * A * t[live] ** 3 / p.phi.capital_phi_inv(arg[live])
        return out

    v1, _ = integrate_adaptive(left, 0.0, 1.0, tol=tol)
    v2, _ = integrate_adaptive(right, 0.0, 1.0, tol=tol)
    return v1 + v2


def g_lambda(p: ProblemInstance, lam: float, tol: float = 1e-10) -> float:
    """g at a single lambda, dispatching on the case table."""
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if p.case_id in (Case.I, Case.II):
        return 0.0
    if p.case_id is Case.III or (p.case_id is Case.VI and lam <= p.b_over_c()):
        return _g_case3_u(p, lam, tol)
    r_star = p.f.capital_f_inv(p.phi.b_constant / lam)
    return g_tilde_eval(p, r_star, tol)


def g_eval(p: ProblemInstance, lam: float, tol: float = 1e-10) -> float:
    """g via the separated y-space integrals (the analysis-friendly forms).

    Cases IV/V (and VI beyond B/C):
        int_0^B [1/PhiInv(B-y)] [1/(lambda f(FInv(y/lambda)))] dy,
    with y = B - (B/2)t^2 at the blow-up end and the weight evaluated as
    [F(t)/f(t)] / y at t = FInv(y/lambda), which is finite as y -> 0.
    Case III (and VI up to B/C):
        int_0^C [1/PhiInv(lambda y)] [1/(f o FInv(C-y))] dy,
    with square-root and graded substitutions at the two ends.

    This is the contract evaluator; it is cross-validated against the
    u-space path (`g_lambda`) which the samplers use.
    """
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if p.case_id in (Case.I, Case.II):
        return 0.0
    if p.case_id is Case.III or (p.case_id is Case.VI and lam <= p.b_over_c()):
        return _g_eval_case3_y(p, lam, tol)
    return _g_eval_case45_y(p, lam, tol)


def _weight_over_y(p: ProblemInstance, y: np.ndarray, lam: float) -> np.ndarray:
    """[F(t)/f(t)]/y at t = FInv(y/lambda)  (== 1/(lambda f(FInv(y/lambda)))."""
    out = np.empty_like(y)
    for i, yi in enumerate(y):
        t = p.f.capital_f_inv(yi / lam)
        out[i] = 1.0 / (lam * float(p.f.eval(t))) if t > 0 else INF
    return out


def _g_eval_case45_y(p: ProblemInstance, lam: float, tol: float) -> float:
    B = p.phi.b_constant

    def right(t):  # y = B - (B/2) t^2
        y = B - 0.5 * B * t * t
        return B * t * _weight_over_y(p, y, lam) / p.phi.capital_phi_inv(0.5 * B * t * t)

    def left(t):   # y = (B/2) t^4
        y = 0.5 * B * t ** 4
        z = p.phi.capital_phi_inv(B - y)
        out = np.zeros_like(t)
        live = np.isfinite(z) & (z > 0)
        out[live] = 2.0 * B * t[live] ** 3 * _weight_over_y(p, y[live], lam) / z[live]
        return out

    v1, _ = integrate_adaptive(right, 0.0, 1.0, tol=tol)
    v2, _ = integrate_adaptive(left, 0.0, 1.0, tol=tol)
    return v1 + v2


def _g_eval_case3_y(p: ProblemInstance, lam: float, tol: float) -> float:
    C = p.f.c_constant
    B = p.phi.b_constant
    cap = B * (1.0 - 1e-14) if is_finite(B) else INF
    # 1/f(FInv(C-y)) ~ (C-y)^(-alpha/(alpha+1)); C - y = (C/2) t^m with
    # m = 3(alpha+1) leaves a smooth t^2 factor
    alpha = p.f.left_order[0] if p.f.left_order else 1.0
    m = int(math.ceil(3.0 * (alpha + 1.0)))

    def f_at_Finv(w):
        out = np.empty_like(w)
        for i, wi in enumerate(w):
            out[i] = float(p.f.eval(p.f.capital_f_inv(wi)))
        return out

    def left(t):   # y = (C/2) t^2: kills the PhiInv(lambda y) ~ sqrt end
        y = 0.5 * C * t * t
        return C * t / (p.phi.capital_phi_inv(lam * y) * f_at_Finv(C - y))

    def right(t):  # C - y = (C/2) t^m: blow-up of 1/f(FInv(C-y))
        w = 0.5 * C * t ** m
        y = C - w
        arg = lam * y
        out = np.zeros_like(t)
        live = (arg < cap) & (w > 0)
        out[live] = (0.5 * m * C * t[live] ** (m - 1)
                     / (p.phi.capital_phi_inv(arg[live]) * f_at_Finv(w[live])))
        return out

    v1, _ = integrate_adaptive(left, 0.0, 1.0, tol=tol)
    v2, _ = integrate_adaptive(right, 0.0, 1.0, tol=tol)
    return v1 + v2


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def g_limits(p: ProblemInstance):
    """(limit at lambda -> 0, limit at lambda -> +inf, indeterminate, K, D).

    Cases IV/V: the zero-limit is D*K (with D*K = +inf when D = +inf);
    K = +inf with D in (0, inf) leaves the product rule inapplicable and is
    reported indeterminate.  Cases III and VI: +inf (g is strictly
    decreasing from +inf on the head segment).  The infinity-limit is 0
    whenever F/f -> 0 at u = 0 and K < +inf.
    """
    case = p.case_id
    if case in (Case.I, Case.II):
        return 0.0, 0.0, False, math.nan, math.nan
    K = k_integral(p.phi) if is_finite(p.phi.b_constant) else INF
    D = p.f.d_limit
    if case in (Case.III, Case.VI):
        if case is Case.VI and not is_finite(K):
            return INF, math.nan, True, K, D
        return INF, 0.0, False, K, D
    if D == 0.0:
        lim0 = 0.0
    elif not is_finite(D):
        lim0 = INF
    elif not is_finite(K):
        return math.nan, 0.0, True, K, D
    else:
        lim0 = D * K
    lim_inf = 0.0 if is_finite(K) else math.nan
    return lim0, lim_inf, not is_finite(K), K, D


# ---------------------------------------------------------------------------
# sampling and extrema
# ---------------------------------------------------------------------------

_F_OVERFLOW_CAP = 1e290


def _sample_r_branch(p: ProblemInstance, grid: GridSpec):
    """Log-spaced r grid for the gtilde branch, with a float-overflow cap.

    The default r_max is min(1e3, A(1-1e-6)), further capped so that F(r)
    stays inside float range for super-exponential families.  The cap does
    not hide shape: beyond it lambda = B/F(r) is below ~1e-280 and the
    tail of every admissible g is monotone there.
    """
    A = p.f.endpoint_a
    B = p.phi.b_constant
    if grid.r_max is not None:
        r_max = grid.r_max
    elif is_finite(A):
        r_max = A * (1.0 - 1e-6)
    else:
        r_max = 1e3
    f_cap = min(_F_OVERFLOW_CAP, B / grid.lam_floor)
    with np.errstate(over="ignore"):
        if not np.isfinite(p.f.capital_f(r_max)) or \
                float(p.f.capital_f(r_max)) > f_cap:
            r_max = p.f.capital_f_inv(f_cap)
    n = grid.points
    if is_finite(A) and r_max > A / 2.0:
        n_left = n // 2
        left = np.geomspace(grid.r_min, A / 2.0, n_left, endpoint=False)
        gap = A - r_max
        right = A - np.geomspace(gap, A / 2.0, n - n_left)[::-1]
        rr = np.concatenate([left, right])
    else:
        rr = np.geomspace(grid.r_min, r_max, n)
    gg = np.array([g_tilde_eval(p, float(r), grid.quad_tol) for r in rr])
    lam = B / np.array([float(p.f.capital_f(r)) for r in rr])
    return rr, gg, lam


def _detect_flips(x: np.ndarray, y: np.ndarray):
    """Indices (i, j, kind) of slope-sign flips; zero slopes are skipped."""
    d = np.diff(y)
    sig = np.sign(d)
    nz = np.nonzero(sig)[0]
    flips = []
    for a, b in zip(nz[:-1], nz[1:]):
        if sig[a] != sig[b]:
            kind = "max" if sig[a] > 0 else "min"
            flips.append((a, b + 1, kind))
    return flips


def _prune_extrema(extrema: list[GExtremum], lim0: float,
                   lim_inf: float) -> list[GExtremum]:
    """Persistence pruning of sampled extrema.

    Adjacent pairs whose value gap is below the relative band are noise and
    are dropped together; a leading/trailing extremum whose value sits on
    the corresponding finite positive limit is the numerically flat tail
    plateau (g reaches its limit to machine precision long before the grid
    ends for exponential families) and is dropped as well.
    """
    ext = list(extrema)
    changed = True
    while changed and ext:
        changed = False
        for i in range(len(ext) - 1):
            a, b = ext[i], ext[i + 1]
            scale = max(abs(a.value), abs(b.value), 1e-300)
            if abs(a.value - b.value) < _PROMINENCE * scale:
                del ext[i:i + 2]
                changed = True
                break
        if changed:
            continue
        if ext and is_finite(lim0) and lim0 > 0.0:
            scale = max(abs(ext[0].value), lim0)
            if abs(ext[0].value - lim0) < _PROMINENCE * scale:
                del ext[0]
                changed = True
                continue
        if ext and is_finite(lim_inf) and lim_inf > 0.0:
            scale = max(abs(ext[-1].value), lim_inf)
            if abs(ext[-1].value - lim_inf) < _PROMINENCE * scale:
                del ext[-1]
                changed = True
    return ext


def find_extrema(p: ProblemInstance, search: GridSpec | None = None,
                 tol: float = 1e-6) -> GProfile:
    """Sample g, locate and refine its extrema, classify, derive thresholds.

    Sampling uses the r-parametrization wherever B < +inf (Cases IV/V and
    the lambda > B/C part of Case VI); the Case VI head segment and all of
    Case III are sampled directly in lambda.  Each slope-sign flip is
    refined by golden-section in the local sampling coordinate to relative
    resolution ``tol``, then mapped to lambda.
    """
    grid = search or GridSpec()
    lim0, lim_inf, indet, K, D = g_limits(p)
    case = p.case_id

    if case in (Case.I, Case.II):
        lam = np.geomspace(1e-4, 1e4, 33)
        return GProfile(case_id=case, label=p.label, lam_samples=lam,
                        g_samples=np.zeros_like(lam), r_samples=None,
                        gtilde_samples=None, limit_at_zero=0.0,
                        limit_at_infinity=0.0, limit_indeterminate=False,
                        k_value=K, d_value=D, extrema=[], g_type="zero",
                        boundary_flag=False, thresholds={})

    r_samples = gtilde_samples = None
    if case is Case.III:
        lam_all = np.geomspace(1e-8, 1e8, grid.points)
        g_all = np.array([_g_case3_u(p, float(v), grid.quad_tol)
                          for v in lam_all])
    else:
        rr, gg_r, lam_r = _sample_r_branch(p, grid)
        r_samples, gtilde_samples = rr, gg_r
        lam_all, g_all = lam_r[::-1], gg_r[::-1]  # ascending lambda
        if case is Case.VI:
            bc = p.b_over_c()
            lam_head = np.geomspace(bc * 1e-8, bc, grid.points // 4)
            gg_head = np.array([_g_case3_u(p, float(v), grid.quad_tol)
                                for v in lam_head])
            lam_all = np.concatenate([lam_head, lam_all])
            g_all = np.concatenate([gg_head, g_all])
            order = np.argsort(lam_all)
            lam_all, g_all = lam_all[order], g_all[order]

    # detect slope flips on the merged lambda series; refine in log-lambda
    fn_log = lambda s: g_lambda(p, math.exp(s), grid.quad_tol)
    extrema: list[GExtremum] = []
    for a, b, kind in _detect_flips(lam_all, g_all):
        s_loc, val = golden_extremum(
            fn_log, math.log(lam_all[a]), math.log(lam_all[b]), kind,
            xtol_rel=max(tol, 1e-9))
        lam_loc = math.exp(s_loc)
        if case is not Case.III and lam_loc > p.b_over_c():
            r_loc = p.f.capital_f_inv(p.phi.b_constant / lam_loc)
        else:
            r_loc = math.nan
        extrema.append(GExtremum(lam=lam_loc, r=r_loc, value=val, kind=kind))
    extrema.sort(key=lambda e: e.lam)
    extrema = _prune_extrema(extrema, lim0, lim_inf)
    for e1, e2 in zip(extrema, extrema[1:]):
        if e1.kind == e2.kind:
            raise RefinementError(
                f"{p.label}: non-alternating extrema after pruning; "
                "refine the search grid")

    profile = GProfile(case_id=case, label=p.label, lam_samples=lam_all,
                       g_samples=g_all, r_samples=r_samples,
                       gtilde_samples=gtilde_samples, limit_at_zero=lim0,
                       limit_at_infinity=lim_inf, limit_indeterminate=indet,
                       k_value=K, d_value=D, extrema=extrema)
    g_type, flag = classify_g_type(profile)
    profile.g_type = g_type
    profile.boundary_flag = flag
    profile.thresholds = _thresholds_from_shape(profile)
    return profile


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _rel_cmp(a: float, b: float):
    """-1/0/+1 comparison of a vs b with the boundary band; 0 means 'equal'."""
    scale = max(abs(a), abs(b), 1e-300)
    if abs(a - b) <= _EQ_BAND * scale:
        return 0, abs(a - b) <= _EXACT_BAND * scale
    return (-1 if a < b else 1), False


def classify_g_type(profile: GProfile):
    """Decision table of the g-taxonomy on (extrema count, limits, values).

    Returns ``(g_type, boundary_flag)``.  Equality comparisons use a 1e-4
    relative band; inside the band the open-type neighbour is returned with
    ``boundary_flag=True`` unless the match is exact to 1e-12, in which
    case the boundary type itself (gamma3/delta3) is reported.
    """
    if profile.case_id in (Case.I, Case.II):
        return "zero", False
    ext = profile.extrema
    lim0 = profile.limit_at_zero
    n = len(ext)
    if profile.limit_indeterminate or (isinstance(lim0, float) and math.isnan(lim0)):
        return "unclassified", False
    kinds = [e.kind for e in ext]

    if n == 0:
        if not is_finite(lim0):
            return "alpha0", False
        if lim0 > 0.0:
            return "alpha1", False
        return "unclassified", False
    if n == 1:
        if kinds != ["max"]:
            return "unclassified", False
        if not is_finite(lim0):
            return "unclassified", False
        return ("beta0", False) if lim0 == 0.0 else ("beta1", False)
    if n == 2:
        if kinds != ["min", "max"]:
            return "unclassified", False
        if not is_finite(lim0):
            return "gamma0", False
        if lim0 <= 0.0:
            return "unclassified", False
        vmin, vmax = ext[0].value, ext[1].value
        cmp_max, exact = _rel_cmp(lim0, vmax)
        if cmp_max == 0:
            return ("gamma3", False) if exact else \
                (("gamma1", True) if lim0 > vmax else ("gamma2", True))
        if cmp_max > 0:
            return "gamma1", False
        if lim0 > vmin:
            return "gamma2", False
        return "unclassified", False
    if n == 3:
        if kinds != ["max", "min", "max"]:
            return "unclassified", False
        left_max, vmin, right_max = ext[0].value, ext[1].value, ext[2].value
        if is_finite(lim0) and lim0 > 0.0:
            if min(left_max, right_max) < lim0 < max(left_max, right_max):
                return "delta0", False
            return "unclassified", False
        if lim0 == 0.0:
            cmp_lr, exact = _rel_cmp(left_max, right_max)
            if cmp_lr == 0:
                return ("delta3", False) if exact else \
                    (("delta2", True) if left_max > right_max
                     else ("delta1", True))
            return ("delta2", False) if cmp_lr > 0 else ("delta1", False)
        return "unclassified", False
    return "unclassified", False


def _thresholds_from_shape(profile: GProfile) -> dict[str, float]:
    """Named L-thresholds (local extreme values and relevant limits).

    The names follow the theorem statements for each type; they are the
    L-values at which the bifurcation pattern changes.
    """
    t = profile.g_type
    ext = profile.extrema
    lim0 = profile.limit_at_zero
    out: dict[str, float] = {}
    if t == "alpha1":
        out["L_upstar"] = lim0
    elif t in ("beta0", "beta1"):
        out["L_upstar"] = ext[0].value
        if t == "beta1":
            out["L_star"] = lim0
    elif t == "gamma0":
        out["L_star"] = ext[0].value
        out["L_upstar"] = ext[1].value
    elif t == "gamma1":
        out["L_star"] = ext[0].value
        out["L_upstar"] = ext[1].value
        out["L_dblstar"] = lim0
    elif t == "gamma2":
        out["L_star"] = ext[0].value
        out["L_upstar"] = lim0
        out["L_dblstar"] = ext[1].value
    elif t == "gamma3":
        out["L_star"] = ext[0].value
        out["L_upstar"] = ext[1].value
    elif t == "delta0":
        left_max, vmin, right_max = (ext[0].value, ext[1].value, ext[2].value)
        out["L_star"] = vmin
        out["L_upstar"] = min(left_max, right_max)
        out["L_dbl_substar"] = lim0
        out["L_dblstar"] = max(left_max, right_max)
    elif t in ("delta1", "delta2", "delta3"):
        left_max, vmin, right_max = (ext[0].value, ext[1].value, ext[2].value)
        out["L_star"] = vmin
        out["L_upstar"] = left_max if t == "delta1" else right_max
        out["L_dblstar"] = right_max if t == "delta1" else left_max
        if t == "delta3":
            out["L_upstar"] = out["L_dblstar"] = max(left_max, right_max)
    return out


# ---------------------------------------------------------------------------
# crossings g(lambda) = L (used by the diagram builder)
# ---------------------------------------------------------------------------

def solve_g_crossings(p: ProblemInstance, profile: GProfile, L: float,
                      rel_band: float = 1e-6):
    """All solutions of g(lambda) = L, one per monotone segment.

    Returns a list of (lambda, degenerate, increasing) triples in ascending
    lambda order.  When L sits within ``rel_band`` of a local extreme value
    the tangency root (the extremum location) is returned flagged
    degenerate.
    """
    roots = []
    for e in profile.extrema:
        if abs(L - e.value) <= rel_band * max(abs(L), abs(e.value)):
            roots.append((e.lam, True, e.kind == "max"))
    segs = profile.segment_bounds()
    fn = lambda lam: g_lambda(p, float(lam))
    for lam_lo, lam_hi, val_lo, val_hi in segs:
        lo_v, hi_v = (val_lo, val_hi) if val_lo < val_hi else (val_hi, val_lo)
        if not (lo_v < L < hi_v):
            continue
        near_ext = any(is_finite(v)
                       and abs(L - v) <= rel_band * max(abs(L), abs(v), 1e-300)
                       for v in (val_lo, val_hi))
        if near_ext:
            continue  # handled as a tangency above
        a, b = _bracket_on_segment(fn, L, lam_lo, lam_hi, val_lo, val_hi)
        lam_root = solve_monotone(fn, L, a, b, xtol=1e-280, rtol=1e-12)
        roots.append((lam_root, False, val_lo < val_hi))
    roots.sort(key=lambda t: t[0])
    return roots


def _bracket_on_segment(fn, L, lam_lo, lam_hi, val_lo, val_hi):
    """Finite bracket for g = L on a monotone segment with open ends."""
    if lam_lo == 0.0:
        hi = lam_hi if is_finite(lam_hi) else 1.0
        if not is_finite(lam_hi):
            while (fn(hi) - L) * (val_lo - L) > 0:  # walk toward the limit side
                hi *= 4.0
                if hi > 1e300:
                    raise AccuracyError("no crossing found toward lambda=inf")
        lo = hi / 4.0
        for _ in range(600):
            if (fn(lo) - L) * (fn(hi) - L) < 0:
                return lo, hi
            lo /= 4.0
            if lo < 1e-300:
                raise AccuracyError("no crossing found toward lambda=0")
        raise AccuracyError("bracket search failed")
    if not is_finite(lam_hi):
        lo = lam_lo * 1.0001
        hi = max(2.0 * lam_lo, 1.0)
        for _ in range(600):
            if (fn(hi) - L) * (fn(lo) - L) < 0:
                return lo, hi
            hi *= 4.0
            if hi > 1e300:
                raise AccuracyError("no crossing found toward lambda=inf")
        raise AccuracyError("bracket search failed")
    return lam_lo * 1.0000001, lam_hi * 0.9999999
