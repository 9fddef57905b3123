"""Exact-multiplicity pattern tables, keyed by g-shape and slope at zero.

For each g-type the solution count of T(r, lambda) = L is determined by
where L sits relative to the named L-thresholds (the local extreme values
of g and its limit at zero, see the g-profile thresholds).  Each regime
prescribes the lambda-thresholds that appear (the crossings of g = L,
named in ascending lambda order) and the exact count on every interval
between them.

Tables are written for f'(0) = 0; when f'(0) > 0 every trailing
"one solution up to +inf" interval is capped at lambda_1 =
(phi'(0)/f'(0)) (pi/2L)^2, beyond which there are no solutions.  This
capping is uniform across all patterns because g(lambda) < L holds for all
lambda >= lambda_1 whenever the limit of T at r = 0 equals L at lambda_1.

Interval convention: whether a threshold itself carries a solution is a
statement about the closed/open brackets of the governing pattern and is
transcribed here verbatim; it is not resolved numerically (the crossing
lambda is a measure-zero point).  A degenerate {lambda} singleton appears
at tangencies (L equal to a local extreme value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..numerics import INF

# threshold keys: lambda_star = lambda_*, lambda_upstar = lambda^*,
# lambda_dblstar = lambda^**, lambda_dbl_substar = lambda_**
LAM = "lambda_star"
LAM_UP = "lambda_upstar"
LAM_DD = "lambda_dblstar"
LAM_SUB2 = "lambda_dbl_substar"
LAM1 = "lambda_1"

L_STAR = "L_star"            # L_*
L_UP = "L_upstar"            # L^*
L_DD = "L_dblstar"           # L^**
L_SUB2 = "L_dbl_substar"     # L_**


@dataclass(frozen=True)
class IntervalSpec:
    lo: str          # "0", "inf" or a lambda-threshold key
    hi: str
    count: int
    lo_closed: bool
    hi_closed: bool

    def render(self) -> str:
        lo = "0" if self.lo == "0" else self.lo
        return (("[" if self.lo_closed else "(") + lo + ", " + self.hi
                + ("]" if self.hi_closed else ")") + f": {self.count}")


@dataclass(frozen=True)
class RegimeSpec:
    label: str
    test: tuple | None            # ("eq"|"gt"|"ge"|"le", L-threshold key)
    thresholds: tuple[str, ...]   # lambda-threshold keys, ascending
    intervals: tuple[IntervalSpec, ...]


def _iv(*spec):
    return tuple(IntervalSpec(*s) for s in spec)


_ALL_ONE = _iv(("0", "inf", 1, False, False))

# one-crossing building blocks
_NONE_THEN_ONE = _iv(("0", LAM, 0, False, True), (LAM, "inf", 1, False, False))
_NONE_THEN_ONE_UP = _iv(("0", LAM_UP, 0, False, True),
                        (LAM_UP, "inf", 1, False, False))
_ONE_GAP_ONE = _iv(("0", LAM, 1, False, False), (LAM, LAM_UP, 0, True, True),
                   (LAM_UP, "inf", 1, False, False))
_TANGENT_TOP = _iv(("0", LAM_UP, 1, False, False), (LAM_UP, LAM_UP, 0, True, True),
                   (LAM_UP, "inf", 1, False, False))
_GAMMA_MID = _iv(("0", LAM, 0, False, True), (LAM, LAM_DD, 1, False, False),
                 (LAM_DD, LAM_UP, 0, True, True), (LAM_UP, "inf", 1, False, False))
_GAMMA_TANGENT = _iv(("0", LAM, 0, False, True), (LAM, LAM_UP, 1, False, False),
                     (LAM_UP, LAM_UP, 0, True, True),
                     (LAM_UP, "inf", 1, False, False))


PATTERNS: dict[str, tuple[RegimeSpec, ...]] = {
    "zero": (
        RegimeSpec("all L", None, (), _ALL_ONE),
    ),
    "alpha0": (
        RegimeSpec("all L", None, (LAM,), _NONE_THEN_ONE),
    ),
    "alpha1": (
        RegimeSpec("L>=L^*", ("ge", L_UP), (), _ALL_ONE),
        RegimeSpec("L<L^*", None, (LAM,), _NONE_THEN_ONE),
    ),
    "beta0": (
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM_UP,), _TANGENT_TOP),
        RegimeSpec("L>L^*", ("gt", L_UP), (), _ALL_ONE),
        RegimeSpec("L<L^*", None, (LAM, LAM_UP), _ONE_GAP_ONE),
    ),
    "beta1": (
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM_UP,), _TANGENT_TOP),
        RegimeSpec("L>L^*", ("gt", L_UP), (), _ALL_ONE),
        RegimeSpec("L<=L_*", ("le", L_STAR), (LAM_UP,), _NONE_THEN_ONE_UP),
        RegimeSpec("L_*<L<L^*", None, (LAM, LAM_UP), _ONE_GAP_ONE),
    ),
    "gamma0": (
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM, LAM_UP), _GAMMA_TANGENT),
        RegimeSpec("L>L^*", ("gt", L_UP), (LAM,), _NONE_THEN_ONE),
        RegimeSpec("L<=L_*", ("le", L_STAR), (LAM_UP,), _NONE_THEN_ONE_UP),
        RegimeSpec("L_*<L<L^*", None, (LAM, LAM_DD, LAM_UP), _GAMMA_MID),
    ),
    "gamma1": (
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM, LAM_UP), _GAMMA_TANGENT),
        RegimeSpec("L>=L^**", ("ge", L_DD), (), _ALL_ONE),
        RegimeSpec("L^*<L<L^**", ("gt", L_UP), (LAM,), _NONE_THEN_ONE),
        RegimeSpec("L<=L_*", ("le", L_STAR), (LAM_UP,), _NONE_THEN_ONE_UP),
        RegimeSpec("L_*<L<L^*", None, (LAM, LAM_DD, LAM_UP), _GAMMA_MID),
    ),
    "gamma2": (
        RegimeSpec("L=L^**", ("eq", L_DD), (LAM_UP,), _TANGENT_TOP),
        RegimeSpec("L>L^**", ("gt", L_DD), (), _ALL_ONE),
        RegimeSpec("L^*<=L<L^**", ("ge", L_UP), (LAM_DD, LAM_UP),
                   _iv(("0", LAM_DD, 1, False, False),
                       (LAM_DD, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
        RegimeSpec("L<=L_*", ("le", L_STAR), (LAM_UP,), _NONE_THEN_ONE_UP),
        RegimeSpec("L_*<L<L^*", None, (LAM, LAM_DD, LAM_UP), _GAMMA_MID),
    ),
    "gamma3": (
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM_UP,), _TANGENT_TOP),
        RegimeSpec("L>L^*", ("gt", L_UP), (), _ALL_ONE),
        RegimeSpec("L<=L_*", ("le", L_STAR), (LAM_UP,), _NONE_THEN_ONE_UP),
        RegimeSpec("L_*<L<L^*", None, (LAM, LAM_DD, LAM_UP), _GAMMA_MID),
    ),
    "delta0": (
        RegimeSpec("L=L^**", ("eq", L_DD), (LAM,),
                   _iv(("0", LAM, 1, False, False), (LAM, LAM, 0, True, True),
                       (LAM, "inf", 1, False, False))),
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM, LAM_UP), _GAMMA_TANGENT),
        RegimeSpec("L>L^**", ("gt", L_DD), (), _ALL_ONE),
        RegimeSpec("L_**<L<L^**", ("gt", L_SUB2), (LAM_SUB2, LAM),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM, 0, True, True),
                       (LAM, "inf", 1, False, False))),
        RegimeSpec("L^*<L<=L_**", ("gt", L_UP), (LAM,), _NONE_THEN_ONE),
        RegimeSpec("L<=L_*", ("le", L_STAR), (LAM_UP,), _NONE_THEN_ONE_UP),
        RegimeSpec("L_*<L<L^*", None, (LAM, LAM_DD, LAM_UP), _GAMMA_MID),
    ),
    "delta1": (
        RegimeSpec("L=L^**", ("eq", L_DD), (LAM_UP,), _TANGENT_TOP),
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM, LAM_DD, LAM_UP),
                   _iv(("0", LAM, 1, False, False), (LAM, LAM, 0, True, True),
                       (LAM, LAM_DD, 1, False, False),
                       (LAM_DD, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
        RegimeSpec("L>L^**", ("gt", L_DD), (), _ALL_ONE),
        RegimeSpec("L^*<L<L^**", ("gt", L_UP), (LAM_DD, LAM_UP),
                   _iv(("0", LAM_DD, 1, False, False),
                       (LAM_DD, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
        RegimeSpec("L_*<L<L^*", ("gt", L_STAR), (LAM_SUB2, LAM, LAM_DD, LAM_UP),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM, 0, True, True),
                       (LAM, LAM_DD, 1, False, False),
                       (LAM_DD, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
        RegimeSpec("L<=L_*", None, (LAM_SUB2, LAM_UP),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
    ),
    "delta2": (
        RegimeSpec("L=L^**", ("eq", L_DD), (LAM,),
                   _iv(("0", LAM, 1, False, False), (LAM, LAM, 0, True, True),
                       (LAM, "inf", 1, False, False))),
        RegimeSpec("L=L^*", ("eq", L_UP), (LAM_SUB2, LAM, LAM_UP),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM, 0, True, True),
                       (LAM, LAM_UP, 1, False, False),
                       (LAM_UP, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
        RegimeSpec("L>L^**", ("gt", L_DD), (), _ALL_ONE),
        RegimeSpec("L^*<L<L^**", ("gt", L_UP), (LAM_SUB2, LAM),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM, 0, True, True),
                       (LAM, "inf", 1, False, False))),
        RegimeSpec("L_*<L<L^*", ("gt", L_STAR), (LAM_SUB2, LAM, LAM_DD, LAM_UP),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM, 0, True, True),
                       (LAM, LAM_DD, 1, False, False),
                       (LAM_DD, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
        RegimeSpec("L<=L_*", None, (LAM_SUB2, LAM_UP),
                   _iv(("0", LAM_SUB2, 1, False, False),
                       (LAM_SUB2, LAM_UP, 0, True, True),
                       (LAM_UP, "inf", 1, False, False))),
    ),
}

_EQ_REL = 1e-6  # regime-boundary detection band (relative)


def pattern_key(case_value: str, g_type: str) -> str | None:
    """Map (case, g-type) to the governing pattern table key."""
    if case_value in ("I", "II"):
        return "zero"
    if case_value == "III":
        return "alpha0"
    if g_type in PATTERNS:
        return g_type
    return None


def detect_regime(key: str, L: float, thresholds: dict[str, float],
                  rel: float = _EQ_REL) -> RegimeSpec:
    """First matching regime of the pattern table for this L."""
    for regime in PATTERNS[key]:
        if regime.test is None:
            return regime
        op, name = regime.test
        thr = thresholds.get(name)
        if thr is None:
            continue
        if op == "eq" and abs(L - thr) <= rel * max(abs(L), abs(thr)):
            return regime
        if op == "gt" and L > thr * (1.0 + rel):
            return regime
        if op == "ge" and L >= thr * (1.0 - rel):
            return regime
        if op == "le" and L <= thr * (1.0 + rel):
            return regime
    raise LookupError(f"no regime matched for L={L!r} in {key!r}")


def cap_at_lambda1(intervals: tuple[IntervalSpec, ...],
                   thresholds: tuple[str, ...]):
    """Transform a zero-slope pattern into its positive-slope version.

    Appends lambda_1 and replaces the trailing (x, inf): 1 interval by
    (x, lambda_1): 1 plus [lambda_1, inf): 0.
    """
    last = intervals[-1]
    if not (last.hi == "inf" and last.count == 1):
        raise ValueError("pattern does not end in a one-solution tail")
    capped = intervals[:-1] + (
        IntervalSpec(last.lo, LAM1, 1, last.lo_closed, False),
        IntervalSpec(LAM1, "inf", 0, True, False),
    )
    return capped, thresholds + (LAM1,)


def expected_pattern(key: str, L: float, thresholds: dict[str, float],
                     positive_slope_at_zero: bool):
    """(regime, lambda-threshold names, interval specs) for this (type, L)."""
    regime = detect_regime(key, L, thresholds)
    names, intervals = regime.thresholds, regime.intervals
    if positive_slope_at_zero:
        intervals, names = cap_at_lambda1(intervals, names)
    return regime, names, intervals


def regime_sample_values(key: str, thresholds: dict[str, float],
                         include_equalities: bool = False) -> dict[str, float]:
    """A representative L strictly inside each regime of the pattern.

    Open regimes get candidates built from the sorted L-thresholds (half
    the smallest, geometric means of neighbours, twice the largest), each
    assigned by running the regime detector on it.  Equality regimes are
    included on request with L equal to the threshold itself.
    """
    thr_sorted = sorted(set(thresholds.values()))
    candidates = []
    if thr_sorted:
        candidates.append(thr_sorted[0] * 0.5)
        for a, b in zip(thr_sorted, thr_sorted[1:]):
            candidates.append(math.sqrt(a * b))
        candidates.append(thr_sorted[-1] * 2.0)
    else:
        candidates.append(1.0)
    out: dict[str, float] = {}
    for regime in PATTERNS[key]:
        if regime.test is not None and regime.test[0] == "eq":
            if include_equalities and regime.test[1] in thresholds:
                out[regime.label] = thresholds[regime.test[1]]
            continue
        for c in candidates:
            if detect_regime(key, c, thresholds).label == regime.label:
                out[regime.label] = c
                break
    return out
