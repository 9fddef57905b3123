"""The cataloged regression matrix: one instance per (case, g-type, slope).

These are the worked flux/nonlinearity pairs whose g-shapes are the
package's classification targets, plus the bifurcation-pattern matrix that
the verify command and the acceptance suite sweep.  The two `term_sum`
entries fill the (delta1, zero-slope) and (delta2, positive-slope) cells,
for which no single-name catalog family has the required shape; their
shapes were established numerically with the same profile machinery.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class RegressionEntry:
    name: str
    phi_k: float
    f_spec: dict | str
    case: str
    g_type: str
    fp0_positive: bool
    subset: str


_D1_F0 = {"kind": "term_sum", "label": "e^(u^2)+u^8+2u^1.2-1",
          "terms": [{"type": "exp_sq"}, {"type": "power", "p": 8},
                    {"type": "power", "c": 2.0, "p": 1.2}]}
_D2_F1 = {"kind": "term_sum", "label": "e^(u^2)+u^8+0.05u-1",
          "terms": [{"type": "exp_sq"}, {"type": "power", "p": 8},
                    {"type": "power", "c": 0.05, "p": 1}]}

# g-type regression targets (the classification table)
GTYPE_REGRESSION: tuple[RegressionEntry, ...] = (
    RegressionEntry("beta0-f0", 3.0, "exp_sq_minus_one", "IV", "beta0", False, "iv-beta"),
    RegressionEntry("beta0-f1", 3.0, {"kind": "exp_sq_plus_power", "p": 1}, "IV", "beta0", True, "iv-beta"),
    RegressionEntry("beta1-f1", 3.0, {"kind": "exp_plus_power", "p": 1}, "IV", "beta1", True, "iv-beta"),
    RegressionEntry("beta1-f0", 3.0, "exp_plus_usq_minus_u_minus_one", "IV", "beta1", False, "iv-beta"),
    RegressionEntry("gamma0-f0", 3.0, {"kind": "power_sum", "p": 2, "q": 7}, "IV", "gamma0", False, "iv-gamma"),
    RegressionEntry("gamma0-f1", 3.0, {"kind": "power_sum", "p": 1, "q": 6}, "IV", "gamma0", True, "iv-gamma"),
    RegressionEntry("gamma1-f0", 3.0, {"kind": "power_exp_plus_power", "p": 7, "k": 1, "q": 2}, "IV", "gamma1", False, "iv-gamma"),
    RegressionEntry("gamma1-f1", 3.0, {"kind": "power_exp_plus_power", "p": 5, "k": 1, "q": 1}, "IV", "gamma1", True, "iv-gamma"),
    RegressionEntry("gamma2-f0", 3.0, {"kind": "power_exp_plus_power", "p": 7, "k": 12, "q": 2}, "IV", "gamma2", False, "iv-gamma"),
    RegressionEntry("gamma2-f1", 3.0, {"kind": "power_exp_plus_power", "p": 5, "k": 8, "q": 1}, "IV", "gamma2", True, "iv-gamma"),
    RegressionEntry("delta0-f0", 3.0, {"kind": "exp_plus_power_minus_u", "p": 8}, "IV", "delta0", False, "iv-delta"),
    RegressionEntry("delta0-f1", 3.0, {"kind": "exp_plus_power", "p": 8}, "IV", "delta0", True, "iv-delta"),
    RegressionEntry("delta1-f1", 3.0, {"kind": "exp_sq_plus_power_plus_u", "p": 8}, "IV", "delta1", True, "iv-delta"),
    RegressionEntry("delta2-f0", 3.0, {"kind": "exp_sq_plus_power", "p": 8}, "IV", "delta2", False, "iv-delta"),
    RegressionEntry("vbeta0-f1", 3.0, "tan", "V", "beta0", True, "v-vi"),
    RegressionEntry("vigamma0-f1", 3.0, {"kind": "sing_power", "p": 0.5}, "VI", "gamma0", True, "v-vi"),
)

# pattern-matrix extras: remaining cells of the bifurcation sweep
PATTERN_EXTRAS: tuple[RegressionEntry, ...] = (
    RegressionEntry("case1-f0", 2.0, {"kind": "power", "p": 2}, "I", "zero", False, "case123"),
    RegressionEntry("case1-f1", 2.0, "exp_minus_one", "I", "zero", True, "case123"),
    RegressionEntry("case2-f0", 2.0, {"kind": "tan_power", "q": 2}, "II", "zero", False, "case123"),
    RegressionEntry("case2-f1", 2.0, "tan", "II", "zero", True, "case123"),
    RegressionEntry("case3-f0", 2.0, {"kind": "sing_power_q", "p": 0.5, "q": 2}, "III", "alpha0", False, "case123"),
    RegressionEntry("case3-f1", 2.0, {"kind": "sing_power", "p": 0.5}, "III", "alpha0", True, "case123"),
    RegressionEntry("alpha0-f0", 3.0, {"kind": "power", "p": 2}, "IV", "alpha0", False, "iv-alpha"),
    RegressionEntry("alpha0-f1", 3.0, {"kind": "power", "p": 1}, "IV", "alpha0", True, "iv-alpha"),
    RegressionEntry("alpha1-f0", 3.0, "exp_minus_u_minus_one", "IV", "alpha1", False, "iv-alpha"),
    RegressionEntry("alpha1-f1", 3.0, "exp_minus_one", "IV", "alpha1", True, "iv-alpha"),
    RegressionEntry("delta1-f0", 3.0, _D1_F0, "IV", "delta1", False, "iv-delta"),
    RegressionEntry("delta2-f1", 3.0, _D2_F1, "IV", "delta2", True, "iv-delta"),
    RegressionEntry("vbeta0-f0", 3.0, {"kind": "tan_power", "q": 2}, "V", "beta0", False, "v-vi"),
    RegressionEntry("vigamma0-f0", 3.0, {"kind": "sing_power_q", "p": 0.5, "q": 2}, "VI", "gamma0", False, "v-vi"),
)

PATTERN_MATRIX: tuple[RegressionEntry, ...] = GTYPE_REGRESSION + PATTERN_EXTRAS

SUBSETS = ("all", "case123", "iv-alpha", "iv-beta", "iv-gamma", "iv-delta",
           "v-vi", "monotone")


def matrix_subset(subset: str) -> tuple[RegressionEntry, ...]:
    if subset == "all":
        return PATTERN_MATRIX
    return tuple(e for e in PATTERN_MATRIX if e.subset == subset)
