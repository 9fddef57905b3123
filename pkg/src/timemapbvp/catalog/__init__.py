"""Family catalog: flux families, nonlinearities, cases and conditions."""

from .nonlinearity import (NonlinearityFamily, family_kinds, make_custom_f,
                           make_f)
from .phi import PhiFamily, k_integral, make_phi_k
from .problem import (Case, ConditionReport, ProblemInstance, Verdict,
                      check_conditions, classify_case, make_problem)

__all__ = [
    "Case", "ConditionReport", "NonlinearityFamily", "PhiFamily",
    "ProblemInstance", "Verdict", "check_conditions", "classify_case",
    "family_kinds", "k_integral", "make_custom_f", "make_f", "make_phi_k",
    "make_problem",
]
