"""Time-map analysis of quasilinear two-point boundary value problems.

The package computes, for problems -(phi(u'))' = lambda f(u) on (-L, L)
with zero boundary values and convex f with f(0) = 0:

* the time map T(r, lambda) and its r-derivative,
* the endpoint function g(lambda) with its extrema, limits and shape type,
* exact-multiplicity bifurcation diagrams with named thresholds,
* an independent shooting oracle for cross-validation.

See the README for the CLI and the acceptance suite.
"""

from .catalog import (Case, ConditionReport, NonlinearityFamily, PhiFamily,
                      ProblemInstance, Verdict, check_conditions,
                      classify_case, family_kinds, k_integral, make_custom_f,
                      make_f, make_phi_k, make_problem)
from .errors import (AccuracyError, ClassificationError, ConfigError,
                     DomainError, FamilyError, RefinementError,
                     TimeMapBVPError, UnsupportedFamilyError)
from .gfunction import (GProfile, GridSpec, classify_g_type, find_extrema,
                        g_eval, g_lambda, g_limits, g_tilde_eval)
from .shooting import Trajectory, backward_recovery, energy_residual, shoot
from .timemap import (Branch, TimeMapDomain, TimeMapSample, blow_up_radius,
                      domain, left_limit, time_map, time_map_derivative)
from .bifurcation import (BifurcationDiagram, DiagramSpec, SolveResult,
                          build_diagram, regime_sample_values, solve_r,
                          threshold_monotonicity_check, thresholds_for_L,
                          verify_pattern)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "BifurcationDiagram", "Branch", "Case",
    "ClassificationError", "ConditionReport", "ConfigError", "DiagramSpec",
    "DomainError", "FamilyError", "GProfile", "GridSpec",
    "NonlinearityFamily", "PhiFamily", "ProblemInstance", "RefinementError",
    "SolveResult", "TimeMapBVPError", "TimeMapDomain", "TimeMapSample",
    "Trajectory", "UnsupportedFamilyError", "Verdict", "__version__",
    "backward_recovery", "blow_up_radius", "build_diagram",
    "check_conditions", "classify_case", "classify_g_type", "domain",
    "energy_residual", "family_kinds", "find_extrema", "g_eval", "g_lambda",
    "g_limits", "g_tilde_eval", "k_integral", "left_limit", "make_custom_f",
    "make_f", "make_phi_k", "make_problem", "regime_sample_values", "shoot",
    "solve_r", "threshold_monotonicity_check", "thresholds_for_L",
    "time_map", "time_map_derivative", "verify_pattern",
]
