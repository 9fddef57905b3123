"""Bifurcation diagrams and exact-multiplicity pattern verification."""

from .diagram import (BifurcationDiagram, DiagramSpec, MonotonicityReport,
                      PatternVerdict, SolveResult, build_diagram, solve_r,
                      threshold_monotonicity_check, thresholds_for_L,
                      verify_pattern)
from .patterns import (PATTERNS, IntervalSpec, RegimeSpec, detect_regime,
                       expected_pattern, pattern_key, regime_sample_values)

__all__ = [
    "BifurcationDiagram", "DiagramSpec", "IntervalSpec",
    "MonotonicityReport", "PATTERNS", "PatternVerdict", "RegimeSpec",
    "SolveResult", "build_diagram", "detect_regime", "expected_pattern",
    "pattern_key", "regime_sample_values", "solve_r",
    "threshold_monotonicity_check", "thresholds_for_L", "verify_pattern",
]
