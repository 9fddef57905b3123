"""Run configuration: TOML files plus command-line overrides.

Schema::

    [problem]
    phi = { kind = "phi_k", k = 3.0 }
    f   = { kind = "power_sum", p = 1.0, q = 6.0 }

    [params]
    lambda = 1.0        # scalar or list
    L = 1.0             # scalar or list
    r = 0.5
    tol = 1e-9
    r_points = 400      # g-profile search grid
    branch_points = 24  # branch samples per one-solution interval

    [output]
    dir = "out"
    formats = ["csv", "svg", "structured"]

Every tolerance and grid that affects the outputs is carried in the config
and echoed into the structured outputs, so a run is reproducible from the
config alone.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .catalog import ProblemInstance, make_f, make_phi_k, make_problem
from .errors import ConfigError

_FORMATS = ("csv", "svg", "structured")


@dataclass
class RunConfig:
    phi_spec: dict
    f_spec: dict
    lambdas: list[float] = field(default_factory=list)
    L_values: list[float] = field(default_factory=list)
    r: float | None = None
    tol: float = 1e-9
    r_points: int = 400
    branch_points: int = 24
    out_dir: Path = Path("out")
    formats: tuple[str, ...] = _FORMATS
    subset: str = "all"

    def problem(self) -> ProblemInstance:
        phi_spec = dict(self.phi_spec)
        kind = phi_spec.pop("kind", "phi_k")
        if kind != "phi_k":
            raise ConfigError(f"unknown phi kind {kind!r}")
        phi = make_phi_k(float(phi_spec.pop("k", 3.0)))
        if phi_spec:
            raise ConfigError(f"unused phi parameters: {sorted(phi_spec)}")
        return make_problem(phi, make_f(self.f_spec))

    def describe(self) -> dict:
        return {
            "problem": {"phi": self.phi_spec, "f": self.f_spec},
            "params": {"lambda": self.lambdas, "L": self.L_values,
                       "r": self.r, "tol": self.tol,
                       "r_points": self.r_points,
                       "branch_points": self.branch_points},
            "output": {"dir": str(self.out_dir), "formats": list(self.formats)},
        }


def _as_list(value) -> list[float]:
    if value is None:
        return []
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(v) for v in value]


def load_config(path: str | Path | None, overrides: dict) -> RunConfig:
    """Parse the TOML config and apply flag overrides on top."""
    data = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                data = _toml.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except _toml.TOMLDecodeError as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from exc
    problem = data.get("problem", {})
    params = data.get("params", {})
    output = data.get("output", {})

    phi_spec = problem.get("phi")
    f_spec = problem.get("f")
    if overrides.get("phi_k") is not None:
        phi_spec = {"kind": "phi_k", "k": overrides["phi_k"]}
    if overrides.get("f_kind") is not None:
        f_spec = {"kind": overrides["f_kind"]}
        for key in ("p", "q", "k_growth"):
            if overrides.get(key) is not None:
                f_spec["k" if key == "k_growth" else key] = overrides[key]
    if phi_spec is None or f_spec is None:
        raise ConfigError("a problem needs both phi and f descriptors "
                          "(config [problem] section or flags)")

    lambdas = _as_list(overrides.get("lam") if overrides.get("lam") is not None
                       else params.get("lambda"))
    L_values = _as_list(overrides.get("L") if overrides.get("L") is not None
                        else params.get("L"))
    formats = tuple(output.get("formats", _FORMATS))
    bad = [f for f in formats if f not in _FORMATS]
    if bad:
        raise ConfigError(f"unknown output formats: {bad}")

    cfg = RunConfig(
        phi_spec=dict(phi_spec), f_spec=dict(f_spec),
        lambdas=lambdas, L_values=L_values,
        r=overrides.get("r") if overrides.get("r") is not None
        else (float(params["r"]) if "r" in params else None),
        tol=float(overrides.get("tol") or params.get("tol", 1e-9)),
        r_points=int(params.get("r_points", 400)),
        branch_points=int(params.get("branch_points", 24)),
        out_dir=Path(overrides.get("out") or output.get("dir", "out")),
        formats=formats,
        subset=overrides.get("subset") or "all",
    )
    return cfg
