"""Command-line front end.

Subcommands run the pipeline classify -> g-profile -> diagram -> verify
and write CSV / structured / SVG artifacts.  Configs are TOML (see
:mod:`.config`); the quick-exploration flags --lambda/--L/--r/--tol/--out
override config values.

Exit codes: 0 ok, 1 verification failure, 2 config error,
3 classification failure, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import shooting
from .artifacts import (figure_diagram, figure_gcurves, figure_timemap,
                        save_figure, write_csv, write_record)
from .bifurcation import (DiagramSpec, build_diagram, pattern_key,
                          regime_sample_values, threshold_monotonicity_check,
                          verify_pattern)
from .catalog import Case, make_f, make_phi_k, make_problem
from .config import RunConfig, load_config
from .errors import (AccuracyError, ClassificationError, ConfigError,
                     DomainError, FamilyError, TimeMapBVPError)
from .gfunction import GridSpec, find_extrema
from .numerics import is_finite
from .regression import SUBSETS, matrix_subset
from .timemap import blow_up_radius, domain, time_map

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_CLASSIFY = 3
EXIT_NUMERIC = 4


def _condition_dict(report) -> dict:
    return {
        "phi_concavity": report.phi_concavity.value,
        "superlinearity": report.superlinearity.value,
        "strictness": report.strictness,
        "f_condition": report.f_condition.value,
        "limit_condition": report.limit_condition.value,
        "sample_grid": report.sample_grid,
    }


def _profile_record(prof) -> dict:
    return {
        "case": prof.case_id.value,
        "g_type": prof.g_type,
        "boundary_flag": prof.boundary_flag,
        "limit_at_zero": prof.limit_at_zero,
        "limit_at_infinity": prof.limit_at_infinity,
        "k_value": prof.k_value,
        "d_value": prof.d_value,
        "thresholds": dict(prof.thresholds),
        "extrema": [{"lambda": e.lam, "r": e.r, "value": e.value,
                     "kind": e.kind} for e in prof.extrema],
    }


def cmd_classify(cfg: RunConfig) -> int:
    p = cfg.problem()
    print(f"Problem {p.label}")
    print(f"Case {p.case_id.value}")
    for key, val in _condition_dict(p.conditions).items():
        print(f"  {key}: {val}")
    if p.case_id in (Case.I, Case.II):
        print("g identically zero")
        prof = find_extrema(p)
    else:
        prof = find_extrema(p, GridSpec(points=cfg.r_points,
                                        quad_tol=min(cfg.tol, 1e-10)))
        print(f"g-type: {prof.g_type}"
              + (" (boundary band)" if prof.boundary_flag else ""))
        print(f"  limits: lambda->0: {prof.limit_at_zero:g}, "
              f"lambda->inf: {prof.limit_at_infinity:g}")
        for name, val in sorted(prof.thresholds.items()):
            print(f"  {name} = {val:.12g}")
        for e in prof.extrema:
            print(f"  {e.kind} at lambda={e.lam:.8g}: g={e.value:.10g}")
    if "structured" in cfg.formats:
        rec = {"config": cfg.describe(),
               "conditions": _condition_dict(p.conditions)}
        rec.update(_profile_record(prof))
        write_record(cfg.out_dir / "classify.json", rec)
    if prof.g_type == "unclassified":
        return EXIT_CLASSIFY
    return EXIT_OK


def cmd_timemap(cfg: RunConfig) -> int:
    p = cfg.problem()
    lambdas = cfg.lambdas or [1.0]
    rows = []
    curves = []
    for lam in lambdas:
        dom = domain(p, lam)
        r_hi = dom.right if dom.right_closed else dom.right * (1.0 - 1e-6)
        rr = np.geomspace(max(1e-4, r_hi * 1e-4), r_hi, 80)
        tt = []
        for i, r in enumerate(rr):
            sample = time_map(p, float(r), lam, tol=cfg.tol)
            endpoint = dom.right_closed and i == len(rr) - 1
            rows.append((lam, float(r), sample.t_value, endpoint))
            tt.append(sample.t_value)
        curves.append((lam, rr, np.array(tt)))
        if p.case_id in (Case.VI,) and lam <= p.b_over_c():
            print(f"lambda={lam:g}: below B/C={p.b_over_c():g}; "
                  "interval extends to the singular endpoint")
    if "csv" in cfg.formats:
        path = write_csv(cfg.out_dir / "timemap.csv",
                         ["lambda", "r", "T", "endpoint_flag"], rows)
        print(f"wrote {path}")
    if "svg" in cfg.formats:
        blow = None
        if is_finite(p.phi.b_constant):
            lam0 = max(lambdas)
            if lam0 > p.b_over_c():
                blow = (blow_up_radius(p, lam0),)
        a_end = p.f.endpoint_a if is_finite(p.f.endpoint_a) else None
        path = save_figure(figure_timemap(curves, blow, a_end,
                                          f"time maps {p.label}"),
                           cfg.out_dir / "timemap.svg")
        print(f"wrote {path}")
    if "structured" in cfg.formats:
        write_record(cfg.out_dir / "timemap.json",
                     {"config": cfg.describe(), "lambdas": lambdas})
    return EXIT_OK


def cmd_gcurve(cfg: RunConfig) -> int:
    p = cfg.problem()
    prof = find_extrema(p, GridSpec(points=cfg.r_points,
                                    quad_tol=min(cfg.tol, 1e-10)))
    if "csv" in cfg.formats:
        if prof.r_samples is not None:
            path = write_csv(cfg.out_dir / "gcurve_r.csv", ["r", "g_tilde"],
                             zip(prof.r_samples, prof.gtilde_samples))
            print(f"wrote {path}")
        path = write_csv(cfg.out_dir / "gcurve_lambda.csv", ["lambda", "g"],
                         zip(prof.lam_samples, prof.g_samples))
        print(f"wrote {path}")
    if "structured" in cfg.formats:
        rec = {"config": cfg.describe()}
        rec.update(_profile_record(prof))
        write_record(cfg.out_dir / "gcurve.json", rec)
        print(f"wrote {cfg.out_dir / 'gcurve.json'}")
    if "svg" in cfg.formats:
        fig = figure_gcurves(prof.r_samples, prof.gtilde_samples,
                             prof.lam_samples, prof.g_samples, prof.extrema,
                             f"endpoint curves {p.label} "
                             f"[{prof.g_type}]")
        path = save_figure(fig, cfg.out_dir / "gcurve.svg")
        print(f"wrote {path}")
    print(f"g-type: {prof.g_type}; extrema: {len(prof.extrema)}")
    if prof.g_type == "unclassified":
        return EXIT_CLASSIFY
    return EXIT_OK


def cmd_bifurcate(cfg: RunConfig) -> int:
    p = cfg.problem()
    prof = find_extrema(p, GridSpec(points=cfg.r_points,
                                    quad_tol=min(cfg.tol, 1e-10)))
    key = pattern_key(p.case_id.value, prof.g_type)
    if key is None:
        print(f"no governing pattern for {p.case_id.value}-{prof.g_type}")
        return EXIT_CLASSIFY
    L_values = cfg.L_values or [1.0]
    for L in L_values:
        spec = DiagramSpec.make(p, L)
        diagram = build_diagram(spec, lambda_grid=cfg.branch_points,
                                tol=cfg.tol, profile=prof)
        tag = f"L{L:g}".replace(".", "p")
        print(f"L={L:g}: regime {diagram.regime}")
        for iv in diagram.intervals:
            lo = "0" if iv.lo == 0 else f"{iv.lo:.8g}"
            hi = "inf" if not is_finite(iv.hi) else f"{iv.hi:.8g}"
            bra = "[" if iv.lo_closed else "("
            ket = "]" if iv.hi_closed else ")"
            print(f"  {bra}{lo}, {hi}{ket}: {iv.count} solution(s)")
        if "csv" in cfg.formats:
            path = write_csv(cfg.out_dir / f"branch_{tag}.csv",
                             ["lambda", "r", "classical_flag"],
                             diagram.branch)
            print(f"  wrote {path}")
            if diagram.blowup_curve:
                write_csv(cfg.out_dir / f"blowup_{tag}.csv", ["lambda", "r"],
                          diagram.blowup_curve)
        if "structured" in cfg.formats:
            rec = {"config": cfg.describe(), "L": L,
                   "regime": diagram.regime,
                   "lambda_thresholds": diagram.thresholds,
                   "degenerate": diagram.degenerate,
                   "intervals": [
                       {"lo": iv.lo, "hi": iv.hi, "count": iv.count,
                        "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed,
                        "lo_name": iv.lo_name, "hi_name": iv.hi_name}
                       for iv in diagram.intervals]}
            write_record(cfg.out_dir / f"diagram_{tag}.json", rec)
        if "svg" in cfg.formats:
            a_end = p.f.endpoint_a if is_finite(p.f.endpoint_a) else None
            fig = figure_diagram(diagram.branch, diagram.blowup_curve,
                                 diagram.thresholds, a_end,
                                 f"{p.label}, L={L:g} [{diagram.regime}]")
            save_figure(fig, cfg.out_dir / f"diagram_{tag}.svg")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.subset not in SUBSETS:
        raise ConfigError(f"unknown subset {cfg.subset!r}; known: {SUBSETS}")
    failures = 0
    checked = 0
    if cfg.subset == "monotone":
        return _verify_monotone(cfg)
    for entry in matrix_subset(cfg.subset):
        p = make_problem(make_phi_k(entry.phi_k), make_f(entry.f_spec))
        prof = find_extrema(p)
        if p.case_id.value != entry.case or prof.g_type != entry.g_type:
            print(f"FAIL {entry.name}: classified "
                  f"{p.case_id.value}-{prof.g_type}, expected "
                  f"{entry.case}-{entry.g_type}")
            failures += 1
            continue
        key = pattern_key(entry.case, prof.g_type)
        samples = regime_sample_values(key, prof.thresholds)
        for label, L in sorted(samples.items()):
            diagram = build_diagram(DiagramSpec.make(p, L), lambda_grid=8,
                                    tol=cfg.tol, profile=prof)
            verdict = verify_pattern(diagram)
            checked += 1
            status = "pass" if verdict.ok else "FAIL"
            print(f"{status} {entry.name} [{key}] L={L:.6g} regime={label}")
            if not verdict.ok:
                failures += 1
                for m in verdict.mismatches:
                    print(f"      {m}")
    print(f"{checked - failures}/{checked} pattern checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def _verify_monotone(cfg: RunConfig) -> int:
    targets = [e for e in matrix_subset("all")
               if e.g_type in ("alpha0", "beta0", "gamma0")
               and e.case in ("III", "IV")]
    failures = 0
    for entry in targets:
        p = make_problem(make_phi_k(entry.phi_k), make_f(entry.f_spec))
        prof = find_extrema(p)
        key = pattern_key(entry.case, prof.g_type)
        samples = regime_sample_values(key, prof.thresholds)
        for label, L in sorted(samples.items()):
            grid = list(np.linspace(L * 0.97, L * 1.03, 5))
            report = threshold_monotonicity_check(p, grid, profile=prof)
            status = "pass" if report.ok else "FAIL"
            print(f"{status} {entry.name} monotonicity at regime {label}: "
                  f"{report.name_directions}")
            if not report.ok:
                failures += 1
                for d in report.details:
                    print(f"      {d}")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def cmd_report(cfg: RunConfig) -> int:
    code = cmd_classify(cfg)
    if code != EXIT_OK:
        return code
    code = cmd_gcurve(cfg)
    if code != EXIT_OK:
        return code
    p = cfg.problem()
    if p.case_id in (Case.I, Case.II) or cfg.L_values:
        return cmd_bifurcate(cfg)
    return cmd_bifurcate(cfg)


_COMMANDS = {
    "classify": cmd_classify,
    "timemap": cmd_timemap,
    "gcurve": cmd_gcurve,
    "bifurcate": cmd_bifurcate,
    "verify": cmd_verify,
    "report": cmd_report,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timemapbvp",
        description="Time-map analysis and bifurcation diagrams for "
                    "quasilinear two-point boundary value problems")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", help="TOML run configuration")
    parser.add_argument("--phi-k", type=float, dest="phi_k",
                        help="flux exponent k (overrides config)")
    parser.add_argument("--f-kind", dest="f_kind",
                        help="nonlinearity kind (overrides config)")
    parser.add_argument("--p", type=float, help="family parameter p")
    parser.add_argument("--q", type=float, help="family parameter q")
    parser.add_argument("--growth-k", type=float, dest="k_growth",
                        help="family growth rate k")
    parser.add_argument("--lambda", type=float, dest="lam", action="append",
                        help="lambda value (repeatable)")
    parser.add_argument("--L", type=float, action="append",
                        help="half-length L (repeatable)")
    parser.add_argument("--r", type=float, help="crest height r")
    parser.add_argument("--tol", type=float, help="tolerance override")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--subset", choices=SUBSETS,
                        help="verification subset (verify command)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {k: getattr(args, k, None)
                 for k in ("phi_k", "f_kind", "p", "q", "k_growth", "lam",
                           "L", "r", "tol", "out", "subset")}
    try:
        cfg = load_config(args.config, overrides)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, FamilyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ClassificationError as exc:
        print(f"classification error: {exc}", file=sys.stderr)
        return EXIT_CLASSIFY
    except (AccuracyError, DomainError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TimeMapBVPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
