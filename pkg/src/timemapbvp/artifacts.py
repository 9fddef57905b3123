"""Artifact writers: delimited text, structured records, figures.

CSV files carry a header row and 17 significant digits, enough to
round-trip doubles, and are written deterministically so a re-run
bit-reproduces them.  Every figure has a CSV twin; figures are rendered
with matplotlib (SVG, date metadata stripped for reproducibility).
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def write_csv(path: Path, header: list[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _jsonable(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, float) and math.isnan(obj):
        return "nan"
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def write_record(path: Path, record: dict) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(_jsonable(record), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def save_figure(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def figure_timemap(curves, blowup, r_singular, title: str):
    """Overlaid T(., lambda) curves with the blow-up curve in the (r, T) plane."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for lam, rr, tt in curves:
        ax.plot(rr, tt, lw=1.8, label=f"lambda={lam:g}")
    if blowup:
        ax.axvline(blowup[0], color="0.5", lw=0.8, ls=":")
    if r_singular is not None:
        ax.axvline(r_singular, color="k", lw=0.8, ls="--")
    ax.set_xlabel("r")
    ax.set_ylabel("T(r)")
    ax.set_title(title)
    ax.legend(fontsize=8)
    return fig


def figure_gcurves(r, gtilde, lam, g, extrema, title: str):
    """Two panels: the r-parametrized and lambda-parametrized endpoint curves."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.8))
    if r is not None:
        ax1.plot(r, gtilde, lw=1.5)
        ax1.set_xscale("log")
        ax1.set_xlabel("r")
        ax1.set_ylabel("g~(r)")
    finite = [(lv, gv) for lv, gv in zip(lam, g) if math.isfinite(gv)]
    ax2.plot([a for a, _ in finite], [b for _, b in finite], lw=1.5)
    for e in extrema:
        ax2.plot([e.lam], [e.value], "o", ms=4, color="C3")
        if r is not None and math.isfinite(e.r):
            ax1.plot([e.r], [e.value], "o", ms=4, color="C3")
    ax2.set_xscale("log")
    ax2.set_xlabel("lambda")
    ax2.set_ylabel("g(lambda)")
    fig.suptitle(title)
    fig.tight_layout()
    return fig


def figure_diagram(branch, blowup_curve, thresholds, a_endpoint, title: str):
    """Bifurcation diagram: thick solid branch, thin blow-up curve, singular line."""
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    # split the branch at gaps so no-solution intervals stay empty
    if branch:
        lams = [b[0] for b in branch]
        rs = [b[1] for b in branch]
        segs_x, segs_y = [[lams[0]]], [[rs[0]]]
        for (a, b), (ra, rb) in zip(zip(lams, lams[1:]), zip(rs, rs[1:])):
            if b / a > 50.0:
                segs_x.append([])
                segs_y.append([])
            segs_x[-1].append(b)
            segs_y[-1].append(rb)
        for sx, sy in zip(segs_x, segs_y):
            ax.plot(sx, sy, "-", color="C0", lw=2.2)
        noncl = [(b[0], b[1]) for b in branch if not b[2]]
        if noncl:
            ax.plot([x for x, _ in noncl], [y for _, y in noncl], "s",
                    color="C3", ms=5, label="gradient blow-up point")
    if blowup_curve:
        ax.plot([x for x, _ in blowup_curve], [y for _, y in blowup_curve],
                "-", color="0.6", lw=0.9, label="blow-up curve")
    if a_endpoint is not None and math.isfinite(a_endpoint):
        ax.axhline(a_endpoint, color="k", lw=0.8, ls="--", label="singular line r=A")
    for name, lam in thresholds.items():
        ax.axvline(lam, color="0.8", lw=0.6, ls=":")
        ax.annotate(name, (lam, ax.get_ylim()[1] * 0.95), fontsize=6,
                    rotation=90, va="top")
    ax.set_xscale("log")
    ax.set_xlabel("lambda")
    ax.set_ylabel("r = u(0)")
    ax.set_title(title)
    ax.legend(fontsize=7, loc="best")
    return fig
