"""Render bias, Euler-product, and second-moment figures from the CSV
files written by the `bias compute` tool.

Three kinds:
  bias    one panel per CSV: the running sum of a_p/p against log x, with
          the fitted A*loglog x + c line and a predicted-slope guide
  euler   the normalized partial Euler product at the central point; with
          several CSVs the first is drawn against the product of the rest,
          so a Fermat file plus its quotient files shows the factorization
          identity as two coinciding curves
  moment  the second-moment partial sums over Q, with a reference line of
          the slope suggested by the file's degree

Every figure is emitted as both PNG and SVG next to the requested output
path.  The tool is read-only over its inputs and runs headless.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import re
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

KINDS = ("bias", "euler", "moment")

REQUIRED = {
    "bias": ("x", "bias_sum", "predicted_slope", "fit_A", "fit_c"),
    "euler": ("x", "log_euler_product_s_half"),
    "moment": ("x", "second_moment_Q"),
}


class PlotError(Exception):
    pass


@dataclass
class PlotSpec:
    csv_paths: list[str]
    out: str
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise PlotError(f"unknown kind {self.kind!r}; choose from {KINDS}")
        if not self.csv_paths:
            raise PlotError("at least one --csv is required")


@dataclass
class Series:
    path: str
    label: str
    columns: dict[str, list[float]] = field(default_factory=dict)

    @property
    def x(self) -> list[float]:
        return self.columns["x"]


def _label_from_path(path: str) -> str:
    stem = os.path.splitext(os.path.basename(path))[0]
    return stem.removeprefix("bias_")


def _degree_from_path(path: str) -> int | None:
    m = re.search(r"_l(\d+)_", os.path.basename(path))
    return int(m.group(1)) if m else None


def load_series(path: str, required: tuple[str, ...]) -> Series:
    """Parse one CSV export, skipping comment headers; raises PlotError if
    the file is missing rows or any required column."""
    if not os.path.exists(path):
        raise PlotError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    header = reader.fieldnames or []
    missing = [c for c in required if c not in header]
    if missing:
        raise PlotError(f"{path}: missing columns {', '.join(missing)}")
    rows = list(reader)
    if not rows:
        raise PlotError(f"{path}: no data rows")
    series = Series(path, _label_from_path(path))
    for col in header:
        series.columns[col] = [float(r[col]) for r in rows]
    return series


# -- trajectories ----------------------------------------------------------


def euler_trajectories(
    series: list[Series],
) -> list[tuple[str, list[float], list[float]]]:
    """(label, x, product value) curves for the euler kind.  With more than
    one input the first file is drawn against the pointwise product of the
    others; the log columns add, so identical grids are required."""
    out = [(s.label, s.x, [math.exp(v) for v in s.columns["log_euler_product_s_half"]])
           for s in series[:1]]
    if len(series) > 1:
        rest = series[1:]
        grid = rest[0].x
        for s in rest[1:]:
            if s.x != grid or series[0].x != grid:
                raise PlotError("euler overlay requires identical x grids")
        combined = [
            math.exp(sum(s.columns["log_euler_product_s_half"][i] for s in rest))
            for i in range(len(grid))
        ]
        label = " * ".join(s.label for s in rest)
        out.append((f"product of {label}", grid, combined))
    return out


def _loglog_line(xs: list[float], slope: float, anchor_y: float) -> list[float]:
    # a guide through the last sample with the given loglog-x slope
    u_last = math.log(math.log(xs[-1]))
    return [anchor_y + slope * (math.log(math.log(x)) - u_last) for x in xs]


# -- figure builders -------------------------------------------------------


def _fig_bias(series: list[Series]):
    fig, axes = plt.subplots(
        len(series), 1, figsize=(7, 3.2 * len(series)), squeeze=False
    )
    for ax, s in zip(axes[:, 0], series):
        xs, ys = s.x, s.columns["bias_sum"]
        ax.semilogx(xs, ys, "o-", ms=3, label="partial sum of a_p/p")
        fit_a = s.columns["fit_A"][-1]
        fit_c = s.columns["fit_c"][-1]
        if not math.isnan(fit_a):
            ax.semilogx(
                xs,
                [fit_a * math.log(math.log(x)) + fit_c for x in xs],
                "--",
                label=f"fit {fit_a:.3f} loglog x + {fit_c:.3f}",
            )
        pred = s.columns["predicted_slope"][-1]
        ax.semilogx(
            xs,
            _loglog_line(xs, pred, ys[-1]),
            ":",
            label=f"predicted slope {pred:.3f}",
        )
        ax.set_title(s.label)
        ax.set_xlabel("x")
        ax.legend(fontsize=8)
    return fig


def _fig_euler(series: list[Series]):
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for i, (label, xs, ys) in enumerate(euler_trajectories(series)):
        style = "-" if i == 0 else "--"
        ax.semilogx(xs, ys, style, lw=2.2 - i, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("normalized partial Euler product at s = 1/2")
    ax.legend(fontsize=8)
    return fig


def _fig_moment(series: list[Series]):
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for s in series:
        xs, ys = s.x, s.columns["second_moment_Q"]
        ax.semilogx(xs, ys, "o-", ms=3, label=s.label)
        ell = _degree_from_path(s.path)
        if ell is not None and len(xs) > 1:
            ax.semilogx(
                xs,
                _loglog_line(xs, -(ell - 2), ys[-1]),
                ":",
                label=f"slope -({ell}-2) guide",
            )
    ax.set_xlabel("x")
    ax.set_ylabel("second-moment partial sum over Q")
    ax.legend(fontsize=8)
    return fig


def render(spec: PlotSpec) -> list[str]:
    """Build the figure and write it as PNG and SVG; returns the paths."""
    series = [load_series(p, REQUIRED[spec.kind]) for p in spec.csv_paths]
    builder = {"bias": _fig_bias, "euler": _fig_euler, "moment": _fig_moment}[spec.kind]
    fig = builder(series)
    fig.tight_layout()
    base, ext = os.path.splitext(spec.out)
    if ext.lower() not in (".png", ".svg"):
        base = spec.out
    written = []
    for suffix in (".png", ".svg"):
        path = base + suffix
        fig.savefig(path)
        written.append(path)
    plt.close(fig)
    return written


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="bias-plot", description=__doc__)
    parser.add_argument(
        "--csv", action="append", default=[], help="input CSV (repeatable)"
    )
    parser.add_argument("--out", required=True, help="output image path (base name)")
    parser.add_argument("--kind", required=True, choices=KINDS)
    args = parser.parse_args(argv)
    try:
        spec = PlotSpec(csv_paths=args.csv, out=args.out, kind=args.kind)
        for path in render(spec):
            print(f"wrote {path}")
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
