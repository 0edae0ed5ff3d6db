"""Report container and CSV / JSON / SVG / text emitters.

Output is deterministic: no wall-clock timestamp unless one is supplied,
numbers in CSV use 12 significant digits, dictionaries keep insertion order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .. import __version__
from ..errors import HybridSimError

PLUMBING = "plumbing"


@dataclass(frozen=True)
class PlotSpec:
    x: str
    y: str
    series: Optional[str] = None
    log_x: bool = False
    log_y: bool = False
    table: Optional[str] = None  # default: primary table


@dataclass
class Report:
    """Ordered result tables plus provenance for every numeric column.

    ``tables`` maps a table name to a list of row dicts; the first table is
    the primary one.  ``summary`` holds scalar results that do not belong
    in a row (optimum values, pass/fail verdicts).
    """

    scenario: str
    tables: dict
    provenance: dict
    summary: dict = field(default_factory=dict)
    input_hash: str = ""
    timestamp: Optional[str] = None
    plot: Optional[PlotSpec] = None

    @property
    def rows(self) -> list:
        return next(iter(self.tables.values())) if self.tables else []

    @property
    def metadata(self) -> dict:
        meta = {"tool": "hybridsim", "version": __version__, "scenario": self.scenario,
                "input_hash": self.input_hash}
        if self.timestamp is not None:
            meta["timestamp"] = self.timestamp
        meta["summary"] = self.summary
        return meta


class EmitError(HybridSimError):
    pass


def _plain(v):
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_plain(x) for x in v]
    return v


def _cell(v) -> str:
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _columns(rows) -> list:
    cols: list = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def to_csv(rows) -> bytes:
    buf = io.StringIO()
    cols = _columns(rows)
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue().encode("utf-8")


def to_json(report: Report) -> bytes:
    if len(report.tables) == 1:
        rows = report.rows
    else:
        rows = report.tables
    obj = {"metadata": report.metadata, "rows": rows, "provenance": report.provenance}
    return (json.dumps(_plain(obj), indent=2, ensure_ascii=False, allow_nan=False) + "\n").encode("utf-8")


def to_table(report: Report) -> bytes:
    """Human-readable key/value or column layout."""
    out = []
    for name, rows in report.tables.items():
        if len(report.tables) > 1:
            out.append(f"[{name}]")
        cols = _columns(rows)
        if len(rows) == 1:
            width = max((len(c) for c in cols), default=0)
            out += [f"{c:<{width}}  {_cell(rows[0].get(c))}" for c in cols]
        else:
            cells = [cols] + [[_cell(r.get(c)) for c in cols] for r in rows]
            widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
            out += ["  ".join(v.rjust(wd) for v, wd in zip(row, widths)) for row in cells]
        out.append("")
    if report.summary:
        out.append("[summary]")
        width = max(len(k) for k in report.summary)
        out += [f"{k:<{width}}  {_cell(v) if not isinstance(v, (list, dict)) else json.dumps(_plain(v))}"
                for k, v in report.summary.items()]
    return ("\n".join(out).rstrip() + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# SVG

_W, _H = 720, 450
_ML, _MR, _MT, _MB = 80, 150, 30, 60
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f")


def _ticks(lo, hi, log):
    if log:
        a, b = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
        return [10.0**k for k in range(a, b + 1) if lo * (1 - 1e-9) <= 10.0**k <= hi * (1 + 1e-9)]
    if hi == lo:
        return [lo]
    step = 10 ** math.floor(math.log10((hi - lo) / 5))
    for m in (1, 2, 5, 10):
        if (hi - lo) / (m * step) <= 6:
            step *= m
            break
    first = math.ceil(lo / step) * step
    return [first + k * step for k in range(int((hi - first) / step + 1e-9) + 1)]


def to_svg(report: Report) -> bytes:
    plot = report.plot
    rows = report.tables.get(plot.table, []) if plot is not None and plot.table else report.rows
    if not rows or plot is None:
        raise EmitError("svg needs a non-empty report with a plot specification")
    series: dict = {}
    for r in rows:
        x, y = _plain(r.get(plot.x)), _plain(r.get(plot.y))
        if not isinstance(x, (int, float)) or not isinstance(y, (int, float)) or isinstance(x, bool):
            continue
        if (plot.log_x and x <= 0) or (plot.log_y and y <= 0):
            continue
        key = escape(str(r.get(plot.series, ""))) if plot.series else escape(plot.y)
        series.setdefault(key, []).append((float(x), float(y)))
    if not series:
        raise EmitError("no plottable points")
    xs = [p[0] for pts in series.values() for p in pts]
    ys = [p[1] for pts in series.values() for p in pts]
    tx = (lambda v: math.log10(v)) if plot.log_x else (lambda v: v)
    ty = (lambda v: math.log10(v)) if plot.log_y else (lambda v: v)
    x0, x1 = tx(min(xs)), tx(max(xs))
    y0, y1 = ty(min(ys)), ty(max(ys))
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(v):
        return _ML + (tx(v) - x0) / (x1 - x0) * pw

    def py(v):
        return _MT + ph - (ty(v) - y0) / (y1 - y0) * ph

    f = "{:.2f}".format
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<g class="axis x-axis" data-scale="{"log" if plot.log_x else "linear"}" stroke="black">',
        f'<line x1="{_ML}" y1="{_MT + ph}" x2="{_ML + pw}" y2="{_MT + ph}"/>',
    ]
    for t in _ticks(min(xs), max(xs), plot.log_x):
        out.append(f'<line class="tick" x1="{f(px(t))}" y1="{_MT + ph}" x2="{f(px(t))}" y2="{_MT + ph + 5}"/>')
        out.append(f'<text x="{f(px(t))}" y="{_MT + ph + 18}" font-size="11" text-anchor="middle" '
                   f'stroke="none">{t:.3g}</text>')
    out.append(f'<text class="label" x="{_ML + pw / 2}" y="{_H - 15}" font-size="13" text-anchor="middle" '
               f'stroke="none">{escape(plot.x)}</text>')
    out.append("</g>")
    out.append(f'<g class="axis y-axis" data-scale="{"log" if plot.log_y else "linear"}" stroke="black">')
    out.append(f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_MT + ph}"/>')
    for t in _ticks(min(ys), max(ys), plot.log_y):
        out.append(f'<line class="tick" x1="{_ML - 5}" y1="{f(py(t))}" x2="{_ML}" y2="{f(py(t))}"/>')
        out.append(f'<text x="{_ML - 8}" y="{f(py(t) + 4)}" font-size="11" text-anchor="end" '
                   f'stroke="none">{t:.3g}</text>')
    out.append(f'<text class="label" x="18" y="{_MT + ph / 2}" font-size="13" text-anchor="middle" stroke="none" '
               f'transform="rotate(-90 18 {_MT + ph / 2})">{escape(plot.y)}</text>')
    out.append("</g>")
    for i, (name, pts) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{f(px(x))},{f(py(y))}" for x, y in pts)
        out.append(f'<polyline class="series" data-series="{name}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{coords}"/>')
        ly = _MT + 10 + 18 * i
        out.append(f'<text class="legend" x="{_ML + pw + 15}" y="{ly}" font-size="12" fill="{color}">{name}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def emit(report: Report, fmt: str, table: Optional[str] = None) -> bytes:
    """Serialise ``report``.  ``table`` selects a non-primary table for csv."""
    if fmt == "csv":
        if table is None:
            return to_csv(report.rows)
        if table not in report.tables:
            raise EmitError(f"no table {table!r}; have {', '.join(report.tables)}")
        return to_csv(report.tables[table])
    if fmt == "json":
        return to_json(report)
    if fmt == "svg":
        return to_svg(report)
    if fmt == "table":
        return to_table(report)
    raise EmitError(f"unknown format {fmt!r}")
