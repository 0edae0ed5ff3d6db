"""Parameter sweeps over any numeric scenario parameter."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..errors import ConfigError
from .config import SCHEMAS, RunConfig, parse_value
from .report import PLUMBING, PlotSpec, Report
from .scenarios import run_scenario

_UNIT_SUFFIX = {"Ω": "ohm", "": ""}


def column_name(name: str, unit: str) -> str:
    suffix = _UNIT_SUFFIX.get(unit, unit)
    return f"{name}_{suffix}" if suffix else name


def sweep_points(start: float, stop: float, n: int, scale: str) -> np.ndarray:
    if n == 1:
        return np.array([start])
    if scale == "log":
        if not (start > 0 and stop > 0):
            raise ConfigError("log sweeps need positive bounds")
        return np.geomspace(start, stop, n)
    return np.linspace(start, stop, n)


def run_sweep(cfg: RunConfig, timestamp: Optional[str] = None) -> Report:
    """Evaluate the base scenario at every sweep point (and series value).

    Each row holds the swept value, the series value when present, and the
    first row of the scenario's primary table.  Rows are ordered by series,
    then by sweep index.
    """
    sw = cfg.sweep
    if sw is None:
        raise ConfigError("run_sweep needs a [sweep] table")
    schema = {p.name: p for p in SCHEMAS[sw.scenario]}
    col = column_name(sw.parameter, schema[sw.parameter].unit)
    series = [(None, None)]
    if sw.series_parameter:
        sp = schema[sw.series_parameter]
        series = [(v, parse_value(sp, v, "sweep.series_values")) for v in sw.series_values]

    rows = []
    provenance = {col: PLUMBING}
    for raw_value, value in series:
        for x in sweep_points(sw.start, sw.stop, sw.n_points, sw.scale):
            params = dict(cfg.parameters)
            params[sw.parameter] = float(x)
            if sw.series_parameter:
                params[sw.series_parameter] = value
            sub = run_scenario(sw.scenario, params)
            row = {col: float(x)}
            if sw.series_parameter:
                row[sw.series_parameter] = raw_value
            for k, v in sub.rows[0].items():
                row.setdefault(k, v)
            provenance.update({k: v for k, v in sub.provenance.items() if k in row and k != col})
            rows.append(row)

    y = sw.y or next((k for k in rows[0] if k != col and isinstance(rows[0][k], float)), None)
    if y is not None and y not in rows[0]:
        raise ConfigError(f"sweep.y: no output column {y!r}; have {', '.join(rows[0])}")
    plot = PlotSpec(col, y, sw.series_parameter, log_x=sw.scale == "log") if y else None
    summary = {"scenario": sw.scenario, "parameter": sw.parameter, "n_points": sw.n_points, "scale": sw.scale}
    return Report("sweep", {"sweep": rows}, provenance, summary, cfg.input_hash(), timestamp, plot)
