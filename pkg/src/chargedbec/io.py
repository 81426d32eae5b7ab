"""CSV and JSON writers with fixed formatting so repeated runs diff cleanly."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .timeseries import COLUMNS, TimeSeries

SWEEP_COLUMNS = ("sigma", "n_points", "box_length", "n_steps", "i_hydro", "i_incoherent",
                 "e_condensate", "impulse", "norm_drift", "i_hydro_variant",
                 "i_incoherent_variant")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".17g")


def write_series_csv(path, series: TimeSeries):
    lines = [",".join(COLUMNS)]
    lines.extend(",".join(fmt(v) for v in row) for row in series.columns().tolist())
    Path(path).write_text("\n".join(lines) + "\n")


def read_series_csv(path) -> TimeSeries:
    rows = Path(path).read_text().strip().splitlines()
    if rows[0] != ",".join(COLUMNS):
        raise ValueError(f"unexpected CSV header {rows[0]!r}")
    cols = list(zip(*([float(v) for v in r.split(",")] for r in rows[1:])))
    return TimeSeries(*cols)


def write_sweep_csv(path, records):
    lines = [",".join(SWEEP_COLUMNS)]
    for r in records:
        lines.append(",".join(fmt(getattr(r, c)) for c in SWEEP_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")


def _clean(obj):
    if isinstance(obj, np.generic):
        obj = obj.item()
    # JSON has no NaN/Inf
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def write_report(path, kind: str, config: dict | None, body: dict, checks: dict | None = None,
                 warnings=None):
    doc = {
        "kind": kind,
        "version": __version__,
        "config": config,
        "warnings": list(warnings or []),
        "result": body,
    }
    if checks is not None:
        doc["checks"] = checks
    doc = _clean(doc)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
    return doc
