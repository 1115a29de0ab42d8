"""Canonical report serialization.

JSON reports are emitted with sorted keys, two-space indentation, and
shortest round-trip float repr, so parsing an emitted report and
re-serializing it reproduces the bytes; complex numbers appear as
two-element [re, im] arrays.  CSV is reserved for convergence tables
with the fixed column order n, grid_param, topology, delta, verdict.
"""

from __future__ import annotations

import dataclasses
import io
import json
import math
from typing import Any

import numpy as np

from .topology import ConvergenceReport

__all__ = [
    "to_jsonable",
    "dump_json",
    "convergence_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("n", "grid_param", "topology", "delta", "verdict")


def to_jsonable(obj: Any) -> Any:
    """Recursively convert values to plain JSON types.

    Complex numbers become [re, im]; numpy scalars become Python scalars;
    dataclasses become dicts; non-finite floats are rejected (reports must
    not carry NaN or inf).
    """
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float in report: {obj}")
        return obj
    if isinstance(obj, complex):
        if obj.imag == 0.0:
            return to_jsonable(obj.real)
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return to_jsonable(float(obj))
    if isinstance(obj, (np.complexfloating,)):
        return to_jsonable(complex(obj))
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for f in dataclasses.fields(obj):
            name = f.name
            if name.startswith("_"):
                continue
            out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if callable(obj):
        return getattr(obj, "__name__", "<callable>")
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dump_json(obj: Any) -> str:
    """Canonical JSON text: sorted keys, indent 2, trailing newline."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _param_str(p: float | complex | None) -> str:
    if p is None:
        return ""
    if isinstance(p, complex):
        if p.imag == 0.0:
            return repr(p.real)
        return f"{p.real!r}{p.imag:+}j"
    return repr(p)


def convergence_csv(report: ConvergenceReport) -> str:
    """One row per tested n with the fixed column order.

    grid_param holds the location of the per-n sup for grid measurements
    and stays empty for single-parameter measurements.
    """
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    verdict = str(report.verdict)
    for i, n in enumerate(report.n_grid):
        param = ""
        if report.argmax_param is not None:
            param = _param_str(report.argmax_param[i])
        buf.write(f"{n},{param},{report.topology},{report.delta[i]!r},{verdict}\n")
    return buf.getvalue()
