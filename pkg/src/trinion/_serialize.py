"""JSON helpers: complex matrices as row-major arrays of [re, im] pairs."""

from __future__ import annotations

import numpy as np

from .errors import SchemaError


def matrix_to_json(m):
    m = np.asarray(m)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_json(rows):
    try:
        return np.array([[complex(a, b) for a, b in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed matrix payload: {exc}") from exc


def solution_to_json(sol):
    """MomentSolution payload: labels, points, residual, rank."""
    out = {
        "kind": sol.kind,
        "theta": [list(p.H.theta) for p in sol.points],
        "t": getattr(sol, "t", 0.0),
        "u": None if getattr(sol, "u", None) is None else np.asarray(sol.u).tolist(),
        "residual": sol.residual,
        "regularity_rank": sol.regularity_rank,
    }
    pts = []
    for p in sol.points:
        if sol.kind == "zero":
            pts.append({"X": matrix_to_json(p.X)})
        else:
            pts.append({"kstar": matrix_to_json(p.kstar.matrix)})
    out["points"] = pts
    return out
