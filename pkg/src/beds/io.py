"""Deterministic text formatting shared by CSV and JSON writers.

Reals are rendered with '.' decimals, no separators, and 17 significant
digits so every value round-trips exactly; outputs carry no timestamps,
making files byte-reproducible for identical inputs.
"""

from __future__ import annotations

import json
import math

__all__ = ["format_float", "json_dumps"]


def format_float(x: float) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _round_trip(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        return float(f"{obj:.17g}")
    if isinstance(obj, dict):
        return {k: _round_trip(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_trip(v) for v in obj]
    return obj


def json_dumps(obj) -> str:
    """Serialize with sorted keys and NaN mapped to null; ends with a newline."""

    return json.dumps(_round_trip(obj), indent=2, sort_keys=True) + "\n"
