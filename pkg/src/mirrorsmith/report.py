"""Plain-text reports: one ``key: value`` line per entry, keys sorted."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def fmt_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, np.ndarray):
        v = v.tolist()
    if isinstance(v, (list, tuple)):
        if v and all(isinstance(r, (list, tuple, np.ndarray)) for r in v):
            return ";".join(fmt_value(list(r)) for r in v)
        return ",".join(fmt_value(x) for x in v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if hasattr(v, "numerator") and hasattr(v, "denominator") and not isinstance(v, int):
        n, d = int(v.numerator), int(v.denominator)
        return str(n) if d == 1 else f"{n}/{d}"
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return str(v)


def format_report(entries: dict) -> str:
    lines = [f"{k}: {fmt_value(entries[k])}" for k in sorted(entries)]
    return "\n".join(lines) + ("\n" if lines else "")
