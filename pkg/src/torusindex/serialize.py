"""JSON encodings shared by the CLI and the ``to_json`` methods."""

from __future__ import annotations

import json
from fractions import Fraction

from torusindex.scalar import ExactScalar, NumericScalar


def scalar_to_json(c):
    if isinstance(c, NumericScalar):
        return {"re": c.value.real, "im": c.value.imag}
    return str(c)


def series_to_json(s):
    """``[{order, coeff}]`` sorted by order."""
    return [{"order": n, "coeff": scalar_to_json(c)} for n, c in s.items()]


def real_series_to_json(rs):
    out = []
    for n, c in sorted(rs.coeffs.items()):
        exact = getattr(c, "is_rational", lambda: False)()
        out.append({"order": n, "value": float(c),
                    "exact": str(c.to_fraction()) if exact else None})
    return out


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (ExactScalar, NumericScalar)):
        return scalar_to_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report):
    """Deterministic text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n"


__all__ = ["series_to_json", "scalar_to_json", "real_series_to_json", "dumps"]
