"""JSON forms of data and results.

Rationals are written as ``"p/q"`` strings, floats with Python's shortest
round-trip repr, and documents are dumped with sorted keys so identical
inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra.exterior import parse_cup
from .algebra.graded import GradedUModule, GradedVectorSpace
from .floercore import DatumError, SimplestTypeDatum


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise DatumError(f"expected a rational string like '1/2', got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DatumError(f"bad rational {s!r}") from exc


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, GradedUModule):
        return umodule_to_json(obj)
    if isinstance(obj, GradedVectorSpace):
        return {str(d): r for d, r in obj.ranks}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def canonical_dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def umodule_to_json(m: GradedUModule) -> dict:
    return {
        "towers": [{"degree": d, "multiplicity": k} for d, k in m.tower_profile()],
        "reduced": [{"degree": d, "u_length": ell, "rank": r} for d, ell, r in m.torsion_profile()],
    }


def umodule_from_json(obj: dict) -> GradedUModule:
    towers = [t["degree"] for t in obj.get("towers", []) for _ in range(t["multiplicity"])]
    torsion = [(t["degree"], t["u_length"]) for t in obj.get("reduced", []) for _ in range(t["rank"])]
    return GradedUModule(tuple(towers), tuple(torsion))


def datum_to_json(d: SimplestTypeDatum) -> dict:
    return {
        "b1": d.b1,
        "cup": d.cup.to_text(),
        "h_minus": {str(k): r for k, r in d.h_minus.ranks},
        "inclusion": {
            str(k): [[rational_str(x) for x in row] for row in m] for k, m in sorted(d.inclusion.items())
        },
        "label": d.label,
    }


def datum_from_json(obj: dict) -> SimplestTypeDatum:
    for key in ("b1", "cup", "h_minus", "inclusion"):
        if key not in obj:
            raise DatumError(f"datum missing field {key!r}")
    b1 = obj["b1"]
    if not isinstance(b1, int) or isinstance(b1, bool):
        raise DatumError("b1 must be an integer")
    try:
        h_minus = GradedVectorSpace.from_mapping({int(k): int(v) for k, v in obj["h_minus"].items()})
        inclusion = {
            int(k): [[parse_rational(x) for x in row] for row in m] for k, m in obj["inclusion"].items()
        }
    except (AttributeError, TypeError) as exc:
        raise DatumError(f"malformed datum: {exc}") from exc
    return SimplestTypeDatum(b1, parse_cup(obj["cup"], b1), h_minus, inclusion, str(obj.get("label", "")))


def dump_datum(d: SimplestTypeDatum) -> str:
    return canonical_dumps(datum_to_json(d))


def load_datum(text: str) -> SimplestTypeDatum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatumError(f"datum is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DatumError("datum must be a JSON object")
    return datum_from_json(obj)
