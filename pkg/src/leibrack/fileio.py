"""The .leib algebra file format: JSON with exact rational coefficients.

    {
      "dim": 5,
      "basis": ["e1", "e2", "e3", "e4", "e5"],   // optional
      "brackets": [
        {"left": 0, "right": 1, "value": {"2": "1"}},
        {"left": 0, "right": 2, "value": {"3": "1/2"}}
      ]
    }

Indices are 0-based; omitted pairs mean a zero bracket; coefficients are
integers or "p/q" strings (never floats, so exact input stays exact).
Serialization is canonical (sorted, minimal) so parse/serialize round-trips
are byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra import LeibnizAlgebra


class ParseError(ValueError):
    """Malformed algebra file."""


def algebra_to_dict(alg: LeibnizAlgebra) -> dict:
    brackets = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            value = {str(k): str(c) for k, c in enumerate(alg.c[i][j]) if c != 0}
            if value:
                brackets.append({"left": i, "right": j, "value": value})
    return {"dim": alg.dim, "basis": list(alg.basis_names), "brackets": brackets}


def algebra_from_dict(doc: dict, check: bool = True) -> LeibnizAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or invalid 'dim'") from None
    if dim < 1:
        raise ParseError("'dim' must be a positive integer")
    basis = doc.get("basis")
    if basis is not None:
        if not isinstance(basis, list) or len(basis) != dim or \
                not all(isinstance(b, str) for b in basis):
            raise ParseError("'basis' must list one name per dimension")
    entries = doc.get("brackets", [])
    if not isinstance(entries, list):
        raise ParseError("'brackets' must be a list")
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for pos, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ParseError(f"brackets[{pos}] must be an object")
        try:
            i, j = int(entry["left"]), int(entry["right"])
            value = entry["value"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"brackets[{pos}] needs integer 'left'/'right' and a 'value'") from None
        if not (0 <= i < dim and 0 <= j < dim):
            raise ParseError(f"brackets[{pos}]: index out of range")
        if not isinstance(value, dict):
            raise ParseError(f"brackets[{pos}]: 'value' must map indices to coefficients")
        for key, coeff in value.items():
            try:
                k = int(key)
            except ValueError:
                raise ParseError(f"brackets[{pos}]: bad index {key!r}") from None
            if not 0 <= k < dim:
                raise ParseError(f"brackets[{pos}]: index {k} out of range")
            if isinstance(coeff, float):
                raise ParseError(f"brackets[{pos}]: floats not accepted, "
                                 "use integer or 'p/q' strings")
            try:
                c[i][j][k] += Fraction(coeff)
            except (ValueError, TypeError, ZeroDivisionError):
                raise ParseError(f"brackets[{pos}]: bad coefficient {coeff!r}") from None
    # a ValidationError from the Leibniz check propagates unchanged
    return LeibnizAlgebra.from_structure(c, basis_names=basis, check=check)


def parse_algebra_file(path, check: bool = True) -> LeibnizAlgebra:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None
    return algebra_from_dict(doc, check=check)


def write_algebra_file(alg: LeibnizAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_dict(alg), indent=2) + "\n")
