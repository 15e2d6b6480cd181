"""JSON instance files.

Example layout::

    {
      "k": 9,
      "threshold": {"num": 1, "den": 2},
      "comparison": "strict",
      "agenda": [1, 1, 1],
      "budget": 300,
      "probabilities": [[8, 3, 5], [4, 7, 4]],
      "costs": [[[null, ..., 0, 100, 140], ...], ...]
    }

``weights`` and ``objective`` are optional and go together.  Probabilities
are integer grid levels and the threshold is an integer fraction, so no
floating point number appears anywhere in a file.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .model import Comparison, Instance, validate_instance

REQUIRED = ("k", "threshold", "comparison", "agenda", "budget", "probabilities", "costs")


def _int(value, field):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"expected an integer, got {value!r}", field)
    return value


def _price(value, field):
    if value is None:
        return None
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise ParseError(f"bad price {value!r}", field) from None
    return _int(value, field)


def _list(value, field):
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", field)
    return value


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in REQUIRED:
        if key not in doc:
            raise ParseError("missing required key", key)
    unknown = set(doc) - set(REQUIRED) - {"weights", "objective"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")

    t = doc["threshold"]
    if not isinstance(t, dict) or set(t) != {"num", "den"}:
        raise ParseError("expected {num, den}", "threshold")
    den = _int(t["den"], "threshold.den")
    if den == 0:
        raise ParseError("zero denominator", "threshold.den")
    threshold = Fraction(_int(t["num"], "threshold.num"), den)
    try:
        comparison = Comparison(doc["comparison"])
    except ValueError:
        raise ParseError(f"expected 'strict' or 'weak', got {doc['comparison']!r}", "comparison") from None

    agenda = [_int(z, f"agenda[{j}]") for j, z in enumerate(_list(doc["agenda"], "agenda"))]
    prob = [
        [_int(a, f"probabilities[{i}][{j}]") for j, a in enumerate(_list(row, f"probabilities[{i}]"))]
        for i, row in enumerate(_list(doc["probabilities"], "probabilities"))
    ]
    cost = [
        [
            [_price(c, f"costs[{i}][{j}][{lvl}]") for lvl, c in enumerate(_list(entries, f"costs[{i}][{j}]"))]
            for j, entries in enumerate(_list(rows, f"costs[{i}]"))
        ]
        for i, rows in enumerate(_list(doc["costs"], "costs"))
    ]
    weights = doc.get("weights")
    if weights is not None:
        weights = [_int(w, f"weights[{j}]") for j, w in enumerate(_list(weights, "weights"))]
    objective = doc.get("objective")
    if objective is not None:
        objective = _int(objective, "objective")

    inst = Instance(
        k=_int(doc["k"], "k"),
        prob=prob,
        cost=cost,
        agenda=agenda,
        threshold=threshold,
        comparison=comparison,
        budget=_int(doc["budget"], "budget"),
        weights=weights,
        objective=objective,
    )
    return validate_instance(inst)


def parse_instance(text: str) -> Instance:
    """Parse and validate an instance document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc)


def _price_out(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else int(c)
    return c


def instance_to_dict(inst: Instance) -> dict:
    doc = {
        "k": inst.k,
        "threshold": {"num": inst.threshold.numerator, "den": inst.threshold.denominator},
        "comparison": inst.comparison.value,
        "agenda": list(inst.agenda),
        "budget": inst.budget,
        "probabilities": [list(r) for r in inst.prob],
        "costs": [[[_price_out(c) for c in row] for row in rows] for rows in inst.cost],
    }
    if inst.weights is not None:
        doc["weights"] = list(inst.weights)
        doc["objective"] = inst.objective
    return doc


def serialize_instance(inst: Instance) -> str:
    doc = instance_to_dict(inst)
    lines = []
    for key, value in doc.items():
        if key == "costs":
            voters = ",\n    ".join(json.dumps(v) for v in value)
            lines.append(f'  "costs": [\n    {voters}\n  ]')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"
