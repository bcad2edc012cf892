"""JSON documents for sets, maps and construction results.

Field order is fixed so that printing a parsed document reproduces it byte
for byte.
"""
from __future__ import annotations

import json
from typing import Any

from qvariety import forms
from qvariety.errors import ParseError
from qvariety.interp import RegularFunction1D
from qvariety.qset import DivisibilityWitness, QAlgebraicSet, QRegularMap
from qvariety.ratpoly import Poly, as_fraction, format_point, format_poly, parse_point, parse_poly


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _require(doc: dict, key: str, kind: type | tuple, what: str):
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be a JSON object")
    if key not in doc:
        raise ParseError(f"{what} is missing {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise ParseError(f"{what}: {key!r} has the wrong type")
    return value


# ---------------------------------------------------------------------------
# sets


def set_to_json(V: QAlgebraicSet) -> dict:
    doc: dict = {"ambient_dim": V.ambient_dim, "generators": [format_poly(g) for g in V.generators]}
    if V.claimed_dim is not None:
        doc["claimed_dim"] = V.claimed_dim
    cert: dict = {}
    if V.overt is not None:
        cert["overt"] = forms.to_json(V.overt)
    cert["notes"] = list(V.notes)
    doc["certificates"] = cert
    return doc


def set_from_json(doc: dict) -> QAlgebraicSet:
    n = _require(doc, "ambient_dim", int, "set")
    gens = _require(doc, "generators", list, "set")
    if not all(isinstance(g, str) for g in gens):
        raise ParseError("set generators must be polynomial strings")
    claimed = doc.get("claimed_dim")
    if claimed is not None and (not isinstance(claimed, int) or isinstance(claimed, bool)):
        raise ParseError("claimed_dim must be an integer")
    cert = doc.get("certificates", {})
    if not isinstance(cert, dict):
        raise ParseError("certificates must be a JSON object")
    overt = forms.from_json(cert["overt"], n) if cert.get("overt") is not None else None
    notes = cert.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(x, str) for x in notes):
        raise ParseError("notes must be a list of strings")
    return QAlgebraicSet(n, tuple(parse_poly(g, n) for g in gens), claimed, overt, tuple(notes))


# ---------------------------------------------------------------------------
# maps


def map_to_json(f: QRegularMap) -> dict:
    doc: dict = {
        "domain": set_to_json(f.domain),
        "numerators": [format_poly(p) for p in f.numerators],
        "denominator": format_poly(f.denominator),
        "nonvanishing": f.nonvanishing,
    }
    if f.samples:
        doc["samples"] = [format_point(a) for a in f.samples]
    if f.provenance:
        doc["provenance"] = f.provenance
    return doc


def map_from_json(doc: dict) -> QRegularMap:
    domain = set_from_json(_require(doc, "domain", dict, "map"))
    n = domain.ambient_dim
    nums = _require(doc, "numerators", list, "map")
    den = _require(doc, "denominator", str, "map")
    tag = doc.get("nonvanishing", "asserted")
    samples = doc.get("samples", [])
    if not isinstance(samples, list):
        raise ParseError("samples must be a list of points")
    pts = tuple(parse_point(a) if isinstance(a, str) else tuple(as_fraction(x) for x in a) for a in samples)
    return QRegularMap(domain, tuple(parse_poly(p, n) for p in nums), parse_poly(den, n), tag, pts,
                       doc.get("provenance", ""))


def regular_function_from_json(doc: dict) -> RegularFunction1D:
    num = _require(doc, "numerator", str, "regular function")
    e = _require(doc, "denom_power", int, "regular function")
    return RegularFunction1D(parse_poly(num, 1), e)


# ---------------------------------------------------------------------------
# witnesses and results


def divisibility_to_json(w: DivisibilityWitness) -> dict:
    return {
        "label": w.label,
        "divisor": format_poly(w.divisor),
        "quotient": format_poly(w.quotient),
        "verified": w.verify(),
    }


def kind_of(doc: dict) -> str:
    if isinstance(doc, dict):
        if "ambient_dim" in doc:
            return "set"
        if "domain" in doc:
            return "map"
        if "numerator" in doc and "denom_power" in doc:
            return "function"
    raise ParseError("document is neither a set, a map nor a one-variable function")


def from_json(doc: dict):
    kind = kind_of(doc)
    if kind == "set":
        return set_from_json(doc)
    if kind == "map":
        return map_from_json(doc)
    return regular_function_from_json(doc)


def to_json(obj) -> dict:
    if isinstance(obj, QAlgebraicSet):
        return set_to_json(obj)
    if isinstance(obj, QRegularMap):
        return map_to_json(obj)
    if isinstance(obj, RegularFunction1D):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def roundtrip(text: str) -> str:
    """Parse a document and print it again; stable after the first print."""
    return dumps(to_json(from_json(loads(text))))


def read_poly_text(text: str, nvars: int | None = None) -> Poly:
    return parse_poly(text.strip(), nvars)
