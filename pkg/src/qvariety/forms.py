"""Structural overt polynomials.

The combinators on projectively closed sets produce polynomials such as
``p**(2*l + 2) + q**2`` whose expansion is far too large to write down for
the Grassmannians and their products.  An :class:`OvertForm` keeps the
construction as a tree instead.  Each node knows its variable count, degree
and exact value at a point, and can be expanded when it is small.

Node shapes:

``Leaf(p)``                 the polynomial p
``Product(a, b)``           a * b                 (union)
``SumPow(a, e, b, d)``      a**(2e) + b**(2d)     (product, disjoint variables)
``Intersect(a, l, q)``      a**(2l + 2) + q**2    (intersection, l = deg q)
``Translate(a, v)``         a(x - v)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from qvariety.errors import DimensionMismatch, ParseError
from qvariety.ratpoly import Poly, as_fraction, format_poly, format_rational, parse_poly, poly_eval


@dataclass(frozen=True)
class Leaf:
    poly: Poly

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass(frozen=True)
class Product:
    left: "OvertForm"
    right: "OvertForm"

    def __post_init__(self):
        if self.left.nvars != self.right.nvars:
            raise DimensionMismatch("product factors must share a variable count")

    @property
    def nvars(self) -> int:
        return self.left.nvars

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree


@dataclass(frozen=True)
class SumPow:
    """left**(2e) + right**(2d) with d = deg left and e = deg right."""

    left: "OvertForm"
    e: int
    right: "OvertForm"
    d: int

    def __post_init__(self):
        if self.left.nvars != self.right.nvars:
            raise DimensionMismatch("summands must share a variable count")

    @property
    def nvars(self) -> int:
        return self.left.nvars

    @property
    def degree(self) -> int:
        return max(2 * self.e * self.left.degree, 2 * self.d * self.right.degree)


@dataclass(frozen=True)
class Intersect:
    """base**(2*ell + 2) + q**2."""

    base: "OvertForm"
    ell: int
    q: Poly

    def __post_init__(self):
        if self.base.nvars != self.q.nvars:
            raise DimensionMismatch("intersection parts must share a variable count")

    @property
    def nvars(self) -> int:
        return self.q.nvars

    @property
    def degree(self) -> int:
        return max((2 * self.ell + 2) * self.base.degree, 2 * self.q.degree)


@dataclass(frozen=True)
class Translate:
    base: "OvertForm"
    v: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(as_fraction(x) for x in self.v))
        if len(self.v) != self.base.nvars:
            raise DimensionMismatch("translation length differs from the variable count")

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def degree(self) -> int:
        return self.base.degree


OvertForm = Union[Leaf, Product, SumPow, Intersect, Translate]


def translate_form(form: OvertForm, v: Sequence) -> OvertForm:
    """Translate, merging nested translations and dropping zero shifts."""
    v = tuple(as_fraction(x) for x in v)
    if isinstance(form, Translate):
        v = tuple(a + b for a, b in zip(form.v, v))
        form = form.base
    if not any(v):
        return form
    return Translate(form, v)


def evaluate(form: OvertForm, point: Sequence) -> Fraction:
    """Exact value at a rational point, without expanding."""
    point = [as_fraction(x) for x in point]
    if len(point) != form.nvars:
        raise DimensionMismatch(f"point of dimension {len(point)} for a form in {form.nvars} variables")
    return _eval(form, point)


def _eval(form, point):
    if isinstance(form, Leaf):
        return poly_eval(form.poly, point)
    if isinstance(form, Product):
        return _eval(form.left, point) * _eval(form.right, point)
    if isinstance(form, SumPow):
        return _eval(form.left, point) ** (2 * form.e) + _eval(form.right, point) ** (2 * form.d)
    if isinstance(form, Intersect):
        return _eval(form.base, point) ** (2 * form.ell + 2) + poly_eval(form.q, point) ** 2
    if isinstance(form, Translate):
        return _eval(form.base, [a - b for a, b in zip(point, form.v)])
    raise TypeError(f"not an overt form: {form!r}")


def expand(form: OvertForm, max_degree: int = 40) -> Poly:
    """Multiply everything out.  Refuses forms above ``max_degree``."""
    if form.degree > max_degree:
        raise ValueError(f"refusing to expand a form of degree {form.degree}")
    return _expand(form)


def _expand(form) -> Poly:
    if isinstance(form, Leaf):
        return form.poly
    if isinstance(form, Product):
        return _expand(form.left) * _expand(form.right)
    if isinstance(form, SumPow):
        return _expand(form.left) ** (2 * form.e) + _expand(form.right) ** (2 * form.d)
    if isinstance(form, Intersect):
        return _expand(form.base) ** (2 * form.ell + 2) + form.q * form.q
    if isinstance(form, Translate):
        return _expand(form.base).translate(form.v)
    raise TypeError(f"not an overt form: {form!r}")


def embed(form: OvertForm, nvars: int, offset: int) -> OvertForm:
    """Read the form in ``nvars`` variables, shifting variable i to i+offset."""
    if isinstance(form, Leaf):
        return Leaf(form.poly.embed(nvars, offset))
    if isinstance(form, Product):
        return Product(embed(form.left, nvars, offset), embed(form.right, nvars, offset))
    if isinstance(form, SumPow):
        return SumPow(embed(form.left, nvars, offset), form.e, embed(form.right, nvars, offset), form.d)
    if isinstance(form, Intersect):
        return Intersect(embed(form.base, nvars, offset), form.ell, form.q.embed(nvars, offset))
    if isinstance(form, Translate):
        v = [Fraction(0)] * nvars
        v[offset:offset + form.nvars] = form.v
        return translate_form(embed(form.base, nvars, offset), v)
    raise TypeError(f"not an overt form: {form!r}")


def used_variables(form: OvertForm) -> set[int]:
    if isinstance(form, Leaf):
        return form.poly.used_variables()
    if isinstance(form, (Product, SumPow)):
        return used_variables(form.left) | used_variables(form.right)
    if isinstance(form, Intersect):
        return used_variables(form.base) | form.q.used_variables()
    if isinstance(form, Translate):
        return used_variables(form.base)
    raise TypeError(f"not an overt form: {form!r}")


def top_form_factors(form: OvertForm) -> dict:
    """Describe the top homogeneous form structurally (as nested JSON).

    Translation leaves the top form unchanged; the other rules follow from
    the degree bookkeeping of each node.
    """
    if isinstance(form, Leaf):
        return {"form": format_poly(form.poly.top_form())}
    if isinstance(form, Product):
        return {"product": [top_form_factors(form.left), top_form_factors(form.right)]}
    if isinstance(form, SumPow):
        return {"sum": [{"power": 2 * form.e, "of": top_form_factors(form.left)},
                        {"power": 2 * form.d, "of": top_form_factors(form.right)}]}
    if isinstance(form, Intersect):
        return {"power": 2 * form.ell + 2, "of": top_form_factors(form.base)}
    if isinstance(form, Translate):
        return top_form_factors(form.base)
    raise TypeError(f"not an overt form: {form!r}")


def structural_top_form(form: OvertForm, max_degree: int = 40) -> Poly:
    """Top form computed from the node rules (small forms only)."""
    if form.degree > max_degree:
        raise ValueError(f"refusing to expand a top form of degree {form.degree}")
    return _top(form)


def _top(form) -> Poly:
    if isinstance(form, Leaf):
        return form.poly.top_form()
    if isinstance(form, Product):
        return _top(form.left) * _top(form.right)
    if isinstance(form, SumPow):
        a = _top(form.left) ** (2 * form.e)
        b = _top(form.right) ** (2 * form.d)
        if a.degree != b.degree:
            return a if a.degree > b.degree else b
        return a + b
    if isinstance(form, Intersect):
        a = _top(form.base) ** (2 * form.ell + 2)
        if a.degree > 2 * form.q.degree:
            return a
        return _expand(form).top_form()
    if isinstance(form, Translate):
        return _top(form.base)
    raise TypeError(f"not an overt form: {form!r}")


# ---------------------------------------------------------------------------
# JSON


def to_json(form: OvertForm) -> dict:
    if isinstance(form, Leaf):
        return {"node": "leaf", "poly": format_poly(form.poly)}
    if isinstance(form, Product):
        return {"node": "product", "left": to_json(form.left), "right": to_json(form.right)}
    if isinstance(form, SumPow):
        return {"node": "sumpow", "left": to_json(form.left), "e": form.e,
                "right": to_json(form.right), "d": form.d}
    if isinstance(form, Intersect):
        return {"node": "intersect", "base": to_json(form.base), "ell": form.ell,
                "q": format_poly(form.q)}
    if isinstance(form, Translate):
        return {"node": "translate", "base": to_json(form.base),
                "v": [format_rational(x) for x in form.v]}
    raise TypeError(f"not an overt form: {form!r}")


def from_json(doc: dict, nvars: int) -> OvertForm:
    try:
        kind = doc["node"]
        if kind == "leaf":
            return Leaf(parse_poly(doc["poly"], nvars))
        if kind == "product":
            return Product(from_json(doc["left"], nvars), from_json(doc["right"], nvars))
        if kind == "sumpow":
            return SumPow(from_json(doc["left"], nvars), int(doc["e"]),
                          from_json(doc["right"], nvars), int(doc["d"]))
        if kind == "intersect":
            return Intersect(from_json(doc["base"], nvars), int(doc["ell"]), parse_poly(doc["q"], nvars))
        if kind == "translate":
            return Translate(from_json(doc["base"], nvars), tuple(as_fraction(x) for x in doc["v"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed overt form: {exc}") from exc
    raise ParseError(f"unknown overt form node {doc.get('node')!r}")
