"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients together with its variable count.
Monomials are compared in graded-lexicographic order everywhere an order is
needed (printing, leading terms, division).

The text grammar is ``3/2*x1^2*x2 - x3 + 1``: terms joined by ``+``/``-``,
factors joined by ``*``, variables ``x1..xn``.  :func:`format_poly` and
:func:`parse_poly` round-trip exactly.
"""
from __future__ import annotations

import heapq
from math import lcm
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from qvariety.errors import DimensionMismatch, ParseError, PreconditionError
from qvariety.kernels import mul_terms

Rational = Fraction
Exponents = tuple[int, ...]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def grlex_key(e: Exponents) -> tuple[int, Exponents]:
    return (sum(e), e)


class Poly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponents, object] | None = None):
        if nvars < 1:
            raise DimensionMismatch("a polynomial needs at least one variable")
        self.nvars = nvars
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise DimensionMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = as_fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponents, Fraction]) -> "Poly":
        # trusted constructor: keys have the right length, values are nonzero Fractions
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The coordinate function x_{i+1} (``i`` is zero-based)."""
        if not 0 <= i < nvars:
            raise DimensionMismatch(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> list["Poly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Poly":
        return cls(len(e), {tuple(e): c})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0."""
        return max((sum(e) for e in self._terms), default=0)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=0)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def leading_term(self) -> tuple[Exponents, Fraction]:
        if not self._terms:
            raise PreconditionError("the zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def used_variables(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(self._terms) == 1 or len(other._terms) == 1:
            return self._mul_small(other)
        return Poly._raw(self.nvars, mul_terms(self._terms, other._terms, self.nvars))

    __rmul__ = __mul__

    def _mul_small(self, other: "Poly") -> "Poly":
        a, b = (self, other) if len(self._terms) == 1 else (other, self)
        if not a._terms or not b._terms:
            return Poly.zero(self.nvars)
        (ea, ca), = a._terms.items()
        out = {}
        for e, c in b._terms.items():
            out[tuple(x + y for x, y in zip(e, ea))] = c * ca
        return Poly._raw(self.nvars, out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- evaluation and calculus -------------------------------------------

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return poly_eval(self, point)

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return Poly._raw(self.nvars, out)

    def homogeneous_parts(self) -> list["Poly"]:
        parts: list[dict] = [dict() for _ in range(self.degree + 1)]
        for e, c in self._terms.items():
            parts[sum(e)][e] = c
        return [Poly._raw(self.nvars, t) for t in parts]

    def top_form(self) -> "Poly":
        return self.homogeneous_parts()[-1]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # -- variable bookkeeping ----------------------------------------------

    def embed(self, nvars: int, offset: int = 0) -> "Poly":
        """Same polynomial read in ``nvars`` variables, variable i becoming i+offset."""
        if offset < 0 or offset + self.nvars > nvars:
            raise DimensionMismatch(f"cannot place {self.nvars} variables at offset {offset} in {nvars}")
        pre = (0,) * offset
        post = (0,) * (nvars - offset - self.nvars)
        return Poly._raw(nvars, {pre + e + post: c for e, c in self._terms.items()})

    def drop_variables(self, nvars: int) -> "Poly":
        """Restrict to the first ``nvars`` variables (the others must not occur)."""
        out = {}
        for e, c in self._terms.items():
            if any(e[nvars:]):
                raise DimensionMismatch("polynomial depends on a dropped variable")
            out[e[:nvars]] = c
        return Poly._raw(nvars, out)

    def substitute(self, values: Sequence["Poly"]) -> "Poly":
        """Polynomial composition p(values[0], ..., values[n-1])."""
        if len(values) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} substitutions, got {len(values)}")
        target = values[0].nvars if values else self.nvars
        for v in values:
            if v.nvars != target:
                raise DimensionMismatch("substituted polynomials must share a variable count")
        powers = _PowerCache(values)
        total = Poly.zero(target)
        acc: dict = {}
        for e, c in self._terms.items():
            term = Poly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * powers.get(i, k)
            for e2, c2 in term._terms.items():
                v = acc.get(e2, 0) + c2
                if v:
                    acc[e2] = v
                else:
                    acc.pop(e2, None)
        total = Poly._raw(target, acc)
        return total

    def partial_eval(self, assignments: Mapping[int, Fraction]) -> "Poly":
        """Fix some variables to rational values, keeping the variable count."""
        out: dict = {}
        for e, c in self._terms.items():
            e2 = list(e)
            for i, val in assignments.items():
                k = e2[i]
                if k:
                    c = c * as_fraction(val) ** k
                    e2[i] = 0
            if c:
                key = tuple(e2)
                v = out.get(key, 0) + c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Poly._raw(self.nvars, out)

    def translate(self, v: Sequence) -> "Poly":
        """The polynomial x -> p(x - v)."""
        if len(v) != self.nvars:
            raise DimensionMismatch(f"translation of length {len(v)} for {self.nvars} variables")
        xs = Poly.variables(self.nvars)
        return self.substitute([x - as_fraction(c) for x, c in zip(xs, v)])

    def coefficients_in(self, i: int) -> dict[int, "Poly"]:
        """Write p = sum_k c_k x_i^k; returns {k: c_k} with c_k free of x_i."""
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.nvars, t) for k, t in out.items()}

    def univariate_coefficients(self) -> list[Fraction]:
        """Dense coefficient list [c0, c1, ...] of a one-variable polynomial."""
        if self.nvars != 1:
            raise DimensionMismatch("univariate_coefficients needs a one-variable polynomial")
        out = [Fraction(0)] * (self.degree + 1)
        for (k,), c in self._terms.items():
            out[k] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs: Sequence) -> "Poly":
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})


class _PowerCache:
    def __init__(self, values: Sequence[Poly]):
        self.values = values
        self.cache: dict[tuple[int, int], Poly] = {}

    def get(self, i: int, k: int) -> Poly:
        key = (i, k)
        hit = self.cache.get(key)
        if hit is None:
            if k == 1:
                hit = self.values[i]
            else:
                half = self.get(i, k // 2)
                hit = half * half
                if k % 2:
                    hit = hit * self.values[i]
            self.cache[key] = hit
        return hit


# ---------------------------------------------------------------------------
# operations


def poly_eval(p: Poly, a: Sequence) -> Fraction:
    """Exact value p(a) at a rational point."""
    if len(a) != p.nvars:
        raise DimensionMismatch(f"point of dimension {len(a)} for a polynomial in {p.nvars} variables")
    a = [as_fraction(x) for x in a]
    # integer-scaled evaluation avoids a gcd per term
    dens = [x.denominator for x in a]
    nums = [x.numerator for x in a]
    total = Fraction(0)
    by_den: dict[int, int] = {}
    for e, c in p._terms.items():
        num = c.numerator
        den = c.denominator
        for x, d, k in zip(nums, dens, e):
            if k:
                num *= x ** k
                den *= d ** k
        by_den[den] = by_den.get(den, 0) + num
    for den, num in by_den.items():
        total += Fraction(num, den)
    return total


def gradient(p: Poly) -> list[Poly]:
    return [p.diff(i) for i in range(p.nvars)]


def homogeneous_parts(p: Poly) -> list[Poly]:
    return p.homogeneous_parts()


def divides(s: Poly, g: Poly) -> Poly | None:
    """Quotient q with g = q*s when s divides g, else None.

    Single-divisor division under graded-lex order; the remainder is zero iff
    g lies in the principal ideal (s).
    """
    if s.is_zero():
        raise PreconditionError("division by the zero polynomial")
    if s.nvars != g.nvars:
        raise DimensionMismatch("divisor and dividend live in different rings")
    lt_e, lt_c = s.leading_term()
    if g.is_zero():
        return Poly.zero(g.nvars)
    s_terms = list(s._terms.items())
    work = dict(g._terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in work]
    heapq.heapify(heap)
    quotient: dict = {}
    while work:
        _, neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = work.get(e)
        if c is None:
            continue
        if any(x < y for x, y in zip(e, lt_e)):
            return None
        m = tuple(x - y for x, y in zip(e, lt_e))
        coef = c / lt_c
        quotient[m] = coef
        for es, cs in s_terms:
            e2 = tuple(x + y for x, y in zip(m, es))
            v = work.get(e2)
            if v is None:
                work[e2] = -coef * cs
                heapq.heappush(heap, (-sum(e2), tuple(-x for x in e2)))
            else:
                v = v - coef * cs
                if v:
                    work[e2] = v
                else:
                    del work[e2]
    return Poly._raw(g.nvars, quotient)


def compose_clear(p: Poly, numerators: Sequence[Poly], denominator: Poly,
                  power_hint: int = 0) -> tuple[Poly, int]:
    """Clear denominators in p(numerators / denominator).

    Returns (N, c) with denominator**c * p(numerators/denominator) == N and
    c = max(deg p, power_hint).
    """
    if len(numerators) != p.nvars:
        raise DimensionMismatch(f"{len(numerators)} numerators for a polynomial in {p.nvars} variables")
    if denominator.is_zero():
        raise PreconditionError("zero denominator")
    target = denominator.nvars
    for q in numerators:
        if q.nvars != target:
            raise DimensionMismatch("numerators and denominator must share a variable count")
    c = max(p.degree, power_hint)
    parts = p.homogeneous_parts()
    powers = _PowerCache(list(numerators))
    den_pow = [Poly.const(1, target)]
    for _ in range(c):
        den_pow.append(den_pow[-1] * denominator)
    total = Poly.zero(target)
    for j, part in enumerate(parts):
        if part.is_zero():
            continue
        acc = Poly.zero(target)
        for e, coef in part._terms.items():
            term = Poly.const(coef, target)
            for i, k in enumerate(e):
                if k:
                    term = term * powers.get(i, k)
            acc = acc + term
        total = total + acc * den_pow[c - j]
    return total, c


# ---------------------------------------------------------------------------
# interval arithmetic


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return Interval(1, 1)
        lo_k, hi_k = self.lo ** k, self.hi ** k
        if k % 2:
            return Interval(lo_k, hi_k)
        if self.lo >= 0:
            return Interval(lo_k, hi_k)
        if self.hi <= 0:
            return Interval(hi_k, lo_k)
        return Interval(0, max(lo_k, hi_k))

    def contains(self, x) -> bool:
        return self.lo <= as_fraction(x) <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    @property
    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    @property
    def mig(self) -> Fraction:
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)


IntervalBound = Interval


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


def interval_eval(p: Poly, box: Sequence[Interval]) -> Interval:
    """Natural interval extension of p over a box (sound, not tight)."""
    if len(box) != p.nvars:
        raise DimensionMismatch(f"box of dimension {len(box)} for a polynomial in {p.nvars} variables")
    box = [_as_interval(b) for b in box]
    cache: dict[tuple[int, int], Interval] = {}
    lo = Fraction(0)
    hi = Fraction(0)
    for e, c in p._terms.items():
        t = Interval.point(c)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = box[i] ** k
                t = t * pw
        lo += t.lo
        hi += t.hi
    return Interval(lo, hi)


def taylor_coefficients(coeffs: Sequence[Fraction], center: Fraction) -> list[Fraction]:
    """Coefficients of p(center + t) from those of p(x) (Horner shift)."""
    a = list(coeffs)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += center * a[j + 1]
    return a


def interval_eval_centered(p: Poly, iv: Interval) -> Interval:
    """Centered-form enclosure of a one-variable polynomial over ``iv``.

    Much tighter than the natural extension on narrow intervals.
    """
    if p.nvars != 1:
        raise DimensionMismatch("centered form is implemented for one variable")
    iv = _as_interval(iv)
    m = iv.mid
    r = iv.width / 2
    a = taylor_coefficients(p.univariate_coefficients(), m)
    spread = Fraction(0)
    rk = Fraction(1)
    for c in a[1:]:
        rk *= r
        spread += abs(c) * rk
    return Interval(a[0] - spread, a[0] + spread)


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^()]))")


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(e: Exponents) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = format_monomial(e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_format_coef(mag)}*{mono}"
        else:
            body = _format_coef(mag)
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        pos = m.end()
        if m.group("num"):
            toks.append(("num", m.group("num")))
        elif m.group("var"):
            toks.append(("var", m.group("idx")))
        else:
            toks.append(("op", m.group("op")))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse the text grammar.  ``nvars`` defaults to the largest index used.

    Parentheses and integer powers of parenthesised groups are accepted as a
    convenience; the canonical printed form never uses them.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial text")
    toks = _tokenize(text)
    used = [int(v) for kind, v in toks if kind == "var"]
    if any(i < 1 for i in used):
        raise ParseError("variables are numbered from x1")
    top = max(used, default=1)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise ParseError(f"variable x{top} used but only {nvars} variables declared")
    parser = _Parser(toks, nvars)
    result = parser.expr()
    if parser.pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return result


class _Parser:
    def __init__(self, toks, nvars):
        self.toks = toks
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind} at token {self.pos}")
        self.pos += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        total = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> Poly:
        acc = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take("num")
            if "/" in val:
                raise ParseError("exponents must be nonnegative integers")
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            try:
                return Poly.const(Fraction(val), self.nvars)
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {val!r}") from None
        if kind == "var":
            self.take()
            return Poly.var(int(val) - 1, self.nvars)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Parse ``"3/5,4/5"`` into a tuple of Fractions."""
    if isinstance(text, (list, tuple)):
        return tuple(as_fraction(x) for x in text)
    items = [t for t in text.replace(" ", "").split(",") if t]
    if not items:
        raise ParseError("empty point")
    return tuple(as_fraction(t) for t in items)


def format_point(a: Iterable) -> str:
    return ",".join(_format_coef(as_fraction(x)) for x in a)


def format_rational(c) -> str:
    return _format_coef(as_fraction(c))


def sum_of_squares(polys: Iterable[Poly], nvars: int) -> Poly:
    total = Poly.zero(nvars)
    for p in polys:
        total = total + p * p
    return total


def norm_squared(nvars: int, start: int = 0, stop: int | None = None) -> Poly:
    """x_{start+1}^2 + ... + x_stop^2 as a polynomial in ``nvars`` variables."""
    stop = nvars if stop is None else stop
    total = {}
    for i in range(start, stop):
        e = [0] * nvars
        e[i] = 2
        total[tuple(e)] = Fraction(1)
    return Poly._raw(nvars, total)


def is_even_positive(p: Poly) -> bool:
    """Every term has a positive coefficient and only even exponents."""
    return all(c > 0 and all(x % 2 == 0 for x in e) for e, c in p._terms.items())


def certified_positive(p: Poly) -> bool:
    """Syntactic certificate that p > 0 on all of R^n.

    Accepts a positive constant plus a sum of even monomials with positive
    coefficients.
    """
    return p.constant_term > 0 and is_even_positive(p)


def _divisors(n: int, limit: int = 10 ** 7) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction] | None:
    """All rational roots of a one-variable polynomial (rational root test).

    Returns None when the coefficients are too large to enumerate divisors.
    """
    if p.nvars != 1:
        raise DimensionMismatch("rational_roots needs a one-variable polynomial")
    if p.is_zero():
        raise PreconditionError("the zero polynomial has every root")
    coeffs = p.univariate_coefficients()
    roots = []
    low = next(i for i, c in enumerate(coeffs) if c)
    if low:
        roots.append(Fraction(0))
        coeffs = coeffs[low:]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    if len(ints) == 1:
        return roots
    nums, dens = _divisors(ints[0]), _divisors(ints[-1])
    if nums is None or dens is None:
        return None
    found = set()
    for a in nums:
        for b in dens:
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in found and poly_eval(p, (cand,)) == 0:
                    found.add(cand)
    return sorted(set(roots) | found)
