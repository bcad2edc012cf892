"""Blow-down adjunction, inversion compactification and the stereographic lift.

Blow-down.  Given an overt s with X = Z(s) not containing 0, Y = Z(t) and a
map p = (p_1, ..., p_m)/q on X, let T = C2 * t(y) and extend p to
p' = p_i q / Q with Q = q^2 + s^(2b), b minimal so that D = deg Q exceeds
every deg(p_i q).  Writing F^h for the homogenisation of F with the extra
variable T, substituting x -> x/T gives

    C2 * t^(2d) * (|y - p'(x/T)|^2 + s(x/T)^2)
        = C2^(1-2d) * R / (Q^h)^2,
    R = T^(2d) * sum_i (y_i Q^h - (p_i q)^h)^2 + (Q^h)^2 (s^h)^2,

where the homogenisations have degrees D, D and d = deg s.  The polynomial
r(x, y) = R(x, y, C2 t(y)) has the same real zero set as the rational
expression, because Q^h does not vanish there.  When p is identically zero
the expression simplifies to R = T^(2d) |y|^2 + (s^h)^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from qvariety.errors import PreconditionError
from qvariety.overt import overtness
from qvariety.qset import (
    ASSERTED,
    DivisibilityWitness,
    QAlgebraicSet,
    QRegularMap,
    _tag_for,
)
from qvariety.ratpoly import (
    Poly,
    as_fraction,
    compose_clear,
    divides,
    format_poly,
    format_rational,
    norm_squared,
    poly_eval,
    rational_roots,
)


@dataclass(frozen=True)
class Witness:
    """A named check with its outcome; ``verdict`` is None when vacuous-unknown."""

    name: str
    verdict: bool | None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


def homogenize(p: Poly, degree: int, nvars: int, slot: int) -> Poly:
    """sum_j p_j(x) * T^(degree - j), with T the variable at index ``slot``."""
    if degree < p.degree:
        raise PreconditionError("homogenisation degree below the polynomial degree")
    out = {}
    pad = nvars - p.nvars
    for e, c in p.terms.items():
        key = list(e) + [0] * pad
        key[slot] += degree - sum(e)
        out[tuple(key)] = c
    return Poly(nvars, out)


# ---------------------------------------------------------------------------
# blow-down


@dataclass(frozen=True)
class BlowDownResult:
    V: QAlgebraicSet
    r: Poly
    f: QRegularMap
    g: QRegularMap
    f_inverse: QRegularMap
    witnesses: tuple[Witness, ...]
    divisibility: tuple[DivisibilityWitness, ...]
    bookkeeping: dict

    @property
    def ok(self) -> bool:
        return all(w.verdict is not False for w in self.witnesses)


def _extension_exponent(s: Poly, q: Poly, numerators: Sequence[Poly]) -> tuple[int, int]:
    top = max(p.degree for p in numerators)
    d = s.degree
    b = 1
    while max(2 * q.degree, 2 * b * d) <= top:
        b += 1
    return b, max(2 * q.degree, 2 * b * d)


def _pbar(s: Poly, q: Poly, numerators: Sequence[Poly]):
    """Numerators p_i q and denominator q^2 + s^(2b) of the global extension."""
    nums = [p * q for p in numerators]
    b, D = _extension_exponent(s, q, nums)
    return nums, q * q + s ** (2 * b), b, D


def adjunction_polynomial(s: Poly, t: Poly, p: QRegularMap, C2) -> tuple[Poly, Poly, Poly, dict]:
    """(r, R, Q_top, bookkeeping); R is the polynomial in (x, y, T) before T = C2 t(y)."""
    C2 = as_fraction(C2)
    n, m = s.nvars, t.nvars
    d = s.degree
    total = n + m + 1
    T = Poly.var(n + m, total)
    ys = [Poly.var(n + i, total) for i in range(m)]
    Sh = homogenize(s, d, total, n + m)
    book: dict = {"d": d, "scale": format_rational(C2 ** (1 - 2 * d))}
    if all(pi.is_zero() for pi in p.numerators):
        y2 = Poly.zero(total)
        for y in ys:
            y2 = y2 + y * y
        R = T ** (2 * d) * y2 + Sh * Sh
        book.update({"b": None, "D": None, "cleared_denominator": "1"})
        top = Poly.const(1, n)
    else:
        nums, Q, b, D = _pbar(s, p.denominator, p.numerators)
        Qh = homogenize(Q, D, total, n + m)
        acc = Poly.zero(total)
        for y, N in zip(ys, nums):
            diff = y * Qh - homogenize(N, D, total, n + m)
            acc = acc + diff * diff
        R = T ** (2 * d) * acc + Qh * Qh * Sh * Sh
        book.update({"b": b, "D": D, "cleared_denominator": "(Q^h)^2",
                     "Q": format_poly(Q)})
        top = Q.top_form()
    subs = Poly.variables(n + m) + [t.embed(n + m, n).scale(C2)]
    r = R.substitute(subs)
    book["Q_top"] = format_poly(top)
    return r, R, top, book


def _t_of_p(t: Poly, p: QRegularMap) -> tuple[Poly, int]:
    return compose_clear(t, p.numerators, p.denominator, 0)


def blow_down(s: Poly, t: Poly, p: QRegularMap, C2, y_samples: Sequence = ()) -> BlowDownResult:
    C2 = as_fraction(C2)
    n, m = s.nvars, t.nvars
    if C2 == 0:
        raise PreconditionError("C2 must be nonzero")
    if s.constant_term == 0:
        raise PreconditionError("s(0) = 0: translate X away from the origin first")
    if s.degree < 1:
        raise PreconditionError("s must be nonconstant")
    verdict = overtness(s)
    if not verdict.is_overt:
        raise PreconditionError(f"s is not certified overt ({verdict.outcome})")
    if p.nvars != n:
        raise PreconditionError(f"p is defined on R^{p.nvars}, s on R^{n}")
    if p.arity != m:
        raise PreconditionError(f"p has {p.arity} components, t has {m} variables")

    r, R, qtop, book = adjunction_polynomial(s, t, p, C2)
    X = QAlgebraicSet(n, (s,))
    Y = QAlgebraicSet(m, (t,))
    V = QAlgebraicSet(n + m, (r,))

    # f(x) = (x * C2 t(p(x)), p(x)) over the common denominator q^c
    q = p.denominator
    Nt, ct = _t_of_p(t, p)
    c = max(ct, 1)
    xs = Poly.variables(n)
    first = [x * Nt.scale(C2) * q ** (c - ct) for x in xs]
    rest = [pi * q ** (c - 1) for pi in p.numerators]
    den = q ** c
    tag, smp = _tag_for(den, p.samples)
    f = QRegularMap(X, tuple(first + rest), den, tag, smp, provenance="x -> (x C2 t(p(x)), p(x))")

    zero = Poly.zero(m)
    g = QRegularMap.polynomial(Y, [zero] * n + Poly.variables(m))
    total = n + m
    f_inv = QRegularMap(QAlgebraicSet.full_space(total), tuple(Poly.variables(total)[:n]),
                        t.embed(total, n).scale(C2), ASSERTED,
                        provenance="defined where t(y) != 0")

    witnesses = []
    divisibility = []

    # (i) f(X) lies in Z(r): s divides the cleared numerator of r o f
    rf, _ = compose_clear(r, f.numerators, f.denominator, 0)
    quotient = divides(s, rf)
    if quotient is not None:
        divisibility.append(DivisibilityWitness(s, rf, quotient, "s | numerator(r o f)"))
    witnesses.append(Witness("s-divides-r-of-f", quotient is not None,
                             {"numerator_degree": rf.degree, "numerator_terms": len(rf)}))

    # (ii) f' o f = id, cross-multiplied
    ff = _compose_unchecked(f_inv, f)
    zero_ok = all((num - x * ff[1]).is_zero() for num, x in zip(ff[0], xs))
    vacuous = ff[1].is_zero()
    witnesses.append(Witness("inverse-identity", zero_ok,
                             {"vacuous": vacuous, "note": "t(p(x)) vanishes identically" if vacuous else ""}))

    # (iii) R(x, y, 0) = Q_top(x)^2 s_d(x)^2 and r(0, y) = 0 on Y
    full = n + m + 1
    at_zero = R.partial_eval({n + m: 0})
    sd = s.top_form().embed(full, 0)
    qt = qtop.embed(full, 0)
    expected = qt * qt * sd * sd
    sym_ok = at_zero == expected
    samples = list(y_samples)
    if not samples and m == 1:
        samples = [(y,) for y in (rational_roots(t) or [])]
    on_y = [tuple(as_fraction(c) for c in y) for y in samples if poly_eval(t, y) == 0]
    origin = [Fraction(0)] * n
    pts_ok = all(poly_eval(r, origin + list(y)) == 0 for y in on_y)
    witnesses.append(Witness("fiber-over-Y", sym_ok and pts_ok,
                             {"symbolic": sym_ok, "points_checked": len(on_y), "points_ok": pts_ok}))
    book["t_p_power"] = c
    return BlowDownResult(V, r, f, g, f_inv, tuple(witnesses), tuple(divisibility), book)


def _compose_unchecked(g: QRegularMap, f: QRegularMap) -> tuple[list[Poly], Poly]:
    """Cleared numerators and denominator of g o f, allowing a zero denominator."""
    c = max([p.degree for p in g.numerators] + [g.denominator.degree])
    nums = [compose_clear(p, f.numerators, f.denominator, c)[0] for p in g.numerators]
    den, _ = compose_clear(g.denominator, f.numerators, f.denominator, c)
    return nums, den


def adjunction(s: Poly, a: Poly, t: Poly, p: QRegularMap, C1, C2, y_samples: Sequence = ()) -> BlowDownResult:
    """Reduce to the claim: P' = (p_i q/(a^2+q^2), C1 a) and Y' = Y x {0}."""
    C1 = as_fraction(C1)
    if C1 == 0:
        raise PreconditionError("C1 must be nonzero")
    n, m = s.nvars, t.nvars
    if a.nvars != n:
        raise PreconditionError("a and s must share the variable count")
    q = p.denominator
    den = a * a + q * q
    nums = tuple(pi * q for pi in p.numerators) + (a.scale(C1) * den,)
    X = QAlgebraicSet(n, (s,))
    P = QRegularMap(X, nums, den, ASSERTED, provenance="a^2 + q^2 with q nonvanishing on A")
    last = Poly.var(m, m + 1)
    t_ = t.embed(m + 1, 0)
    t_prime = t_ * t_ + last * last
    samples = [tuple(y) + (0,) for y in y_samples]
    if not samples and m == 1:
        samples = [(y, Fraction(0)) for y in (rational_roots(t) or [])]
    return blow_down(s, t_prime, P, as_fraction(C2), samples)


def closeness(result: BlowDownResult, p: QRegularMap, samples: Sequence) -> Fraction:
    """max over samples of the sup-distance between f(x) and (0, p(x))."""
    n = result.f.nvars
    worst = Fraction(0)
    for x in samples:
        fx = result.f(x)
        px = p(x)
        target = [Fraction(0)] * n + list(px)
        target = target[:len(fx)] + [Fraction(0)] * (len(fx) - len(target))
        worst = max(worst, max(abs(a - b) for a, b in zip(fx, target)))
    return worst


# ---------------------------------------------------------------------------
# inversion


def inversion_map(n: int) -> QRegularMap:
    if n < 1:
        raise PreconditionError("n must be positive")
    return QRegularMap(QAlgebraicSet.full_space(n), tuple(Poly.variables(n)), norm_squared(n),
                       ASSERTED, provenance="sum of squares; nonvanishing off the origin")


@dataclass(frozen=True)
class CompactifyResult:
    t: Poly
    theta: QRegularMap
    d_prime: int
    t_at_origin: Fraction
    witnesses: tuple[Witness, ...]
    divisibility: tuple[DivisibilityWitness, ...]

    @property
    def ok(self) -> bool:
        return all(w.verdict is not False for w in self.witnesses)


def compactify_inversion(s: Poly, d: int) -> CompactifyResult:
    """t = |x|^(2d) * s(x / |x|^2) = sum_i s_i(x) |x|^(2(d - i))."""
    if s.constant_term == 0:
        raise PreconditionError("s(0) must be nonzero")
    if d < s.degree:
        raise PreconditionError(f"d = {d} is below deg s = {s.degree}")
    n = s.nvars
    norm = norm_squared(n)
    t = Poly.zero(n)
    for i, part in enumerate(s.homogeneous_parts()):
        if not part.is_zero():
            t = t + part * norm ** (d - i)
    theta = inversion_map(n)
    witnesses = []
    divisibility = []
    num, c = compose_clear(t, theta.numerators, theta.denominator, 0)
    d_prime = c - d
    target = s * norm ** d_prime
    ok = num == target
    if ok:
        divisibility.append(DivisibilityWitness(s, num, norm ** d_prime, "numerator(t o theta) = s |x|^(2d')"))
    witnesses.append(Witness("round-trip", ok, {"d_prime": d_prime}))
    nums, den = _compose_unchecked(theta, theta)
    inv_ok = all((u - x * den).is_zero() for u, x in zip(nums, Poly.variables(n)))
    witnesses.append(Witness("involution", inv_ok, {}))
    return CompactifyResult(t, theta, d_prime, poly_eval(t, [0] * n), tuple(witnesses), tuple(divisibility))


def decompactify(t_prime: Poly, a: Poly, C) -> QAlgebraicSet:
    """Z(t', C a z - 1) in R^(m+1), removing the origin by the new coordinate z."""
    C = as_fraction(C)
    if C == 0:
        raise PreconditionError("C must be nonzero")
    m = t_prime.nvars
    if a != norm_squared(m):
        raise PreconditionError("a must be the coordinate sum of squares")
    z = Poly.var(m, m + 1)
    gen = a.embed(m + 1, 0).scale(C) * z - 1
    return QAlgebraicSet(m + 1, (t_prime.embed(m + 1, 0), gen))


def decompactify_lift(point: Sequence, C) -> tuple[Fraction, ...]:
    """(w, 1/(C |w|^2)) for a nonzero rational w."""
    w = [as_fraction(x) for x in point]
    n2 = sum(x * x for x in w)
    if n2 == 0:
        raise PreconditionError("the origin has no lift")
    return tuple(w) + (1 / (as_fraction(C) * n2),)


# ---------------------------------------------------------------------------
# stereographic lift


@dataclass(frozen=True)
class LiftResult:
    P: Poly
    witnesses: tuple[Witness, ...]

    @property
    def ok(self) -> bool:
        return all(w.verdict is not False for w in self.witnesses)


def stereographic_lift(p: Poly) -> Poly:
    """P(x, x_{n+1}) = sum_j (1 - x_{n+1})^(d - j) p_j(x)."""
    n = p.nvars
    d = p.degree
    one_minus = 1 - Poly.var(n, n + 1)
    P = Poly.zero(n + 1)
    for j, part in enumerate(p.homogeneous_parts()):
        if not part.is_zero():
            P = P + part.embed(n + 1, 0) * one_minus ** (d - j)
    return P


def stereographic_witnesses(p: Poly) -> LiftResult:
    n = p.nvars
    P = stereographic_lift(p)
    north = [Fraction(0)] * n + [Fraction(1)]
    at_north = poly_eval(P, north)
    constant = p.degree == 0
    witnesses = [Witness("vanishes-at-north-pole", None if constant else at_north == 0,
                         {"value": format_rational(at_north), "degree_zero_input": constant})]
    one_minus = 1 - Poly.var(n, n + 1)
    xs = [x.embed(n + 1, 0) for x in Poly.variables(n)]
    cleared, _ = compose_clear(p, xs, one_minus, p.degree)
    witnesses.append(Witness("cleared-composition", cleared == P, {}))
    return LiftResult(P, tuple(witnesses))
