"""Rational algebraic sets, rational regular maps and their combinators."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from qvariety import forms
from qvariety.errors import DimensionMismatch, NotOnVariety, PreconditionError
from qvariety.forms import OvertForm
from qvariety.overt import overtness
from qvariety.ratpoly import (
    Poly,
    as_fraction,
    certified_positive,
    compose_clear,
    divides,
    poly_eval,
    sum_of_squares,
)

SOS = "sos"
SAMPLES = "samples"
ASSERTED = "asserted"
TAGS = (SOS, SAMPLES, ASSERTED)


def _clean_generators(gens: Iterable[Poly]) -> tuple[Poly, ...]:
    seen = set()
    out = []
    for g in gens:
        if g not in seen:
            seen.add(g)
            out.append(g)
    nonzero = [g for g in out if not g.is_zero()]
    if nonzero:
        return tuple(nonzero)
    return tuple(out[:1])


@dataclass(frozen=True)
class QAlgebraicSet:
    """Z(generators) in R^ambient_dim.

    Generators are deduplicated exactly (a polynomial and its negative are
    both kept) and zero generators are dropped unless nothing else is left.
    ``overt`` optionally records a structural overt polynomial with the same
    zero set; ``notes`` carries human-readable provenance.
    """

    ambient_dim: int
    generators: tuple[Poly, ...]
    claimed_dim: int | None = None
    overt: OvertForm | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise DimensionMismatch("ambient dimension must be positive")
        gens = _clean_generators(self.generators)
        if not gens:
            raise PreconditionError("a set needs at least one generator")
        for g in gens:
            if g.nvars != self.ambient_dim:
                raise DimensionMismatch(f"generator in {g.nvars} variables for ambient dimension {self.ambient_dim}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.claimed_dim is not None:
            if self.claimed_dim < 0:
                raise PreconditionError("claimed dimension must be nonnegative")
            if self.overt is not None and self.claimed_dim >= self.ambient_dim:
                raise PreconditionError("a compact set must have dimension below the ambient dimension")
        if self.overt is not None and self.overt.nvars != self.ambient_dim:
            raise DimensionMismatch("overt form lives in the wrong number of variables")

    @classmethod
    def full_space(cls, n: int) -> "QAlgebraicSet":
        return cls(n, (Poly.zero(n),), claimed_dim=n)

    @classmethod
    def point(cls, a: Sequence) -> "QAlgebraicSet":
        """The singleton {a}, with its overt sphere-of-radius-zero form."""
        n = len(a)
        xs = Poly.variables(n)
        gens = tuple(x - as_fraction(c) for x, c in zip(xs, a))
        norm = sum_of_squares(gens, n)
        return cls(n, gens, claimed_dim=0, overt=forms.Leaf(norm))

    def is_full_space(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def contains(self, a: Sequence) -> bool:
        if len(a) != self.ambient_dim:
            raise DimensionMismatch(f"point of dimension {len(a)} for a set in R^{self.ambient_dim}")
        return all(poly_eval(g, a) == 0 for g in self.generators)

    def with_overt(self, form: OvertForm | None) -> "QAlgebraicSet":
        return replace(self, overt=form)


def single_generator(V: QAlgebraicSet) -> Poly:
    """Sum of squares of the generators; its real zero set is V."""
    return sum_of_squares(V.generators, V.ambient_dim)


def defining_poly(V: QAlgebraicSet) -> Poly:
    """One polynomial cutting out V: the generator itself when there is only one."""
    if len(V.generators) == 1:
        return V.generators[0]
    return single_generator(V)


def overt_form_of(V: QAlgebraicSet) -> OvertForm | None:
    """The recorded overt form, or a certified leaf when one can be found."""
    if V.overt is not None:
        return V.overt
    p = defining_poly(V)
    if overtness(p).is_overt:
        return forms.Leaf(p)
    if len(V.generators) > 1:
        return None
    s = single_generator(V)
    if overtness(s).is_overt:
        return forms.Leaf(s)
    return None


def _check_same_ambient(V: QAlgebraicSet, W: QAlgebraicSet):
    if V.ambient_dim != W.ambient_dim:
        raise DimensionMismatch(f"sets live in R^{V.ambient_dim} and R^{W.ambient_dim}")


def union(V: QAlgebraicSet, W: QAlgebraicSet) -> QAlgebraicSet:
    _check_same_ambient(V, W)
    p, p2 = single_generator(V), single_generator(W)
    a, b = overt_form_of(V), overt_form_of(W)
    form = forms.Product(a, b) if a is not None and b is not None else None
    dim = None
    if V.claimed_dim is not None and W.claimed_dim is not None:
        dim = max(V.claimed_dim, W.claimed_dim)
    return QAlgebraicSet(V.ambient_dim, (p * p2,), claimed_dim=dim, overt=form)


def intersect(V: QAlgebraicSet, Z: QAlgebraicSet) -> QAlgebraicSet:
    _check_same_ambient(V, Z)
    if Z.is_full_space():
        return V
    gens = V.generators + Z.generators
    a = overt_form_of(V)
    form = None
    if a is not None and a.degree >= 1:
        q = defining_poly(Z)
        form = forms.Intersect(a, q.degree, q)
    return QAlgebraicSet(V.ambient_dim, gens, overt=form)


def product(V: QAlgebraicSet, W: QAlgebraicSet) -> QAlgebraicSet:
    """V x W in R^(n+k); the overt form is a**(2e) + b**(2d)."""
    n, k = V.ambient_dim, W.ambient_dim
    total = n + k
    gens = tuple(g.embed(total, 0) for g in V.generators) + tuple(g.embed(total, n) for g in W.generators)
    a, b = V.overt, W.overt
    if a is None or b is None:
        a, b = overt_form_of(V), overt_form_of(W)
    form = None
    if a is not None and b is not None:
        d, e = a.degree, b.degree
        if d == 0 or e == 0:
            raise PreconditionError("overt certificate of degree 0 cannot enter a product")
        form = forms.SumPow(forms.embed(a, total, 0), e, forms.embed(b, total, n), d)
    dim = None
    if V.claimed_dim is not None and W.claimed_dim is not None:
        dim = V.claimed_dim + W.claimed_dim
    return QAlgebraicSet(total, gens, claimed_dim=dim, overt=form, notes=V.notes + W.notes)


def translate(V: QAlgebraicSet, v: Sequence) -> QAlgebraicSet:
    if len(v) != V.ambient_dim:
        raise DimensionMismatch(f"translation of length {len(v)} in R^{V.ambient_dim}")
    v = tuple(as_fraction(x) for x in v)
    if not any(v):
        return V
    gens = tuple(g.translate(v) for g in V.generators)
    form = forms.translate_form(V.overt, v) if V.overt is not None else None
    return QAlgebraicSet(V.ambient_dim, gens, claimed_dim=V.claimed_dim, overt=form, notes=V.notes)


def pad_with_origin(V: QAlgebraicSet, m: int) -> QAlgebraicSet:
    """V x {0} in R^m (m >= ambient dimension)."""
    extra = m - V.ambient_dim
    if extra < 0:
        raise DimensionMismatch("cannot pad into a smaller space")
    if extra == 0:
        return V
    return product(V, QAlgebraicSet.point([0] * extra))


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class DivisibilityWitness:
    """dividend == quotient * divisor, with a label saying what it proves."""

    divisor: Poly
    dividend: Poly
    quotient: Poly
    label: str = ""

    def verify(self) -> bool:
        return self.quotient * self.divisor == self.dividend


def divisibility_witness(divisor: Poly, dividend: Poly, label: str = "") -> DivisibilityWitness | None:
    q = divides(divisor, dividend)
    if q is None:
        return None
    return DivisibilityWitness(divisor, dividend, q, label)


@dataclass(frozen=True)
class QRegularMap:
    """x -> (numerators[i](x) / denominator(x)) on ``domain``.

    ``nonvanishing`` says why the denominator has no zero on the domain:
    ``sos`` (syntactically a positive constant plus even monomials with
    positive coefficients), ``samples`` (checked at the listed points) or
    ``asserted``.
    """

    domain: QAlgebraicSet
    numerators: tuple[Poly, ...]
    denominator: Poly
    nonvanishing: str = ASSERTED
    samples: tuple[tuple[Fraction, ...], ...] = ()
    provenance: str = ""

    def __post_init__(self):
        n = self.domain.ambient_dim
        nums = tuple(self.numerators)
        object.__setattr__(self, "numerators", nums)
        if not nums:
            raise PreconditionError("a map needs at least one component")
        for p in nums + (self.denominator,):
            if p.nvars != n:
                raise DimensionMismatch(f"map polynomial in {p.nvars} variables on a domain in R^{n}")
        if self.denominator.is_zero():
            raise PreconditionError("zero denominator")
        if self.nonvanishing not in TAGS:
            raise PreconditionError(f"unknown nonvanishing tag {self.nonvanishing!r}")
        samples = tuple(tuple(as_fraction(x) for x in a) for a in self.samples)
        object.__setattr__(self, "samples", samples)
        if self.nonvanishing == SOS and not certified_positive(self.denominator):
            raise PreconditionError("denominator is not syntactically positive")
        if self.nonvanishing == SAMPLES:
            if not samples:
                raise PreconditionError("the samples tag needs sample points")
            for a in samples:
                if poly_eval(self.denominator, a) == 0:
                    raise PreconditionError(f"denominator vanishes at sample {a}")

    @classmethod
    def polynomial(cls, domain: QAlgebraicSet, numerators: Sequence[Poly]) -> "QRegularMap":
        return cls(domain, tuple(numerators), Poly.const(1, domain.ambient_dim), SOS)

    @property
    def nvars(self) -> int:
        return self.domain.ambient_dim

    @property
    def arity(self) -> int:
        return len(self.numerators)

    def __call__(self, a: Sequence) -> tuple[Fraction, ...]:
        if len(a) != self.nvars:
            raise DimensionMismatch(f"point of dimension {len(a)} for a map on R^{self.nvars}")
        den = poly_eval(self.denominator, a)
        if den == 0:
            raise PreconditionError("denominator vanishes at the point")
        return tuple(poly_eval(p, a) / den for p in self.numerators)


def _tag_for(den: Poly, samples: Sequence = ()) -> tuple[str, tuple]:
    if certified_positive(den):
        return SOS, ()
    if samples and all(poly_eval(den, a) != 0 for a in samples):
        return SAMPLES, tuple(samples)
    return ASSERTED, ()


@dataclass(frozen=True)
class Extension:
    map: QRegularMap
    witnesses: tuple[DivisibilityWitness, ...]


def qregular_extend(f: QRegularMap) -> Extension:
    """Extend f from V = Z(p) to all of R^n as p_i q / (p^2 + q^2)."""
    V = f.domain
    n = V.ambient_dim
    p = defining_poly(V)
    q = f.denominator
    for a in f.samples:
        if poly_eval(p, a) == 0 and poly_eval(q, a) == 0:
            raise PreconditionError(f"p and q share the zero {a}")
    den = p * p + q * q
    nums = tuple(pi * q for pi in f.numerators)
    witnesses = []
    p2 = p * p
    for i, (pi, Fi) in enumerate(zip(f.numerators, nums)):
        diff = Fi * q - pi * den
        w = divisibility_witness(p2, diff, f"agreement on V, component {i + 1}") if not p2.is_zero() else None
        if w is None:
            if p2.is_zero() and diff.is_zero():
                w = DivisibilityWitness(Poly.const(1, n), diff, diff, f"agreement, component {i + 1}")
            else:
                raise PreconditionError("extension failed its own agreement check")
        witnesses.append(w)
    if certified_positive(den):
        tag, samples = SOS, ()
    else:
        tag, samples = f.nonvanishing, f.samples
        if tag == SOS:
            tag = ASSERTED
    F = QRegularMap(QAlgebraicSet.full_space(n), nums, den, tag, samples,
                    provenance="p^2 + q^2 with q nonvanishing on Z(p)")
    return Extension(F, tuple(witnesses))


def _normalized(f: QRegularMap) -> QRegularMap:
    if certified_positive(f.denominator):
        return f
    ext = qregular_extend(f).map
    return replace(ext, domain=f.domain)


def disjoint_glue(f: QRegularMap, g: QRegularMap, samples: Sequence = ()) -> Extension:
    """f on V and g on V' glued on V u V' (V and V' disjoint)."""
    _check_same_ambient(f.domain, g.domain)
    if f.arity != g.arity:
        raise DimensionMismatch("glued maps must have the same number of components")
    p, p_ = defining_poly(f.domain), defining_poly(g.domain)
    checks = list(samples) + list(f.samples) + list(g.samples)
    for a in checks:
        if poly_eval(p, a) == 0 and poly_eval(p_, a) == 0:
            raise PreconditionError(f"domains overlap at {tuple(a)}")
    f, g = _normalized(f), _normalized(g)
    q, q_ = f.denominator, g.denominator
    pp, pp_ = p * p, p_ * p_
    nums = tuple(pi * pp_ * q_ + pi_ * pp * q for pi, pi_ in zip(f.numerators, g.numerators))
    den = (pp + pp_) * q * q_
    witnesses = []
    for i, (ui, pi, pi_) in enumerate(zip(nums, f.numerators, g.numerators)):
        lhs = ui * q - pi * den
        rhs_q = q * (pi_ * q - pi * q_)
        w = DivisibilityWitness(pp, lhs, rhs_q, f"glue agrees with f, component {i + 1}")
        if not w.verify():
            raise PreconditionError("glue identity failed")
        lhs_ = ui * q_ - pi_ * den
        w_ = DivisibilityWitness(pp_, lhs_, q_ * (pi * q_ - pi_ * q), f"glue agrees with g, component {i + 1}")
        if not w_.verify():
            raise PreconditionError("glue identity failed")
        witnesses += [w, w_]
    domain = union(f.domain, g.domain)
    tag, smp = _tag_for(den, [a for a in checks if poly_eval(den, a) != 0] if checks else ())
    glued = QRegularMap(domain, nums, den, tag, smp, provenance="glued on a sample-checked disjoint union")
    return Extension(glued, tuple(witnesses))


def graph(f: QRegularMap) -> QAlgebraicSet:
    """p^2 + sum (q y_i - p_i)^2 in R^(n+k)."""
    n, k = f.nvars, f.arity
    total = n + k
    p = defining_poly(f.domain).embed(total, 0)
    q = f.denominator.embed(total, 0)
    ys = [Poly.var(n + i, total) for i in range(k)]
    gen = p * p
    for y, pi in zip(ys, f.numerators):
        t = q * y - pi.embed(total, 0)
        gen = gen + t * t
    return QAlgebraicSet(total, (gen,), claimed_dim=f.domain.claimed_dim)


def compose(g: QRegularMap, f: QRegularMap, samples: Sequence = ()) -> QRegularMap:
    """g o f with numerators and denominator q^c * xi(f), c the largest degree."""
    if f.arity != g.nvars:
        raise DimensionMismatch(f"f has {f.arity} outputs but g is defined on R^{g.nvars}")
    c = max([p.degree for p in g.numerators] + [g.denominator.degree])
    q = f.denominator
    nums = tuple(compose_clear(p, f.numerators, q, c)[0] for p in g.numerators)
    den, _ = compose_clear(g.denominator, f.numerators, q, c)
    samples = list(samples) + list(f.samples)
    for a in samples:
        if poly_eval(den, a) == 0:
            raise PreconditionError(f"composed denominator vanishes at sample {tuple(a)}")
    if den.is_zero():
        raise PreconditionError("composed denominator is identically zero")
    tag, smp = _tag_for(den, samples)
    return QRegularMap(f.domain, nums, den, tag, smp, provenance="composition")


def pullback(f: QRegularMap, Z: QAlgebraicSet) -> QAlgebraicSet:
    """V together with t^(deg p_i) * p_i(f) for the generators p_i of Z."""
    if f.arity != Z.ambient_dim:
        raise DimensionMismatch(f"f has {f.arity} outputs but Z lives in R^{Z.ambient_dim}")
    extra = tuple(compose_clear(p, f.numerators, f.denominator, 0)[0] for p in Z.generators)
    return QAlgebraicSet(f.nvars, f.domain.generators + extra)


def require_member(V: QAlgebraicSet, a: Sequence):
    for i, g in enumerate(V.generators):
        if poly_eval(g, a) != 0:
            raise NotOnVariety(f"generator {i + 1} does not vanish at the point")
