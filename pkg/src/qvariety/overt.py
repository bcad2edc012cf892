"""Overtness verdicts.

A polynomial is overt when the zero set of its top homogeneous form is empty
or ``{0}``.  Deciding this is a real positivity question, so the verdict is
three-valued:

* ``overt``: a syntactic certificate that the top form vanishes only at 0
  (even monomials with positive coefficients covering every variable, a
  positive definite quadratic, a perfect power of a certified form, or a sum
  of such forms in disjoint variables);
* ``not-overt``: a re-checkable witness, either a nonzero rational zero of
  the top form or a segment between two linearly independent rational points
  on which the top form changes sign (the segment misses the origin, so the
  intermediate value theorem yields a nonzero real zero);
* ``unknown``: neither search succeeded.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from qvariety import forms
from qvariety.forms import OvertForm
from qvariety.ratpoly import (
    Poly,
    as_fraction,
    format_point,
    format_poly,
    format_rational,
    is_even_positive,
    parse_point,
    poly_eval,
    sum_of_squares,
)

DEFAULT_HEIGHT = 20
DEFAULT_BUDGET = 4000

OVERT = "overt"
NOT_OVERT = "not-overt"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class OvertVerdict:
    outcome: str
    certificate: dict | None = None
    witness: dict | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def is_overt(self) -> bool:
        return self.outcome == OVERT

    def to_json(self) -> dict:
        doc: dict = {"outcome": self.outcome}
        if self.certificate is not None:
            doc["certificate"] = self.certificate
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


# ---------------------------------------------------------------------------
# certificates for forms that vanish only at the origin


def _int_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # Newton from an overestimate
    r = max(r, 1)
    while r ** k < n:
        r *= 2
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r ** k == n else None


def rational_root(c: Fraction, k: int) -> Fraction | None:
    """Exact rational k-th root, or None."""
    sign = 1
    if c < 0:
        if k % 2 == 0:
            return None
        sign = -1
        c = -c
    num = _int_root(c.numerator, k)
    den = _int_root(c.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def kth_root(f: Poly, k: int, max_terms: int = 400) -> Poly | None:
    """Return g with g**k == f, or None.  Newton iteration in lex order."""
    if f.is_zero() or k < 2:
        return None
    lt_e = max(f.terms)
    if any(x % k for x in lt_e):
        return None
    rc = rational_root(f.terms[lt_e], k)
    if rc is None:
        return None
    root_e = tuple(x // k for x in lt_e)
    g = {root_e: rc}
    pivot = k * rc ** (k - 1)
    shift = tuple((k - 1) * x for x in root_e)
    last = root_e
    for _ in range(max_terms):
        gp = Poly(f.nvars, g)
        r = f - gp ** k
        if r.is_zero():
            return gp
        lt_r = max(r.terms)
        t_e = tuple(a - b for a, b in zip(lt_r, shift))
        if any(x < 0 for x in t_e) or t_e >= last:
            return None
        g[t_e] = r.terms[lt_r] / pivot
        last = t_e
    return None


def _sylvester_definite(f: Poly, vars_: Sequence[int]) -> bool:
    """Positive definiteness of a quadratic form in ``vars_`` by exact pivots."""
    idx = {v: i for i, v in enumerate(vars_)}
    n = len(vars_)
    q = [[Fraction(0)] * n for _ in range(n)]
    for e, c in f.terms.items():
        support = [i for i, x in enumerate(e) if x]
        if any(i not in idx for i in support):
            return False
        if len(support) == 1:
            q[idx[support[0]]][idx[support[0]]] += c
        else:
            a, b = idx[support[0]], idx[support[1]]
            q[a][b] += c / 2
            q[b][a] += c / 2
    for col in range(n):
        piv = q[col][col]
        if piv <= 0:
            return False
        for row in range(col + 1, n):
            factor = q[row][col] / piv
            if factor:
                for j in range(col, n):
                    q[row][j] -= factor * q[col][j]
    return True


def _components(f: Poly) -> list[set[int]]:
    """Groups of variables linked by a shared monomial."""
    parent: dict[int, int] = {}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in f.terms:
        support = [i for i, x in enumerate(e) if x]
        for i in support:
            parent.setdefault(i, i)
        for i in support[1:]:
            parent[find(i)] = find(support[0])
    groups: dict[int, set[int]] = {}
    for i in parent:
        groups.setdefault(find(i), set()).add(i)
    return sorted(groups.values(), key=min)


def _restrict(f: Poly, vars_: set[int]) -> Poly:
    return Poly(f.nvars, {e: c for e, c in f.terms.items() if any(e[i] for i in vars_)})


def definite(f: Poly, vars_: Sequence[int] | None = None, depth: int = 0) -> dict | None:
    """Certificate that the form f is > 0 away from the origin of R^vars_."""
    vars_ = list(range(f.nvars)) if vars_ is None else sorted(vars_)
    if f.is_zero() or depth > 6:
        return None
    vset = set(vars_)
    if f.used_variables() - vset:
        return None
    if is_even_positive(f):
        pure = set()
        for e in f.terms:
            support = [i for i, x in enumerate(e) if x]
            if len(support) == 1:
                pure.add(support[0])
        if vset <= pure:
            return {"rule": "even-positive", "form": format_poly(f)}
    if f.degree == 2 and _sylvester_definite(f, vars_):
        return {"rule": "definite-quadratic", "form": format_poly(f)}
    comps = _components(f)
    if len(comps) > 1 and set().union(*comps) == vset:
        parts = []
        for comp in comps:
            cert = definite(_restrict(f, comp), sorted(comp), depth + 1)
            if cert is None:
                break
            parts.append(cert)
        else:
            return {"rule": "disjoint-sum", "parts": parts}
    for k in _power_candidates(f.degree):
        g = kth_root(f, k)
        if g is None:
            continue
        inner = vanishes_only_at_origin(g, vars_, depth + 1) if k % 2 == 0 else definite(g, vars_, depth + 1)
        if inner is not None:
            return {"rule": "power", "k": k, "base": inner}
    return None


def vanishes_only_at_origin(f: Poly, vars_: Sequence[int] | None = None, depth: int = 0) -> dict | None:
    """Certificate that the form f has no zero in R^vars_ other than 0."""
    vars_ = list(range(f.nvars)) if vars_ is None else sorted(vars_)
    if f.is_zero():
        return None
    if f.used_variables() - set(vars_):
        return None
    if len(vars_) == 1 and len(f.terms) == 1:
        return {"rule": "monomial-one-variable", "form": format_poly(f)}
    cert = definite(f, vars_, depth)
    if cert is not None:
        return cert
    cert = definite(-f, vars_, depth)
    if cert is not None:
        return {"rule": "negated", "base": cert}
    cert = _binary_form_certificate(f, vars_)
    if cert is not None:
        return cert
    for k in _power_candidates(f.degree):
        g = kth_root(f, k) if k % 2 else None  # even powers were covered by definite()
        if g is None and k % 2:
            g = kth_root(-f, k)
            g = -g if g is not None else None
        if g is not None:
            inner = vanishes_only_at_origin(g, vars_, depth + 1)
            if inner is not None:
                return {"rule": "power", "k": k, "base": inner}
    return None


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of a by b; coefficient lists with the leading term last."""
    a = list(a)
    while len(a) >= len(b) and any(a):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _real_root_count(coeffs: list[Fraction]) -> int:
    """Distinct real roots of a univariate polynomial by a Sturm sequence."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return 0
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    seq = [coeffs, deriv]
    while True:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        signs = [x for x in signs if x]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    at_pos = [1 if p[-1] > 0 else -1 for p in seq]
    at_neg = [(1 if p[-1] > 0 else -1) * (-1) ** (len(p) - 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


def _binary_form_certificate(f: Poly, vars_: Sequence[int]) -> dict | None:
    """A form in two variables vanishes only at 0 iff f(t, 1) has no real root and f(1, 0) != 0."""
    if len(vars_) != 2:
        return None
    u, v = vars_
    d = f.degree
    coeffs = [Fraction(0)] * (d + 1)
    for e, c in f.terms.items():
        coeffs[e[u]] += c
    if coeffs[d] == 0:
        return None
    if _real_root_count(coeffs) != 0:
        return None
    return {"rule": "binary-form-sturm", "form": format_poly(f)}


def _power_candidates(deg: int) -> list[int]:
    return [k for k in range(2, deg + 1) if deg % k == 0]


# ---------------------------------------------------------------------------
# refutation


def _candidate_points(nvars: int, height: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Primitive integer vectors ordered by L1 norm, entries bounded by height."""
    produced = 0
    for l1 in range(1, nvars * height + 1):
        batch = []
        for support_size in range(1, min(nvars, l1) + 1):
            for support in itertools.combinations(range(nvars), support_size):
                for mags in _compositions(l1, support_size, height):
                    for signs in itertools.product((1, -1), repeat=support_size):
                        v = [0] * nvars
                        for i, m, s in zip(support, mags, signs):
                            v[i] = m * s
                        batch.append(tuple(v))
                if len(batch) > budget:
                    break
        batch = [v for v in batch if math.gcd(*v) == 1]
        batch.sort(key=lambda v: (tuple(-abs(x) for x in v), tuple(-x for x in v)))
        for v in batch:
            yield v
            produced += 1
            if produced >= budget:
                return


def _compositions(total: int, parts: int, cap: int):
    if parts == 1:
        if 1 <= total <= cap:
            yield (total,)
        return
    for first in range(1, min(cap, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def _independent(u: Sequence, w: Sequence) -> bool:
    n = len(u)
    return any(u[i] * w[j] != u[j] * w[i] for i in range(n) for j in range(i + 1, n))


def refute(top: Poly, height: int = DEFAULT_HEIGHT, budget: int = DEFAULT_BUDGET) -> dict | None:
    """Search for a witness that the form ``top`` has a nonzero real zero."""
    if top.is_zero():
        e = [0] * top.nvars
        e[0] = 1
        return {"kind": "rational", "point": format_point(e)}
    if top.nvars == 1:
        return None
    positives: list[tuple] = []
    negatives: list[tuple] = []
    for v in _candidate_points(top.nvars, height, budget):
        val = poly_eval(top, v)
        if val == 0:
            return {"kind": "rational", "point": format_point(v)}
        bucket, other = (positives, negatives) if val > 0 else (negatives, positives)
        if len(bucket) < 64:
            bucket.append(v)
        for w in other:
            if _independent(v, w):
                return _sign_change_witness(top, w, v)
    return None


def _sign_change_witness(top: Poly, start, end, steps: int = 12) -> dict:
    start = [Fraction(x) for x in start]
    end = [Fraction(x) for x in end]

    def g(t):
        return poly_eval(top, [a + t * (b - a) for a, b in zip(start, end)])

    lo, hi = Fraction(0), Fraction(1)
    glo = g(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        gm = g(mid)
        if gm == 0:
            point = [a + mid * (b - a) for a, b in zip(start, end)]
            return {"kind": "rational", "point": format_point(point)}
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return {"kind": "sign-change", "start": format_point(start), "end": format_point(end),
            "interval": [format_rational(lo), format_rational(hi)]}


def verify_witness(p: Poly, witness: dict) -> bool:
    """Re-check a not-overt witness exactly against the top form of p."""
    top = p.top_form() if p.degree > 0 else p
    if p.degree == 0 and not p.is_zero():
        return False
    if witness["kind"] == "rational":
        w = parse_point(witness["point"])
        return any(w) and poly_eval(top, w) == 0
    if witness["kind"] == "sign-change":
        a = parse_point(witness["start"])
        b = parse_point(witness["end"])
        if not _independent(a, b):
            return False
        lo, hi = (as_fraction(x) for x in witness["interval"])
        if not 0 <= lo < hi <= 1:
            return False
        va = poly_eval(top, [x + lo * (y - x) for x, y in zip(a, b)])
        vb = poly_eval(top, [x + hi * (y - x) for x, y in zip(a, b)])
        return va * vb < 0
    return False


# ---------------------------------------------------------------------------
# public verdicts


def overtness(p: Poly, height: int = DEFAULT_HEIGHT, budget: int = DEFAULT_BUDGET) -> OvertVerdict:
    if p.is_zero():
        return OvertVerdict(NOT_OVERT, witness=refute(p))
    if p.degree == 0:
        return OvertVerdict(OVERT, certificate={"rule": "nonzero-constant"})
    top = p.top_form()
    cert = vanishes_only_at_origin(top)
    if cert is not None:
        return OvertVerdict(OVERT, certificate=cert)
    witness = refute(top, height, budget)
    if witness is not None:
        return OvertVerdict(NOT_OVERT, witness=witness)
    return OvertVerdict(UNKNOWN, notes=(f"no certificate and no witness up to height {height}",))


def certify_form(form: OvertForm) -> OvertVerdict:
    """Certify a structural form by the combinator rules, never expanding it."""
    cert = _certify(form, frozenset(range(form.nvars)))
    if cert is None:
        return OvertVerdict(UNKNOWN, notes=("a subform could not be certified",))
    return OvertVerdict(OVERT, certificate=cert)


def _certify(form, vars_: frozenset) -> dict | None:
    """Certificate that the top form of ``form`` vanishes only at 0 in R^vars_."""
    if forms.used_variables(form) - vars_:
        return None
    if isinstance(form, forms.Leaf):
        p = form.poly
        if p.degree == 0:
            return {"leaf": format_poly(p), "top": {"rule": "nonzero-constant"}} if p else None
        cert = vanishes_only_at_origin(p.top_form(), sorted(vars_))
        return None if cert is None else {"leaf": format_poly(p), "top": cert}
    if isinstance(form, forms.Product):
        a, b = _certify(form.left, vars_), _certify(form.right, vars_)
        if a is None or b is None:
            return None
        return {"rule": "union-product", "factors": [a, b]}
    if isinstance(form, forms.SumPow):
        if form.left.degree < 1 or form.right.degree < 1:
            return None
        if form.d != form.left.degree or form.e != form.right.degree:
            return None
        left, right = forms.used_variables(form.left), forms.used_variables(form.right)
        if left & right or (left | right) != vars_:
            return None
        a, b = _certify(form.left, frozenset(left)), _certify(form.right, frozenset(right))
        if a is None or b is None:
            return None
        return {"rule": "cartesian-sum-of-powers", "e": form.e, "d": form.d, "parts": [a, b]}
    if isinstance(form, forms.Intersect):
        if form.base.degree < 1 or form.ell != form.q.degree:
            return None
        a = _certify(form.base, vars_)
        if a is None:
            return None
        return {"rule": "intersection-power", "ell": form.ell, "base": a}
    if isinstance(form, forms.Translate):
        a = _certify(form.base, vars_)
        return None if a is None else {"rule": "translation", "base": a}
    raise TypeError(f"not an overt form: {form!r}")


def is_projectively_closed(V) -> OvertVerdict:
    """Verdict for a set: its recorded overt form if any, else the sum of squares."""
    if getattr(V, "overt", None) is not None:
        return certify_form(V.overt)
    return overtness(sum_of_squares(V.generators, V.ambient_dim))
