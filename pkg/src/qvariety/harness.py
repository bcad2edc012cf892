"""Seeded random instances and the property battery behind ``selftest``.

Every generator takes an explicit ``random.Random`` so runs are reproducible.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from qvariety import forms, linalg
from qvariety.generators import grassmannian, grassmannian_polys, milnor_hypersurface, mu
from qvariety.interp import interp_constants, small_interpolant, verify_bound
from qvariety.overt import certify_form
from qvariety.qset import QAlgebraicSet, QRegularMap, intersect, product, translate, union
from qvariety.ratpoly import Poly, divides, format_poly, parse_poly, poly_eval
from qvariety.regstar import jacobian_rank_at, rational_orthogonal
from qvariety.serialize import dumps, roundtrip, to_json
from qvariety.surgery import blow_down, compactify_inversion, stereographic_witnesses

# ---------------------------------------------------------------------------
# random objects


def rand_fraction(rng: random.Random, height: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if x or not nonzero:
            return x


def rand_exponent(rng: random.Random, nvars: int, degree: int) -> tuple[int, ...]:
    total = rng.randint(0, degree)
    e = [0] * nvars
    for _ in range(total):
        e[rng.randrange(nvars)] += 1
    return tuple(e)


def rand_poly(rng: random.Random, nvars: int, degree: int, terms: int = 4, height: int = 9) -> Poly:
    out = {}
    for _ in range(terms):
        out[rand_exponent(rng, nvars, degree)] = rand_fraction(rng, height)
    return Poly(nvars, out)


def rand_overt_poly(rng: random.Random, nvars: int, half_degree: int = 1) -> Poly:
    """Positive even pure powers on top plus random lower-degree terms."""
    d = 2 * half_degree
    p = rand_poly(rng, nvars, d - 1, terms=3)
    for i in range(nvars):
        e = [0] * nvars
        e[i] = d
        p = p + Poly.monomial(e, Fraction(rng.randint(1, 5), rng.randint(1, 3)))
    return p


def rand_point(rng: random.Random, n: int, height: int = 9) -> tuple[Fraction, ...]:
    return tuple(rand_fraction(rng, height) for _ in range(n))


def rand_skew(rng: random.Random, n: int, height: int = 5) -> linalg.Matrix:
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            S[i][j] = rand_fraction(rng, height)
            S[j][i] = -S[i][j]
    return S


def grassmannian_point(rng: random.Random, n: int, k: int) -> tuple[Fraction, ...]:
    """G^T D G with G a Cayley orthogonal matrix and D = diag(1^k, 0^(n-k))."""
    G = rational_orthogonal(rand_skew(rng, n))
    D = [[Fraction(int(i == j and i < k)) for j in range(n)] for i in range(n)]
    return linalg.flatten(linalg.matmul(linalg.matmul(linalg.transpose(G), D), G))


def rand_set(rng: random.Random, n: int | None = None) -> QAlgebraicSet:
    n = n or rng.randint(1, 3)
    gens = tuple(rand_poly(rng, n, 3) for _ in range(rng.randint(1, 3)))
    gens = tuple(g for g in gens if not g.is_zero()) or (Poly.var(0, n),)
    claimed = rng.choice([None, rng.randint(0, n - 1)])
    overt = None
    if rng.random() < 0.4:
        overt = forms.Leaf(rand_overt_poly(rng, n))
    notes = tuple(rng.choice(["", "sample note", "from harness"]) for _ in range(rng.randint(0, 2)))
    return QAlgebraicSet(n, gens, claimed, overt, tuple(x for x in notes if x))


def rand_map(rng: random.Random) -> QRegularMap:
    V = rand_set(rng)
    n = V.ambient_dim
    nums = tuple(rand_poly(rng, n, 2) for _ in range(rng.randint(1, 3)))
    if rng.random() < 0.5:
        den = Poly.const(rng.randint(1, 4), n) + Poly.var(0, n) ** 2
        return QRegularMap(V, nums, den, "sos", provenance=rng.choice(["", "harness"]))
    den = rand_poly(rng, n, 2)
    if den.is_zero():
        den = Poly.const(1, n)
    samples = [a for a in (rand_point(rng, n) for _ in range(3)) if poly_eval(den, a) != 0]
    if samples:
        return QRegularMap(V, nums, den, "samples", tuple(samples))
    return QRegularMap(V, nums, den, "asserted")


def rand_object(rng: random.Random):
    return rand_set(rng) if rng.random() < 0.5 else rand_map(rng)


# ---------------------------------------------------------------------------
# the battery


def _check_parse(rng):
    p = rand_poly(rng, rng.randint(1, 4), 5, terms=6)
    return parse_poly(format_poly(p), p.nvars) == p


def _check_divides(rng):
    n = rng.randint(1, 3)
    p = rand_poly(rng, n, 3) + 1
    q = rand_poly(rng, n, 3)
    return divides(p, p * q) == q


def _check_grassmannian(rng):
    n = rng.randint(1, 3)
    k = rng.randint(1, n)
    A = grassmannian_point(rng, n, k)
    gens = grassmannian_polys(n, k)
    return all(poly_eval(g, A) == 0 for g in gens) and jacobian_rank_at(gens, A) == n * n - k * (n - k)


def _check_mu(rng):
    n = rng.randint(1, 3)
    x = rand_point(rng, n + 1)
    if not any(x):
        x = (Fraction(1),) + x[1:]
    return grassmannian(n + 1, 1).contains(linalg.flatten(mu(n, x)))


def milnor_pair(rng: random.Random, n: int, m: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """x in R^(n+1) and y in R^(m+1) with sum_{i <= n} x_i y_i = 0, both nonzero.

    x and the head of y are two rows of a Cayley orthogonal matrix.
    """
    G = rational_orthogonal(rand_skew(rng, n + 1))
    lam = rand_fraction(rng, nonzero=True)
    x = tuple(G[0])
    y = tuple(lam * g for g in G[1]) + rand_point(rng, m - n)
    return x, y


def milnor_point(rng: random.Random, n: int, m: int) -> tuple[Fraction, ...]:
    x, y = milnor_pair(rng, n, m)
    return linalg.flatten(mu(n, x)) + linalg.flatten(mu(m, y))


def _check_milnor(rng):
    n, m = rng.choice([(1, 2), (2, 2)])
    return milnor_hypersurface(n, m).contains(milnor_point(rng, n, m))


def _check_overt_closure(rng):
    n = rng.randint(1, 2)
    a, b = rand_overt_poly(rng, n), rand_overt_poly(rng, n)
    V = QAlgebraicSet(n, (a,), overt=forms.Leaf(a))
    W = QAlgebraicSet(n, (b,), overt=forms.Leaf(b))
    v = rand_point(rng, n)
    built = [union(V, W), product(V, W), intersect(V, W), translate(V, v)]
    return all(S.overt is not None and certify_form(S.overt).is_overt for S in built)


def _check_compactify(rng):
    n = rng.randint(1, 2)
    s = rand_poly(rng, n, 3) + rng.randint(1, 5)
    if s.constant_term == 0:
        s = s + 1
    return compactify_inversion(s, max(s.degree, 1)).ok


def _check_sterlift(rng):
    p = rand_poly(rng, rng.randint(1, 3), 4)
    return stereographic_witnesses(p).ok


def _check_blowdown(rng):
    roots = rng.sample(range(1, 6), 2)
    x = Poly.var(0, 1)
    s = (x - roots[0]) * (x - roots[1])
    t = Poly.var(0, 1) * (Poly.var(0, 1) - rng.randint(1, 3))
    X = QAlgebraicSet(1, (s,))
    p = QRegularMap.polynomial(X, (x - roots[0],))
    return blow_down(s, t, p, Fraction(1, rng.randint(1, 4))).ok


def _check_interp(rng):
    b = [Fraction(rng.randint(-20, 20), 3) + Fraction(1, 7)]
    A = [Fraction(rng.randint(-20, 20), 2)]
    if A[0] == b[0]:
        return True
    eps = Fraction(1, 10)
    bundle = interp_constants(A, b, 1, 1, eps)
    c = [b[0] + bundle.delta / 2]
    Lc = small_interpolant(A, b, c, bundle)
    return Lc(A[0]) == 0 and Lc(c[0]) == b[0] - c[0] and verify_bound(Lc, eps, 1, 1).ok


def _check_serialize(rng):
    text = dumps(to_json(rand_object(rng)))
    return roundtrip(text) == text


CHECKS: list[tuple[str, Callable[[random.Random], bool], int]] = [
    ("parse-print", _check_parse, 20),
    ("divides-roundtrip", _check_divides, 20),
    ("grassmannian-rank", _check_grassmannian, 5),
    ("mu-membership", _check_mu, 10),
    ("milnor-membership", _check_milnor, 3),
    ("overt-closure", _check_overt_closure, 5),
    ("compactify", _check_compactify, 5),
    ("stereographic-lift", _check_sterlift, 5),
    ("blow-down", _check_blowdown, 2),
    ("interpolation", _check_interp, 2),
    ("serialization", _check_serialize, 20),
]


def run_selftest(seed: int = 1, checks: Sequence[str] | None = None) -> list[dict]:
    """Run the battery; each check gets its own stream derived from the seed."""
    report = []
    for name, fn, count in CHECKS:
        if checks and name not in checks:
            continue
        rng = random.Random(f"{seed}:{name}")
        passed = sum(1 for _ in range(count) if fn(rng))
        report.append({"name": name, "verdict": passed == count, "passed": passed, "total": count})
    return report
