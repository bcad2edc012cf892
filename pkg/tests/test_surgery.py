from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qvariety.errors import PreconditionError
from qvariety.harness import rand_point, rand_poly
from qvariety.qset import QAlgebraicSet, QRegularMap
from qvariety.ratpoly import Poly, compose_clear, norm_squared, parse_poly, poly_eval
from qvariety.surgery import (adjunction, blow_down, closeness, compactify_inversion, decompactify,
                              decompactify_lift, homogenize, inversion_map, stereographic_lift,
                              stereographic_witnesses)

F = Fraction


def P(text, n=None):
    return parse_poly(text, n)


S = P("(x1 - 1)*(x1 - 2)")
X = QAlgebraicSet(1, (S,))


def test_homogenize():
    h = homogenize(P("x1^2 - 3*x1 + 2"), 2, 2, 1)
    assert h == P("x1^2 - 3*x1*x2 + 2*x2^2")
    with pytest.raises(PreconditionError):
        homogenize(P("x1^3"), 2, 2, 1)


def test_blow_down_constant_map():
    p = QRegularMap.polynomial(X, (Poly.zero(1),))
    res = blow_down(S, P("x1"), p, 1)
    assert res.r == P("x2^6 + (x1^2 - 3*x1*x2 + 2*x2^2)^2")
    assert res.ok
    assert res.V.contains((0, 0))
    # r is a sum of two squares vanishing together only at the origin
    for pt in [(1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 3))]:
        assert poly_eval(res.r, pt) != 0


def test_blow_down_two_points():
    x = P("x1")
    p = QRegularMap.polynomial(X, (x - 1,))
    res = blow_down(S, P("x1*(x1 - 1)"), p, 1)
    assert res.f((1,)) == (0, 0)
    assert res.f((2,)) == (0, 1)
    assert res.ok
    assert all(w.verify() for w in res.divisibility)
    assert res.g((1,)) == (0, 1)


def test_blow_down_inverse_off_y():
    p = QRegularMap.polynomial(X, (P("x1 + 3"),))
    res = blow_down(S, P("x1"), p, F(1, 8))
    names = {w.name: w.verdict for w in res.witnesses}
    assert names == {"s-divides-r-of-f": True, "inverse-identity": True, "fiber-over-Y": True}
    for x in (1, 2):
        fx = res.f((x,))
        assert res.V.contains(fx)
        assert res.f_inverse(fx) == (x,)


def test_blow_down_preconditions():
    p = QRegularMap.polynomial(X, (Poly.zero(1),))
    with pytest.raises(PreconditionError):
        blow_down(S, P("x1"), p, 0)
    with pytest.raises(PreconditionError):
        blow_down(P("x1*(x1 - 1)"), P("x1"), p, 1)
    hyperbola = P("x1*x2 - 1")
    q = QRegularMap.polynomial(QAlgebraicSet(2, (hyperbola,)), (Poly.zero(2),))
    with pytest.raises(PreconditionError):
        blow_down(hyperbola, P("x1"), q, 1)


def test_blow_down_random_divisibility():
    rng = random.Random(12)
    for _ in range(6):
        a, b = rng.sample(range(1, 6), 2)
        s = P(f"(x1 - {a})*(x1 - {b})")
        p = QRegularMap.polynomial(QAlgebraicSet(1, (s,)), (rand_poly(rng, 1, 2, terms=2),))
        res = blow_down(s, P(f"x1 - {rng.randint(-2, 2)}"), p, F(1, rng.randint(1, 5)))
        assert res.witnesses[0].verdict is True


def test_adjunction_desk_instance():
    res = adjunction(S, P("x1 - 1"), P("x1"), QRegularMap.polynomial(X, (Poly.zero(1),)), 1, 1)
    assert res.ok
    assert res.f((1,)) == (0, 0, 0)
    assert res.f((2,)) != (0, 0, 0)


def test_adjunction_constant_on_a():
    c = F(3, 2)
    res = adjunction(S, P("x1 - 1"), P("x1 - 3/2"), QRegularMap.polynomial(X, (Poly.const(c, 1),)), 2, 1)
    assert res.ok
    fx = res.f((1,))
    assert fx[1:] == (c, 0)


def test_closeness_shrinks_with_c2():
    p = QRegularMap.polynomial(X, (P("x1 + 3"),))
    samples = [(1,), (2,)]
    big = closeness(blow_down(S, P("x1"), p, 1), p, samples)
    small = closeness(blow_down(S, P("x1"), p, F(1, 100)), p, samples)
    assert small < big


def test_compactify_example():
    res = compactify_inversion(P("x1*x2 - 1"), 2)
    assert res.t == P("x1*x2 - (x1^2 + x2^2)^2")
    pt = res.theta((2, F(1, 2)))
    assert pt == (F(8, 17), F(2, 17))
    assert poly_eval(res.t, pt) == 0
    assert res.ok and res.d_prime == 2
    assert all(w.verify() for w in res.divisibility)


def test_compactify_preconditions():
    with pytest.raises(PreconditionError):
        compactify_inversion(P("x1^2 - x1"), 2)
    with pytest.raises(PreconditionError):
        compactify_inversion(P("x1^3 + 1"), 2)


def test_compactify_random_roundtrip():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(1, 3)
        s = rand_poly(rng, n, 3)
        s = s + (1 - s.constant_term)
        res = compactify_inversion(s, max(s.degree, 1) + rng.randint(0, 1))
        assert res.ok
        num, _ = compose_clear(res.t, res.theta.numerators, res.theta.denominator, 0)
        assert num == s * norm_squared(n) ** res.d_prime


def test_decompactify_example():
    V = decompactify(P("x1*(x1 - 1)"), P("x1^2"), 1)
    assert V.contains((1, 1))
    assert not V.contains((0, 0))
    assert decompactify_lift((1,), 1) == (1, 1)
    assert decompactify_lift((1,), 4) == (1, F(1, 4))
    with pytest.raises(PreconditionError):
        decompactify(P("x1"), P("x1^2"), 0)
    with pytest.raises(PreconditionError):
        decompactify_lift((0,), 1)


def test_inversion_map():
    theta = inversion_map(2)
    assert theta((F(3, 5), F(4, 5))) == (F(3, 5), F(4, 5))
    assert theta((2, 0)) == (F(1, 2), 0)
    rng = random.Random(9)
    for _ in range(20):
        x = rand_point(rng, 3)
        if not any(x):
            continue
        y = inversion_map(3)(x)
        assert sum(c * c for c in y) * sum(c * c for c in x) == 1


def test_stereographic_examples():
    assert stereographic_lift(P("x1 - 1")) == P("x1 - 1 + x2")
    assert poly_eval(stereographic_lift(P("x1 - 1")), (0, 1)) == 0
    const = stereographic_witnesses(Poly.const(5, 1))
    assert const.P == Poly.const(5, 2)
    assert const.witnesses[0].verdict is None
    assert const.witnesses[0].detail["degree_zero_input"]


def test_stereographic_random_identities():
    rng = random.Random(10)
    for _ in range(30):
        p = rand_poly(rng, rng.randint(1, 3), 5)
        if p.degree == 0:
            continue
        res = stereographic_witnesses(p)
        assert res.ok
        north = [0] * p.nvars + [1]
        assert poly_eval(res.P, north) == 0
