from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qvariety.errors import DimensionMismatch, PreconditionError
from qvariety.generators import (CobordismSpec, cobordism_bookkeeping, cobordism_generator, disjoint_translations,
                                 estimate, grassmannian, grassmannian_polys, milnor_hypersurface, mu,
                                 normal_bundle_map, universal_bundle)
from qvariety.harness import milnor_point, rand_fraction
from qvariety.linalg import flatten, matmul, trace, transpose
from qvariety.overt import certify_form
from qvariety.ratpoly import Poly, parse_poly, poly_eval
from qvariety.regstar import jacobian_rank_at

F = Fraction


def P(text, n=None):
    return parse_poly(text, n)


def test_grassmannian_1_1_is_a_point():
    G = grassmannian(1, 1)
    assert G.contains((1,))
    assert not G.contains((0,)) and not G.contains((2,))


def test_grassmannian_2_1_has_seven_generators():
    assert len(grassmannian(2, 1).generators) == 7


def test_grassmannian_overt_and_dimension():
    G = grassmannian(3, 2)
    assert G.claimed_dim == 2
    assert certify_form(G.overt).is_overt


def test_grassmannian_bad_k():
    with pytest.raises(PreconditionError):
        grassmannian(2, 3)


def test_mu_examples():
    assert mu(1, (1, 0)) == [[1, 0], [0, 0]]
    assert mu(1, (3, 4)) == [[F(9, 25), F(12, 25)], [F(12, 25), F(16, 25)]]
    assert mu(2, (1, -2, 3)) == mu(2, (F(-1, 2), 1, F(-3, 2)))


def test_mu_errors():
    with pytest.raises(PreconditionError):
        mu(1, (0, 0))
    with pytest.raises(DimensionMismatch):
        mu(2, (1, 0))


def test_mu_symbolic_identity():
    # (x x^T)^2 = |x|^2 x x^T as polynomials, for n <= 3
    for n in range(1, 4):
        xs = Poly.variables(n + 1)
        X = [[a * b for b in xs] for a in xs]
        norm = sum((x * x for x in xs), Poly.zero(n + 1))
        for i in range(n + 1):
            for j in range(n + 1):
                sq = sum((X[i][h] * X[h][j] for h in range(n + 1)), Poly.zero(n + 1))
                assert sq == norm * X[i][j]


def test_mu_lands_in_projective_space():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 3)
        x = [rand_fraction(rng) for _ in range(n + 1)]
        if not any(x):
            continue
        assert grassmannian(n + 1, 1).contains(flatten(mu(n, x)))


def test_milnor_examples():
    H = milnor_hypersurface(1, 1)
    assert H.contains(flatten(mu(1, (0, 1))) + flatten(mu(1, (1, 0))))
    assert not H.contains(flatten(mu(1, (1, 0))) + flatten(mu(1, (1, 0))))
    assert H.claimed_dim == 1
    with pytest.raises(PreconditionError):
        milnor_hypersurface(2, 1)


def test_milnor_random_pairs():
    rng = random.Random(8)
    for n, m in [(1, 2), (2, 2), (1, 3)]:
        H = milnor_hypersurface(n, m)
        for _ in range(5):
            assert H.contains(milnor_point(rng, n, m))


def test_universal_bundle():
    E = universal_bundle(2, 1)
    D = (1, 0, 0, 0)
    assert E.contains(D + (1, 0))
    assert not E.contains(D + (0, 1))
    assert E.claimed_dim == 2
    assert jacobian_rank_at(E.generators, D + (1, 0)) >= 4


def test_normal_bundle_examples():
    assert normal_bundle_map([P("x2", 2)], (1, 0)) == [[0, 0], [0, 1]]
    circle = P("x1^2 + x2^2 - 1")
    B = normal_bundle_map([circle], (F(3, 5), F(4, 5)))
    assert B == [[F(9, 25), F(12, 25)], [F(12, 25), F(16, 25)]]
    grad = [[F(6, 5)], [F(8, 5)]]
    assert matmul(B, grad) == grad


def test_normal_bundle_is_a_projection():
    sphere = P("x1^2 + x2^2 + x3^2 - 1")
    plane = P("x1 - 2*x2 + 2*x3", 3)
    a = (F(2, 3), F(2, 3), F(1, 3))
    assert poly_eval(sphere, a) == 0 and poly_eval(plane, a) == 0
    B = normal_bundle_map([sphere, plane], a)
    assert B == transpose(B)
    assert matmul(B, B) == B
    assert trace(B) == 2
    assert grassmannian(3, 2).contains(flatten(B))


def test_normal_bundle_dependent_gradients():
    with pytest.raises(PreconditionError):
        normal_bundle_map([P("x1", 2), P("2*x1", 2)], (0, 0))


def test_cobordism_examples():
    one = CobordismSpec(n_list=(1,))
    assert cobordism_bookkeeping(one, 1)["N_h"] == 4
    Y = cobordism_generator(one, 1)
    assert Y.ambient_dim == 9
    assert Y.contains(flatten(mu(1, (3, 4))) + (0,) * 5)

    point = cobordism_generator(CobordismSpec(), 0)
    assert point.ambient_dim == 1 and point.contains((0,))

    two = CobordismSpec(n_list=(1, 1))
    book = cobordism_bookkeeping(two, 2)
    assert book["N_h"] == 8 and book["bound"] == 25


def test_cobordism_with_milnor_factor_and_translation():
    spec = CobordismSpec(n_list=(1,), ab_list=((1, 2),))
    d = spec.dimension
    assert d == 3
    v = [F(0)] * 49
    v[0] = F(5)
    Y = cobordism_generator(CobordismSpec(spec.n_list, spec.ab_list, tuple(v)), d)
    pt = list(flatten(mu(1, (1, 2))) + milnor_point(random.Random(1), 1, 2))
    pt += [F(0)] * (49 - len(pt))
    pt[0] += 5
    assert Y.contains(pt)
    assert certify_form(Y.overt).is_overt


def test_cobordism_bookkeeping_mismatch():
    with pytest.raises(PreconditionError):
        cobordism_bookkeeping(CobordismSpec(n_list=(2,)), 1)


def test_estimate_holds_randomly():
    rng = random.Random(2)
    for _ in range(100):
        counts = [rng.randint(1, 4) for _ in range(rng.randint(0, 4))]
        lhs, rhs = estimate(counts)
        assert lhs <= rhs


def test_disjoint_translations_spacing():
    specs = [CobordismSpec(n_list=(1,)), CobordismSpec(ab_list=((1, 1),))]
    vs = disjoint_translations(specs, 1)
    assert vs[0][0] == 0
    # radius^2 = 2 for the Milnor factor, so the spacing must exceed 2*sqrt(2)
    assert vs[1][0] ** 2 > 8


def test_spec_json_roundtrip():
    spec = CobordismSpec((1, 2), ((1, 1),), ())
    assert CobordismSpec.from_json(spec.to_json(spec.dimension)) == spec


def test_grassmannian_generators_vanish_on_projections():
    # mu(1, (3, 4)) flattened
    A = (F(9, 25), F(12, 25), F(12, 25), F(16, 25))
    assert all(poly_eval(g, A) == 0 for g in grassmannian_polys(2, 1))
