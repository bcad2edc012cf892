from __future__ import annotations

from fractions import Fraction

import pytest

from qvariety import forms
from qvariety.errors import DimensionMismatch, NotOnVariety, PreconditionError
from qvariety.generators import grassmannian, grassmannian_polys, mu
from qvariety.linalg import flatten
from qvariety.overt import certify_form
from qvariety.qset import (QAlgebraicSet, QRegularMap, compose, disjoint_glue, graph, intersect, product,
                           pullback, qregular_extend, require_member, single_generator, translate, union)
from qvariety.ratpoly import Poly, parse_poly, poly_eval

F = Fraction


def P(text, n=None):
    return parse_poly(text, n)


def Z(*gens, n=None):
    polys = tuple(P(g, n) for g in gens)
    return QAlgebraicSet(n or max(p.nvars for p in polys), polys)


def test_single_generator_examples():
    assert single_generator(Z("x1", "x2", n=2)) == P("x1^2 + x2^2")
    p = P("x1^3 - x1 + 1")
    assert single_generator(QAlgebraicSet(1, (p,))) == p * p
    s = single_generator(grassmannian(2, 1))
    assert poly_eval(s, (1, 0, 0, 0)) == 0
    assert poly_eval(s, (1, 0, 0, 1)) != 0


def test_union_example():
    U = union(Z("x1 - 1"), Z("x1 + 1"))
    assert U.generators == (P("(x1 - 1)^2*(x1 + 1)^2"),)
    assert U.contains((1,)) and U.contains((-1,)) and not U.contains((0,))


def test_intersect_examples():
    origin = intersect(Z("x1", n=2), Z("x2", n=2))
    assert origin.contains((0, 0)) and not origin.contains((0, 1))
    V = Z("x1^2 + x2^2 - 1")
    assert intersect(V, QAlgebraicSet.full_space(2)) is V


def test_product_example():
    W = product(Z("x1 - 1"), Z("x1 - 2"))
    assert W.ambient_dim == 2
    assert W.contains((1, 2)) and not W.contains((2, 1))


def test_translate_example():
    assert translate(Z("x1"), (1,)).generators == (P("x1 - 1"),)


def test_translate_zero_is_identity():
    V = Z("x1^2 + x2^2 - 1")
    assert translate(V, (0, 0)) is V


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        union(Z("x1"), Z("x1 + x2"))
    with pytest.raises(DimensionMismatch):
        Z("x1^2 - 1").contains((1, 2))


def test_zero_generators_dropped():
    V = QAlgebraicSet(2, (Poly.zero(2), P("x1", 2)))
    assert V.generators == (P("x1", 2),)
    assert QAlgebraicSet.full_space(3).is_full_space()


def test_point_set_is_overt():
    S = QAlgebraicSet.point((F(1, 2), -3))
    assert S.contains((F(1, 2), -3))
    assert certify_form(S.overt).is_overt


def test_overt_forms_propagate():
    circle = Z("x1^2 + x2^2 - 1")
    sphere = Z("x1^2 + x2^2 + x3^2 - 4")
    for built in (union(circle, Z("x1^2 + x2^2 - 4")), product(circle, sphere),
                  intersect(circle, Z("x1 - x2")), translate(circle.with_overt(forms.Leaf(circle.generators[0])),
                                                             (1, F(1, 3)))):
        assert built.overt is not None
        assert certify_form(built.overt).is_overt


def test_extend_inverse_on_two_points():
    V = Z("x1^2 - 2")
    f = QRegularMap(V, (Poly.const(1, 1),), P("x1"), "asserted")
    ext = qregular_extend(f)
    assert ext.map.numerators == (P("x1"),)
    assert ext.map.denominator == P("(x1^2 - 2)^2 + x1^2")
    assert all(w.verify() for w in ext.witnesses)


def test_extend_circle_slope():
    V = Z("x1^2 + x2^2 - 1")
    f = QRegularMap(V, (P("x1", 2),), P("x2", 2), "samples", ((F(3, 5), F(4, 5)),))
    ext = qregular_extend(f)
    a = (F(3, 5), F(4, 5))
    assert f(a) == ext.map(a) == (F(3, 4),)
    assert all(w.verify() for w in ext.witnesses)


def test_glue_example():
    f = QRegularMap.polynomial(Z("x1 - 1"), (Poly.const(2, 1),))
    g = QRegularMap.polynomial(Z("x1 + 1"), (Poly.const(3, 1),))
    glued = disjoint_glue(f, g, samples=[(1,), (-1,)])
    assert glued.map((1,)) == (2,)
    assert glued.map((-1,)) == (3,)
    assert all(w.verify() for w in glued.witnesses)


def test_glue_same_constant():
    f = QRegularMap.polynomial(Z("x1 - 1"), (Poly.const(5, 1),))
    g = QRegularMap.polynomial(Z("x1 - 3"), (Poly.const(5, 1),))
    glued = disjoint_glue(f, g, samples=[(1,), (3,)])
    assert glued.map((1,)) == glued.map((3,)) == (5,)


def test_glue_rejects_overlap():
    f = QRegularMap.polynomial(Z("x1 - 1"), (Poly.const(2, 1),))
    g = QRegularMap.polynomial(Z("x1^2 - 1"), (Poly.const(3, 1),))
    with pytest.raises(PreconditionError):
        disjoint_glue(f, g, samples=[(1,)])


def test_graph_examples():
    ident = QRegularMap.polynomial(QAlgebraicSet.full_space(1), (P("x1"),))
    assert graph(ident).generators == (P("(x2 - x1)^2"),)

    inv = QRegularMap(Z("x1^2 - 2"), (Poly.const(1, 1),), P("x1"), "asserted")
    assert graph(inv).generators == (P("(x1^2 - 2)^2 + (x1*x2 - 1)^2"),)

    circle = Z("x1^2 + x2^2 - 1")
    slope = QRegularMap(circle, (P("x1", 2),), P("x2", 2), "samples", ((F(3, 5), F(4, 5)),))
    a = (F(3, 5), F(4, 5))
    assert graph(slope).contains(a + slope(a))


def test_compose_example():
    f = QRegularMap(QAlgebraicSet.full_space(1), (P("x1"),), P("1 + x1^2"), "sos")
    g = QRegularMap.polynomial(QAlgebraicSet.full_space(1), (P("x1^2"),))
    h = compose(g, f)
    assert h((1,)) == (F(1, 4),)
    for x in (F(-2), F(1, 3), F(7, 2)):
        assert h((x,)) == g(f((x,)))


def test_compose_with_constant():
    f = QRegularMap.polynomial(QAlgebraicSet.full_space(2), (Poly.const(F(2, 3), 2),))
    g = QRegularMap(QAlgebraicSet.full_space(1), (P("x1^3 - 1"),), P("2 + x1^2"), "sos")
    h = compose(g, f)
    for pt in [(0, 0), (1, -1), (F(5, 2), 3)]:
        assert h(pt) == g((F(2, 3),))


def test_pullback_examples():
    f = QRegularMap.polynomial(QAlgebraicSet.full_space(1), (P("x1"), P("x1^2")))
    W = pullback(f, Z("x2 - 1", n=2))
    assert W.contains((1,)) and W.contains((-1,)) and not W.contains((0,))

    V = Z("x1^2 - 4")
    g = QRegularMap.polynomial(V, (P("x1"), P("x1 + 1")))
    assert pullback(g, QAlgebraicSet.full_space(2)).generators == V.generators


def test_pullback_of_trace_along_mu():
    # x -> mu(1, x) on the unit circle, pulled back through the trace generator
    circle = Z("x1^2 + x2^2 - 1")
    x1, x2 = P("x1", 2), P("x2", 2)
    lift = QRegularMap(circle, (x1 * x1, x1 * x2, x1 * x2, x2 * x2), P("x1^2 + x2^2", 2), "samples",
                       ((F(3, 5), F(4, 5)),))
    trace = QAlgebraicSet(4, (grassmannian_polys(2, 1)[-1],))
    W = pullback(lift, trace)
    for a in [(F(3, 5), F(4, 5)), (F(5, 13), F(-12, 13)), (1, 0)]:
        assert W.contains(a)
        assert flatten(mu(1, a)) == lift(a)


def test_require_member():
    V = Z("x1^2 + x2^2 - 1")
    require_member(V, (F(3, 5), F(4, 5)))
    with pytest.raises(NotOnVariety):
        require_member(V, (1, 1))


def test_map_nonvanishing_tags():
    with pytest.raises(PreconditionError):
        QRegularMap(QAlgebraicSet.full_space(1), (P("x1"),), P("x1"), "sos")
    with pytest.raises(PreconditionError):
        QRegularMap(QAlgebraicSet.full_space(1), (P("x1"),), P("x1"), "samples", ((0,),))
    f = QRegularMap(QAlgebraicSet.full_space(1), (P("x1"),), P("x1"), "samples", ((2,),))
    assert f((2,)) == (1,)
