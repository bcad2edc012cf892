from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qvariety import forms
from qvariety.generators import grassmannian
from qvariety.harness import rand_overt_poly, rand_point
from qvariety.overt import (NOT_OVERT, OVERT, certify_form, is_projectively_closed, kth_root, overtness,
                            rational_root, verify_witness)
from qvariety.qset import QAlgebraicSet, intersect, product, translate, union
from qvariety.ratpoly import Poly, parse_poly, poly_eval

F = Fraction


def P(text, n=None):
    return parse_poly(text, n)


def test_circle_is_overt():
    v = overtness(P("x1^2 + x2^2 - 1"))
    assert v.outcome == OVERT and v.certificate is not None


def test_cubic_line_is_not_overt():
    p = P("x1^3 + 2*x2^3")
    v = overtness(p)
    assert v.outcome == NOT_OVERT
    assert verify_witness(p, v.witness)


def test_hyperbola_is_not_overt():
    p = P("x1*x2 - 1")
    v = overtness(p)
    assert v.outcome == NOT_OVERT
    assert verify_witness(p, v.witness)
    assert v.witness["kind"] == "rational"
    assert poly_eval(p.top_form(), [F(x) for x in v.witness["point"].split(",")]) == 0


def test_witness_rejected_when_wrong():
    p = P("x1^2 + x2^2")
    assert not verify_witness(p, {"kind": "rational", "point": "1,0"})
    assert not verify_witness(p, {"kind": "sign-change", "start": "1,0", "end": "0,1", "interval": ["0", "1"]})


def test_projective_closure_of_sets():
    assert is_projectively_closed(QAlgebraicSet(2, (P("x1^2 + x2^2 - 1"),))).is_overt
    hyperbola = is_projectively_closed(QAlgebraicSet(2, (P("x1*x2 - 1"),)))
    assert hyperbola.outcome == NOT_OVERT
    assert is_projectively_closed(grassmannian(3, 1)).is_overt


def test_zero_and_constants():
    assert overtness(Poly.zero(2)).outcome == NOT_OVERT
    assert overtness(Poly.const(3, 2)).is_overt


def test_positive_definite_quartic():
    assert overtness(P("x1^4 + x1^2*x2^2 + x2^4 - x1*x2 + 7")).is_overt
    assert overtness(P("x1^4 - x1^2*x2^2 + x2^4")).is_overt


def test_one_variable_odd_power_is_overt():
    # Z(x^3 + 1) is a single point, so compact
    assert overtness(P("x1^3 + 1")).is_overt


def test_roots():
    assert rational_root(F(8, 27), 3) == F(2, 3)
    assert rational_root(F(2), 2) is None
    q = P("x1^2 + x2 - 1")
    assert kth_root(q ** 3, 3) == q


def test_form_rules_reject_mismatched_exponents():
    a = forms.Leaf(P("x1^2 + 1", 2))
    b = forms.Leaf(P("x2^2 + 1", 2))
    assert certify_form(forms.SumPow(a, 2, b, 2)).is_overt
    assert not certify_form(forms.SumPow(a, 1, b, 2)).is_overt


def test_structural_closure_randomized():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(1, 2)
        a, b = rand_overt_poly(rng, n), rand_overt_poly(rng, n)
        V = QAlgebraicSet(n, (a,), overt=forms.Leaf(a))
        W = QAlgebraicSet(n, (b,), overt=forms.Leaf(b))
        for S in (union(V, W), product(V, W), intersect(V, W), translate(V, rand_point(rng, n))):
            assert certify_form(S.overt).is_overt
            # the structural top form agrees with the expanded polynomial's top form
            assert forms.structural_top_form(S.overt) == forms.expand(S.overt).top_form()


@pytest.mark.parametrize("text", ["x1^2 - x2^2", "x1^3 - x2^3", "x1*x2 + x3^2", "x1^4 - 3*x1^2*x2^2 + x2^4"])
def test_indefinite_tops_refuted(text):
    p = P(text)
    v = overtness(p)
    assert v.outcome == NOT_OVERT
    assert verify_witness(p, v.witness)
