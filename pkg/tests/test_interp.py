from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qvariety.errors import CertificateError, PreconditionError
from qvariety.interp import (RegularFunction1D, delta_compliant, interp_constants, lagrange_basis,
                             lagrange_interpolant, minimal_ell, point_mover, simplest_between,
                             small_interpolant, verify_bound)
from qvariety.ratpoly import Poly, parse_poly

F = Fraction


def P(text):
    return parse_poly(text, 1)


def test_lagrange_basis_examples():
    assert lagrange_basis([0]) == [Poly.const(1, 1)]
    assert lagrange_basis([0, 1]) == [P("1 - x1"), P("x1")]
    L = lagrange_basis([0, 1, 2])
    assert L[1] == P("-x1^2 + 2*x1")
    for i, Li in enumerate(L):
        for j in range(3):
            assert Li(j) == (1 if i == j else 0)


def test_lagrange_basis_repeated_node():
    with pytest.raises(PreconditionError):
        lagrange_basis([1, 1])


def test_minimal_ell():
    assert minimal_ell(0, 1, 0) == 0
    assert minimal_ell(1, 1, 0) == 1
    # alpha + beta - 1 - 2 ell <= -2k with alpha = beta = 2, k = 1
    assert minimal_ell(2, 2, 1) == 3
    for a in range(4):
        for b in range(1, 4):
            for k in range(3):
                ell = minimal_ell(a, b, k)
                assert a + b - 1 - 2 * ell <= -2 * k
                assert ell == 0 or a + b - 1 - 2 * (ell - 1) > -2 * k


def test_constants_degenerate():
    bundle = interp_constants([], [F(3, 2)], 0, 0, F(1, 10))
    assert bundle.ell == 0
    assert bundle.delta1 is None and bundle.delta2 is None
    assert bundle.delta3 == 1
    assert bundle.M > 0 and bundle.N > 0 and bundle.L > 0 and 0 < bundle.delta <= bundle.delta3


def test_constants_single_fixed_point():
    assert interp_constants([0], [F(3, 2)], 0, 0, F(1, 10)).ell == 1


def test_constants_reference_instance():
    bundle = interp_constants([0, 1], [F(3, 2), F(-5, 7)], 1, 2, F(1, 100))
    assert bundle.ell == 3
    assert bundle.delta1 == F(31, 42)
    assert bundle.delta3 == F(1, 4)
    assert bundle.M == F(227134815, 4194304)
    assert bundle.N == F(26913451, 16777216)
    assert bundle.L == 48
    assert bundle.delta == F(1, 8388608)
    assert bundle.delta <= bundle.eps / (2 * bundle.beta * (bundle.alpha + bundle.beta) * bundle.M * bundle.N
                                         * bundle.L)


def test_delta_monotone_in_eps():
    deltas = [interp_constants([0, 1], [F(3, 2), F(-5, 7)], 1, 2, F(1, 10 ** j)).delta for j in range(1, 5)]
    assert all(x >= y for x, y in zip(deltas, deltas[1:]))


def test_delta_monotone_in_size():
    small = interp_constants([0], [F(3, 2)], 1, 1, F(1, 10)).delta
    more_b = interp_constants([0], [F(3, 2), F(5, 2)], 1, 1, F(1, 10)).delta
    more_a = interp_constants([0, 4], [F(3, 2)], 1, 1, F(1, 10)).delta
    assert more_b <= small and more_a <= small


def test_constants_preconditions():
    with pytest.raises(PreconditionError):
        interp_constants([1], [1], 0, 0, F(1, 10))
    with pytest.raises(PreconditionError):
        interp_constants([], [], 0, 0, F(1, 10))
    with pytest.raises(PreconditionError):
        interp_constants([], [1, 1], 0, 0, F(1, 10))


def test_desk_interpolant():
    b, c = F(3, 2), F(7, 5)
    Lc = lagrange_interpolant([0], [b], [c], 1)
    expected = RegularFunction1D(P("x1").scale((1 + c * c) * (b - c) / c), 1)
    assert Lc == expected
    assert Lc(0) == 0
    assert Lc(c) == F(1, 10)


def test_desk_interpolant_is_delta_compliant_for_loose_eps():
    bundle = interp_constants([0], [F(3, 2)], 0, 0, F(3, 2))
    assert delta_compliant([F(3, 2)], [F(7, 5)], bundle)
    Lc = small_interpolant([0], [F(3, 2)], [F(7, 5)], bundle)
    assert verify_bound(Lc, F(3, 2), 0, 0).ok


def test_small_interpolant_rejects_far_nodes():
    bundle = interp_constants([0], [F(3, 2)], 1, 1, F(1, 100))
    with pytest.raises(PreconditionError):
        small_interpolant([0], [F(3, 2)], [F(7, 5)], bundle)


def test_exact_hit_is_zero():
    bundle = interp_constants([0], [F(3, 2)], 1, 1, F(1, 100))
    assert small_interpolant([0], [F(3, 2)], [F(3, 2)], bundle).is_zero()


def test_two_nodes_no_fixed_points():
    b = [F(1, 3), F(9, 4)]
    bundle = interp_constants([], b, 1, 1, F(1, 20))
    c = [x + bundle.delta / 2 for x in b]
    Lc = small_interpolant([], b, c, bundle)
    for bj, cj in zip(b, c):
        assert Lc(cj) == bj - cj
    assert verify_bound(Lc, F(1, 20), 1, 1).ok


def test_verify_bound_examples():
    assert verify_bound(RegularFunction1D.zero(), F(1, 10 ** 9), 2, 2).ok
    bundle = interp_constants([0], [F(3, 2)], 1, 1, F(1, 10))
    c = [F(3, 2) + bundle.delta / 3]
    Lc = small_interpolant([0], [F(3, 2)], c, bundle)
    assert verify_bound(Lc, F(1, 10), 1, 1).ok
    assert not verify_bound(Lc.scale(10 ** 12), F(1, 10), 1, 1).ok


def test_verify_bound_detects_growth():
    # x / (1 + x^2)^0 is unbounded, so the tail check must fail
    assert not verify_bound(RegularFunction1D(P("x1"), 0), F(1), 0, 0).ok
    # x / (1 + x^2) peaks at 1/2
    f = RegularFunction1D(P("x1"), 1)
    assert verify_bound(f, F(51, 100), 0, 0).ok
    assert not verify_bound(f, F(49, 100), 0, 0).ok


def test_regular_function_calculus():
    f = RegularFunction1D(P("x1"), 1)
    df = f.derivative()
    # d/dx x/(1+x^2) = (1 - x^2)/(1+x^2)^2
    assert df(0) == 1 and df(1) == 0 and df(2) == F(-3, 25)
    assert (f + RegularFunction1D.identity())(1) == F(3, 2)
    assert f.lift(2)(3) == f(3)


def test_simplest_between():
    assert simplest_between(F(13, 10), F(17, 10)) == F(3, 2)
    assert simplest_between(F(1, 3), F(1, 2)) == F(2, 5)
    assert simplest_between(F(-17, 10), F(-13, 10)) == F(-3, 2)
    assert simplest_between(F(2), F(3)) == F(5, 2)
    x = simplest_between(F(-1, 7), F(1, 9))
    assert x == 0


def test_randomized_conclusions():
    rng = random.Random(21)
    for _ in range(8):
        alpha, beta = rng.randint(0, 2), rng.randint(1, 2)
        k, m = rng.randint(0, 1), rng.randint(0, 1)
        pool = rng.sample(range(-12, 13), alpha + beta)
        A = [F(v, 3) for v in pool[:alpha]]
        b = [F(v, 3) + F(1, 11) for v in pool[alpha:]]
        eps = F(1, 10)
        bundle = interp_constants(A, b, k, m, eps)
        c = [x + bundle.delta * F(rng.randint(-9, 9), 10) for x in b]
        Lc = small_interpolant(A, b, c, bundle)
        assert all(Lc(a) == 0 for a in A)
        assert all(Lc(cj) == bj - cj for bj, cj in zip(b, c))
        assert verify_bound(Lc, eps, k, m).ok


def test_point_mover_identity():
    mover = point_mover([(0, 1)], [], F(1, 2), 0, 1)
    assert all(psi == RegularFunction1D.identity() for psi in mover.psi)
    assert mover((F(5, 7), 3)) == (F(5, 7), 3)


def test_point_mover_desk_instance():
    mover = point_mover([(0,)], [(F(3, 2),)], F(1, 2), 0, 1, nodes=[{F(3, 2): F(7, 5)}])
    assert mover((0,)) == (0,)
    assert mover((F(7, 5),)) == (F(3, 2),)
    assert mover.c_nodes == [(F(7, 5),)]
    assert mover.coordinates[0].certificate.ok
    assert not mover.coordinates[0].delta_compliant


def test_point_mover_two_coordinates():
    A = [(0, 0), (1, 2)]
    B = [(F(1414, 1000), F(1732, 1000))]
    mover = point_mover(A, B, F(1, 2), 0, 1)
    for a in A:
        assert mover(a) == tuple(F(x) for x in a)
    preimage = mover.preimage(B[0])
    assert mover(preimage) == B[0]
    for coord in mover.coordinates:
        assert coord.delta_compliant and coord.certificate.ok
        # psi' = 1 + L_c' stays positive at sampled points
        d = coord.psi.derivative()
        for x in range(-20, 21):
            assert d(F(x, 2)) > 0


def test_point_mover_preconditions():
    with pytest.raises(PreconditionError):
        point_mover([(0,)], [(1,)], F(1, 2), 0, 0)
    with pytest.raises(PreconditionError):
        point_mover([(0,)], [(1,)], F(2), 0, 1)


def test_point_mover_refuses_uncertifiable_nodes():
    with pytest.raises(CertificateError):
        point_mover([(0,)], [(F(3, 2),)], F(1, 100), 0, 1, nodes=[{F(3, 2): F(1, 2)}])
