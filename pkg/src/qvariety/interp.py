"""Small Lagrange-type interpolation with a certified constant chain.

All one-variable functions here have the shape n(x) / (1 + x^2)^e with n a
rational polynomial.  The suprema entering the constant chain are replaced by
rigorous rational upper bounds, which only shrinks delta.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from qvariety.errors import CertificateError, DimensionMismatch, PreconditionError
from qvariety.ratpoly import (Interval, Poly, as_fraction, format_poly, format_rational,
                              interval_eval, taylor_coefficients)

DEFAULT_SUBDIV = 8
_GRID_BITS = 24


def subdivision_depth() -> int:
    raw = os.environ.get("QVARIETY_SUBDIV")
    if raw is None:
        return DEFAULT_SUBDIV
    try:
        depth = int(raw)
    except ValueError:
        raise PreconditionError(f"QVARIETY_SUBDIV must be an integer, got {raw!r}") from None
    if not 0 <= depth <= 20:
        raise PreconditionError("QVARIETY_SUBDIV must lie in 0..20")
    return depth


def _round_up(x: Fraction, bits: int = _GRID_BITS) -> Fraction:
    """Smallest dyadic with ``bits`` fractional bits that is >= x."""
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def _round_down(x: Fraction, bits: int = _GRID_BITS) -> Fraction:
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def _one_plus_x2(nvars: int = 1) -> Poly:
    return Poly.var(0, nvars) ** 2 + 1


# ---------------------------------------------------------------------------
# regular functions n(x) / (1 + x^2)^e


@dataclass(frozen=True)
class RegularFunction1D:
    numerator: Poly
    denom_power: int = 0

    def __post_init__(self):
        if self.numerator.nvars != 1:
            raise DimensionMismatch("a one-variable numerator is required")
        if self.denom_power < 0:
            raise PreconditionError("denominator power must be nonnegative")

    @classmethod
    def identity(cls) -> "RegularFunction1D":
        return cls(Poly.var(0, 1), 0)

    @classmethod
    def zero(cls) -> "RegularFunction1D":
        return cls(Poly.zero(1), 0)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        return self.numerator(x) / (1 + x * x) ** self.denom_power

    def lift(self, e: int) -> "RegularFunction1D":
        """Same function written over (1 + x^2)^e, e >= denom_power."""
        if e < self.denom_power:
            raise PreconditionError("cannot lower the denominator power")
        return RegularFunction1D(self.numerator * _one_plus_x2() ** (e - self.denom_power), e)

    def __add__(self, other: "RegularFunction1D") -> "RegularFunction1D":
        e = max(self.denom_power, other.denom_power)
        return RegularFunction1D(self.lift(e).numerator + other.lift(e).numerator, e)

    def scale(self, c) -> "RegularFunction1D":
        return RegularFunction1D(self.numerator.scale(c), self.denom_power)

    def derivative(self) -> "RegularFunction1D":
        n, e = self.numerator, self.denom_power
        if e == 0:
            return RegularFunction1D(n.diff(0), 0)
        x = Poly.var(0, 1)
        return RegularFunction1D(n.diff(0) * _one_plus_x2() - n * x.scale(2 * e), e + 1)

    def to_json(self) -> dict:
        return {"numerator": format_poly(self.numerator), "denom_power": self.denom_power}


# ---------------------------------------------------------------------------
# Lagrange basis


def lagrange_basis(c: Sequence) -> list[Poly]:
    c = [as_fraction(x) for x in c]
    if len(set(c)) != len(c):
        raise PreconditionError("Lagrange nodes must be pairwise distinct")
    x = Poly.var(0, 1)
    basis = []
    for j, cj in enumerate(c):
        num = Poly.const(1, 1)
        den = Fraction(1)
        for s, cs in enumerate(c):
            if s != j:
                num = num * (x - cs)
                den *= cj - cs
        basis.append(num.scale(1 / den))
    return basis


def _node_poly(A: Sequence[Fraction]) -> Poly:
    x = Poly.var(0, 1)
    p = Poly.const(1, 1)
    for a in A:
        p = p * (x - a)
    return p


# ---------------------------------------------------------------------------
# constant chain


@dataclass(frozen=True)
class ConstantsBundle:
    """The constant chain; delta1 (delta2) is None when beta = 1 (A is empty)."""

    delta1: Fraction | None
    delta2: Fraction | None
    delta3: Fraction
    ell: int
    M: Fraction
    N: Fraction
    L: Fraction
    delta: Fraction
    alpha: int
    beta: int
    k: int
    m: int
    eps: Fraction
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        def fmt(v):
            return None if v is None else format_rational(v)

        return {
            "alpha": self.alpha, "beta": self.beta, "k": self.k, "m": self.m,
            "eps": fmt(self.eps),
            "delta1": fmt(self.delta1), "delta2": fmt(self.delta2), "delta3": fmt(self.delta3),
            "ell": self.ell, "M": fmt(self.M), "N": fmt(self.N), "L": fmt(self.L),
            "delta": fmt(self.delta),
            "notes": list(self.notes),
        }


def _check_nodes(A: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    A = sorted(set(as_fraction(a) for a in A))
    b = [as_fraction(x) for x in b]
    if not b:
        raise PreconditionError("at least one target value is required")
    if len(set(b)) != len(b):
        raise PreconditionError("target values must be pairwise distinct")
    if set(A) & set(b):
        raise PreconditionError("target values must avoid the fixed set")
    return A, b


def minimal_ell(alpha: int, beta: int, k: int) -> int:
    """Least natural ell with alpha + beta - 1 - 2 ell <= -2k."""
    return max(0, -(-(alpha + beta - 1 + 2 * k) // 2))


def _bound_M(A: list[Fraction], b: list[Fraction], radius: Fraction, ell: int, depth: int) -> Fraction:
    """Upper bound of (1 + x^2)^ell / |p(x)| over the union of [b_j - r, b_j + r]."""
    best = Fraction(0)
    pieces = 1 << depth
    for bj in b:
        lo = bj - radius
        step = 2 * radius / pieces
        for i in range(pieces):
            iv = Interval(lo + i * step, lo + (i + 1) * step)
            top = (iv ** 2 + 1) ** ell
            bottom = Interval(1, 1)
            for a in A:
                bottom = bottom * (iv - a)
            if bottom.contains_zero():
                raise AssertionError("node polynomial vanishes on K")
            best = max(best, top.mag / bottom.mig)
    return best


def _q_coefficients(A: list[Fraction], beta: int, j: int) -> list[Poly]:
    """q_{j,w}(y) with p(x) * prod_{s != j}(x - y_s) = sum_w q_{j,w}(y) x^w."""
    nv = beta + 1
    x = Poly.var(0, nv)
    prod = _node_poly(A).embed(nv)
    for s in range(beta):
        if s != j:
            prod = prod * (x - Poly.var(s + 1, nv))
    return [_shift_down(coeff, beta) for _, coeff in sorted(prod.coefficients_in(0).items())]


def _shift_down(p: Poly, beta: int) -> Poly:
    """Re-index a polynomial in (x, y_1..y_beta) free of x as one in y only."""
    return Poly(beta, {e[1:]: c for e, c in p.terms.items()})


def _bound_N(A: list[Fraction], b: list[Fraction], radius: Fraction) -> Fraction:
    beta = len(b)
    box = [Interval(bj - radius, bj + radius) for bj in b]
    best = Fraction(0)
    for j in range(beta):
        den = Interval(1, 1)
        for s in range(beta):
            if s != j:
                den = den * (box[j] - box[s])
        if den.contains_zero():
            raise AssertionError("node intervals overlap")
        for q in _q_coefficients(A, beta, j):
            best = max(best, interval_eval(q, box).mag / den.mig)
    return best


def _bound_L(alpha: int, beta: int, ell: int, m: int) -> Fraction:
    """Coefficient-sum bound for D_h g_w, g_w = x^w (1 + x^2)^-ell."""
    best = Fraction(0)
    for w in range(alpha + beta):
        g = RegularFunction1D(Poly.monomial((w,)), ell)
        for _ in range(m + 1):
            best = max(best, sum((abs(c) for c in g.numerator.terms.values()), Fraction(0)))
            g = g.derivative()
    return best


def _min_gap(values: Sequence[Fraction], others: Sequence[Fraction] | None = None) -> Fraction | None:
    if others is None:
        gaps = [abs(u - v) for i, u in enumerate(values) for v in values[i + 1:]]
    else:
        gaps = [abs(u - v) for u in values for v in others]
    return min(gaps) if gaps else None


def interp_constants(A: Sequence, b: Sequence, k: int, m: int, eps, depth: int | None = None) -> ConstantsBundle:
    A, b = _check_nodes(A, b)
    eps = as_fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if k < 0 or m < 0:
        raise PreconditionError("k and m must be natural numbers")
    depth = subdivision_depth() if depth is None else depth
    alpha, beta = len(A), len(b)
    notes = []
    gap_b = _min_gap(b)
    gap_ab = _min_gap(A, b)
    delta1 = None if gap_b is None else gap_b / 3
    delta2 = None if gap_ab is None else gap_ab / 2
    present = [d for d in (delta1, delta2) if d is not None]
    if present:
        delta3 = min(present)
    else:
        delta3 = Fraction(1)
        notes.append("no pairs to separate; delta3 set to 1")
    ell = minimal_ell(alpha, beta, k)
    M = _round_up(_bound_M(A, b, delta3, ell, depth))
    N = _round_up(_bound_N(A, b, delta3))
    L = _bound_L(alpha, beta, ell, m)
    terms = beta * (alpha + beta)
    cap = eps / (2 * terms * M * N * L)
    delta = min(delta3, _round_down(cap))
    if delta <= 0:
        delta = min(delta3, cap)
    notes.append("K and H are built with radius delta3, which contains the delta-neighbourhoods")
    return ConstantsBundle(delta1, delta2, delta3, ell, M, N, L, delta,
                           alpha, beta, k, m, eps, tuple(notes))


# ---------------------------------------------------------------------------
# the interpolant


def lagrange_interpolant(A: Sequence, b: Sequence, c: Sequence, ell: int) -> RegularFunction1D:
    """p(x) (1+x^2)^-ell * sum_j (1+c_j^2)^ell / p(c_j) * (b_j - c_j) * L_{c,j}(x).

    No closeness of c to b is required; the result vanishes on A and takes
    the value b_j - c_j at c_j.
    """
    A = sorted(set(as_fraction(a) for a in A))
    b = [as_fraction(x) for x in b]
    c = [as_fraction(x) for x in c]
    if len(c) != len(b):
        raise DimensionMismatch("need one node per target value")
    if len(set(c)) != len(c):
        raise PreconditionError("nodes must be pairwise distinct")
    if set(c) & set(A):
        raise PreconditionError("a node lies in the fixed set")
    p = _node_poly(A)
    acc = Poly.zero(1)
    for bj, cj, Lj in zip(b, c, lagrange_basis(c)):
        weight = (1 + cj * cj) ** ell / p(cj) * (bj - cj)
        if weight:
            acc = acc + Lj.scale(weight)
    if acc.is_zero():
        return RegularFunction1D.zero()
    return RegularFunction1D(p * acc, ell)


def delta_compliant(b: Sequence, c: Sequence, bundle: ConstantsBundle) -> bool:
    return all(abs(as_fraction(x) - as_fraction(y)) < bundle.delta for x, y in zip(b, c))


def small_interpolant(A: Sequence, b: Sequence, c: Sequence, bundle: ConstantsBundle) -> RegularFunction1D:
    A, b = _check_nodes(A, b)
    if len(c) != len(b):
        raise DimensionMismatch("need one node per target value")
    for bj, cj in zip(b, c):
        if not abs(bj - as_fraction(cj)) < bundle.delta:
            raise PreconditionError(f"node {format_rational(as_fraction(cj))} is not within delta of "
                                    f"{format_rational(bj)}")
    return lagrange_interpolant(A, b, c, bundle.ell)


# ---------------------------------------------------------------------------
# certified bound |D_h f(x)| < eps (1 + x^2)^-k


@dataclass(frozen=True)
class BoundVerdict:
    ok: bool
    reason: str
    window: Fraction | None = None
    checks: tuple[dict, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "verdict": self.ok,
            "reason": self.reason,
            "window": None if self.window is None else format_rational(self.window),
            "checks": list(self.checks),
        }


def _int_coeffs(p: Poly) -> tuple[list[int], int]:
    coeffs = p.univariate_coefficients()
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [int(c * den) for c in coeffs], den


def _tail_window(coeffs: list[Fraction], E: int, eps: Fraction, max_doublings: int = 200) -> Fraction | None:
    """T >= 1 with sum |g_i| T^(i - 2E) < eps, which bounds |g|/(1+x^2)^E for |x| >= T."""
    if len(coeffs) - 1 > 2 * E:
        return None
    T = Fraction(1)
    for _ in range(max_doublings):
        bound = sum((abs(c) * T ** (i - 2 * E) for i, c in enumerate(coeffs) if c), Fraction(0))
        if bound < eps:
            return T
        T *= 2
    return None


def _enclose_ratio(coeffs: list[Fraction], E: int, iv: Interval) -> Fraction | None:
    """Upper bound of |g(x)| / (1+x^2)^E on iv via a centered form for g."""
    a = taylor_coefficients(coeffs, iv.mid) if coeffs else [Fraction(0)]
    r = iv.width / 2
    spread = Fraction(0)
    rk = Fraction(1)
    for c in a[1:]:
        rk *= r
        spread += abs(c) * rk
    top = abs(a[0]) + spread
    den = (iv ** 2 + 1) ** E
    return top / den.lo


def _certify_window(coeffs: list[Fraction], E: int, eps: Fraction, T: Fraction,
                    max_depth: int, budget: int) -> tuple[bool, str]:
    stack = [(Interval(-T, T), 0)]
    used = 0
    while stack:
        iv, depth = stack.pop()
        used += 1
        if used > budget:
            return False, "could not certify: subdivision budget exhausted"
        if _enclose_ratio(coeffs, E, iv) < eps:
            continue
        x = iv.mid
        value = sum((c * x ** i for i, c in enumerate(coeffs)), Fraction(0)) / (1 + x * x) ** E
        if abs(value) >= eps:
            return False, f"bound violated at x = {format_rational(x)}"
        if depth >= max_depth:
            return False, "could not certify: subdivision depth exhausted"
        left, right = iv.split()
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return True, "certified"


def verify_bound(Lc: RegularFunction1D, eps, k: int, m: int, samples: Sequence = (),
                 max_depth: int = 60, budget: int = 20000) -> BoundVerdict:
    """Certify |D_h Lc(x)| < eps (1 + x^2)^-k for all real x and h = 0..m."""
    eps = as_fraction(eps)
    if eps <= 0:
        return BoundVerdict(False, "eps must be positive")
    if Lc.is_zero():
        return BoundVerdict(True, "identically zero")
    weight = _one_plus_x2() ** k
    f = Lc
    checks = []
    window = Fraction(0)
    for h in range(m + 1):
        g = f.numerator * weight
        E = f.denom_power
        coeffs = g.univariate_coefficients()
        for s in samples:
            s = as_fraction(s)
            if abs(g(s)) / (1 + s * s) ** E >= eps:
                return BoundVerdict(False, f"h={h}: bound violated at x = {format_rational(s)}",
                                    None, tuple(checks))
        T = _tail_window(coeffs, E, eps)
        if T is None:
            return BoundVerdict(False, f"h={h}: no tail bound (numerator degree too high)", None, tuple(checks))
        ok, reason = _certify_window(coeffs, E, eps, T, max_depth, budget)
        checks.append({"h": h, "window": format_rational(T), "result": reason})
        if not ok:
            return BoundVerdict(False, f"h={h}: {reason}", T, tuple(checks))
        window = max(window, T)
        f = f.derivative()
    return BoundVerdict(True, "certified", window, tuple(checks))


# ---------------------------------------------------------------------------
# point movers


def simplest_between(lo, hi) -> Fraction:
    """The rational of least denominator in the open interval (lo, hi)."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not lo < hi:
        raise PreconditionError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part fl; recurse on reciprocals of the fractional parts
    a, b = lo - fl, hi - fl
    if a == 0:
        return fl + Fraction(1, math.floor(1 / b) + 1)
    return fl + 1 / simplest_between(1 / b, 1 / a)


@dataclass(frozen=True)
class CoordinateMove:
    psi: RegularFunction1D
    kept: tuple[Fraction, ...]
    targets: tuple[Fraction, ...]
    nodes: tuple[Fraction, ...]
    bundle: ConstantsBundle | None
    certificate: BoundVerdict
    delta_compliant: bool = True

    def to_json(self) -> dict:
        return {
            "psi": self.psi.to_json(),
            "kept": [format_rational(x) for x in self.kept],
            "targets": [format_rational(x) for x in self.targets],
            "nodes": [format_rational(x) for x in self.nodes],
            "constants": None if self.bundle is None else self.bundle.to_json(),
            "delta_compliant": self.delta_compliant,
            "monotonicity": self.certificate.to_json(),
        }


@dataclass(frozen=True)
class PointMover:
    """psi acts coordinatewise; psi maps every moved node c onto its target b."""

    coordinates: tuple[CoordinateMove, ...]

    @property
    def psi(self) -> list[RegularFunction1D]:
        return [c.psi for c in self.coordinates]

    @property
    def c_nodes(self) -> list[tuple[Fraction, ...]]:
        return [c.nodes for c in self.coordinates]

    def __call__(self, point: Sequence) -> tuple[Fraction, ...]:
        if len(point) != len(self.coordinates):
            raise DimensionMismatch("point dimension differs from the mover's")
        return tuple(c.psi(x) for c, x in zip(self.coordinates, point))

    def preimage(self, target: Sequence) -> tuple[Fraction, ...]:
        """The rational point c with psi(c) = target, for points of B."""
        out = []
        for coord, b in zip(self.coordinates, target):
            b = as_fraction(b)
            if b in coord.targets:
                out.append(coord.nodes[coord.targets.index(b)])
            elif b in coord.kept:
                out.append(b)
            else:
                raise PreconditionError(f"{b} is neither kept nor a target")
        return tuple(out)

    def to_json(self) -> dict:
        return {"coordinates": [c.to_json() for c in self.coordinates]}


def move_coordinate(kept: Sequence, targets: Sequence, eps, k: int, m: int,
                    chosen: dict | None = None) -> CoordinateMove:
    """One coordinate of the mover.

    ``chosen`` maps targets to caller-picked nodes.  Nodes farther than delta
    from their target lose the a priori guarantee, so only the direct
    certificate from verify_bound vouches for them.
    """
    kept = tuple(sorted(set(as_fraction(a) for a in kept)))
    targets = tuple(sorted(set(as_fraction(b) for b in targets) - set(kept)))
    if not targets:
        psi = RegularFunction1D.identity()
        return CoordinateMove(psi, kept, (), (), None, BoundVerdict(True, "identity"))
    bundle = interp_constants(kept, targets, k, m, eps)
    chosen = {as_fraction(b): as_fraction(c) for b, c in (chosen or {}).items()}
    nodes = tuple(chosen.get(b, simplest_between(b - bundle.delta, b + bundle.delta)) for b in targets)
    compliant = delta_compliant(targets, nodes, bundle)
    Lc = lagrange_interpolant(kept, targets, nodes, bundle.ell)
    cert = verify_bound(Lc, eps, k, m, samples=nodes)
    if not cert.ok:
        raise CertificateError(f"monotonicity not certifiable: {cert.reason}")
    psi = RegularFunction1D.identity() + Lc
    for a in kept:
        assert psi(a) == a
    for b, c in zip(targets, nodes):
        assert psi(c) == b
    return CoordinateMove(psi, kept, targets, nodes, bundle, cert, compliant)


def point_mover(A: Sequence[Sequence], B: Sequence[Sequence], eps, k: int = 0, m: int = 1,
                nodes: Sequence[dict] | None = None) -> PointMover:
    """Per-coordinate maps psi_i = id + L_c fixing A and hitting B from rational nodes.

    Values of B in a coordinate that already occur among A's values stay fixed.
    ``nodes`` optionally gives, per coordinate, a target -> node mapping.
    """
    eps = as_fraction(eps)
    if not (m >= 1 and eps < 1):
        raise PreconditionError("monotonicity needs m >= 1 and eps < 1")
    pts = [tuple(as_fraction(x) for x in p) for p in list(A) + list(B)]
    if not pts:
        raise PreconditionError("need at least one point to fix the dimension")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("all points must share one dimension")
    coords = []
    for i in range(n):
        kept = [tuple(as_fraction(x) for x in p)[i] for p in A]
        targets = [tuple(as_fraction(x) for x in p)[i] for p in B]
        chosen = nodes[i] if nodes else None
        coords.append(move_coordinate(kept, targets, eps, k, m, chosen))
    return PointMover(tuple(coords))
