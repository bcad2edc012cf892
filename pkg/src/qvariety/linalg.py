"""Small exact matrix helpers over the rationals (lists of lists of Fraction)."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from qvariety.errors import DimensionMismatch, PreconditionError
from qvariety.kernels import bareiss_rank
from qvariety.ratpoly import as_fraction

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_fraction(x) for x in r] for r in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def add(a: Matrix, b: Matrix, sign: int = 1) -> Matrix:
    return [[x + sign * y for x, y in zip(r, s)] for r, s in zip(a, b)]


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises on a singular matrix."""
    n = len(a)
    m = [list(r) + e for r, e in zip(a, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise PreconditionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def integer_rows(a: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank is unchanged)."""
    out = []
    for row in a:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    if not a:
        return 0
    return bareiss_rank(integer_rows(a))


def flatten(a: Matrix) -> tuple[Fraction, ...]:
    """Row-major flattening, the fixed matrix/point identification."""
    return tuple(x for row in a for x in row)


def unflatten(point: Sequence, n: int) -> Matrix:
    if len(point) != n * n:
        raise DimensionMismatch(f"a point of dimension {len(point)} is not an {n}x{n} matrix")
    pt = [as_fraction(x) for x in point]
    return [pt[i * n:(i + 1) * n] for i in range(n)]
