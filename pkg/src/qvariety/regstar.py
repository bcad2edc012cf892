"""Pointwise jacobian certificates and rational orthogonal matrices.

The certificate attests only the rank half of the jacobian criterion: some
``n - d`` generators have independent gradients at the point.  Local equality
of zero sets near the point is not decided and the certificate says so.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from qvariety import linalg
from qvariety.errors import DimensionMismatch, PreconditionError
from qvariety.qset import QAlgebraicSet, require_member
from qvariety.ratpoly import Poly, as_fraction, format_point, gradient, poly_eval

CERTIFIED = "certified"
RANK_DEFICIT = "rank-deficit"
SCOPE_NOTE = "rank condition only; local zero-set equality is not certified"


@dataclass(frozen=True)
class RegStarCertificate:
    point: tuple[Fraction, ...]
    selected_generators: tuple[int, ...]
    jacobian_rank: int
    verdict: str
    total_rank: int

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        return {
            "point": format_point(self.point),
            "selected_generators": list(self.selected_generators),
            "jacobian_rank": self.jacobian_rank,
            "total_rank": self.total_rank,
            "verdict": self.verdict,
            "scope": SCOPE_NOTE,
        }


def gradient_rows(generators: Sequence[Poly], a: Sequence) -> list[list[Fraction]]:
    a = [as_fraction(x) for x in a]
    rows = []
    for g in generators:
        if g.nvars != len(a):
            raise DimensionMismatch(f"generator in {g.nvars} variables, point of dimension {len(a)}")
        rows.append([poly_eval(d, a) for d in gradient(g)])
    return rows


def jacobian_rank_at(generators: Sequence[Poly], a: Sequence) -> int:
    return linalg.rank(gradient_rows(generators, a))


def certify_reg_star(V: QAlgebraicSet, a: Sequence, d: int) -> RegStarCertificate:
    n = V.ambient_dim
    if len(a) != n:
        raise DimensionMismatch(f"point of dimension {len(a)} for a set in R^{n}")
    if not 0 <= d < n:
        raise PreconditionError(f"claimed dimension {d} must satisfy 0 <= d < {n}")
    a = tuple(as_fraction(x) for x in a)
    require_member(V, a)
    rows = gradient_rows(V.generators, a)
    need = n - d
    selected: list[int] = []
    kept: list[list[Fraction]] = []
    for i, row in enumerate(rows):
        if len(selected) == need:
            break
        if linalg.rank(kept + [row]) > len(kept):
            kept.append(row)
            selected.append(i)
    total = linalg.rank(rows)
    verdict = CERTIFIED if len(selected) == need else RANK_DEFICIT
    return RegStarCertificate(a, tuple(selected), len(selected), verdict, total)


def rational_orthogonal(S: Sequence[Sequence]) -> linalg.Matrix:
    """Cayley transform (I - S)(I + S)^-1 of a rational skew-symmetric S."""
    S = linalg.to_matrix(S)
    n = len(S)
    for i in range(n):
        if len(S[i]) != n:
            raise DimensionMismatch("S must be square")
        for j in range(n):
            if S[i][j] != -S[j][i]:
                raise PreconditionError("S must be skew-symmetric")
    eye = linalg.identity(n)
    return linalg.matmul(linalg.add(eye, S, -1), linalg.inverse(linalg.add(eye, S)))


def is_orthogonal(G: linalg.Matrix) -> bool:
    return linalg.matmul(linalg.transpose(G), G) == linalg.identity(len(G))
