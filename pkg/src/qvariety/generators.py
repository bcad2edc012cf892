"""Canonical nonsingular rational algebraic sets.

Matrices are identified with points by row-major flattening: entry (i, j) of
an n x n matrix is coordinate ``i*n + j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from qvariety import forms, linalg
from qvariety.errors import DimensionMismatch, ParseError, PreconditionError
from qvariety.qset import QAlgebraicSet, intersect, pad_with_origin, product, translate
from qvariety.ratpoly import Poly, as_fraction, format_rational, gradient, poly_eval, sum_of_squares


def _matrix_vars(n: int, nvars: int, offset: int = 0) -> list[list[Poly]]:
    return [[Poly.var(offset + i * n + j, nvars) for j in range(n)] for i in range(n)]


def grassmannian_polys(n: int, k: int, nvars: int | None = None, offset: int = 0) -> list[Poly]:
    """Entries of X^T - X, entries of X^2 - X, and tr X - k."""
    nvars = n * n if nvars is None else nvars
    X = _matrix_vars(n, nvars, offset)
    gens = [X[j][i] - X[i][j] for i in range(n) for j in range(n)]
    for i in range(n):
        for j in range(n):
            sq = Poly.zero(nvars)
            for h in range(n):
                sq = sq + X[i][h] * X[h][j]
            gens.append(sq - X[i][j])
    tr = Poly.zero(nvars)
    for i in range(n):
        tr = tr + X[i][i]
    gens.append(tr - k)
    return gens


def grassmannian(n: int, k: int) -> QAlgebraicSet:
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got n={n}, k={k}")
    N = n * n
    gens = grassmannian_polys(n, k)
    sphere = sum_of_squares(Poly.variables(N), N) - k
    q = sum_of_squares(gens, N)
    form = forms.Intersect(forms.Leaf(sphere), q.degree, q)
    return QAlgebraicSet(N, tuple(gens), claimed_dim=k * (n - k), overt=form,
                         notes=(f"contained in the sphere tr(X X^T) = {k}",))


def mu(n: int, x: Sequence) -> linalg.Matrix:
    """x x^T / |x|^2 for a nonzero rational x of length n+1."""
    x = [as_fraction(c) for c in x]
    if len(x) != n + 1:
        raise DimensionMismatch(f"mu({n}, .) needs a vector of length {n + 1}")
    norm = sum(c * c for c in x)
    if norm == 0:
        raise PreconditionError("mu is undefined at the zero vector")
    return [[a * b / norm for b in x] for a in x]


def milnor_hypersurface(n: int, m: int) -> QAlgebraicSet:
    if not 1 <= n <= m:
        raise PreconditionError(f"need 1 <= n <= m, got n={n}, m={m}")
    gx, gy = grassmannian(n + 1, 1), grassmannian(m + 1, 1)
    base = product(gx, gy)
    total = base.ambient_dim
    X = _matrix_vars(n + 1, total)
    Y = _matrix_vars(m + 1, total, (n + 1) ** 2)
    bilinear = []
    for k in range(n + 1):
        for h in range(m + 1):
            p = Poly.zero(total)
            for i in range(n + 1):
                p = p + X[i][k] * Y[i][h]
            bilinear.append(p)
    cut = intersect(base, QAlgebraicSet(total, tuple(bilinear)))
    return QAlgebraicSet(total, cut.generators, claimed_dim=n + m - 1, overt=cut.overt)


def universal_bundle(n: int, k: int) -> QAlgebraicSet:
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got n={n}, k={k}")
    total = n * n + n
    gens = grassmannian_polys(n, k, total)
    X = _matrix_vars(n, total)
    y = [Poly.var(n * n + i, total) for i in range(n)]
    for i in range(n):
        row = Poly.zero(total)
        for j in range(n):
            row = row + X[i][j] * y[j]
        gens.append(row - y[i])
    return QAlgebraicSet(total, tuple(gens), claimed_dim=k * (n - k + 1))


def normal_bundle_map(selected: Sequence[Poly], a: Sequence) -> linalg.Matrix:
    """A M^-1 A^T with A the gradient columns at a and M = A^T A."""
    if not selected:
        raise PreconditionError("need at least one polynomial")
    a = [as_fraction(x) for x in a]
    cols = [[poly_eval(d, a) for d in gradient(p)] for p in selected]
    A = linalg.transpose(cols)
    M = linalg.matmul(cols, A)
    try:
        Minv = linalg.inverse(M)
    except PreconditionError:
        raise PreconditionError("gradients are linearly dependent at the point (det M = 0)") from None
    return linalg.matmul(linalg.matmul(A, Minv), cols)


# ---------------------------------------------------------------------------
# cobordism generators


@dataclass(frozen=True)
class CobordismSpec:
    n_list: tuple[int, ...] = ()
    ab_list: tuple[tuple[int, int], ...] = ()
    translation: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(x) for x in self.n_list))
        object.__setattr__(self, "ab_list", tuple((int(a), int(b)) for a, b in self.ab_list))
        object.__setattr__(self, "translation", tuple(as_fraction(x) for x in self.translation))
        if any(x < 1 for x in self.n_list) or any(a < 1 or b < 1 for a, b in self.ab_list):
            raise PreconditionError("all factor parameters must be positive")

    @property
    def alpha(self) -> int:
        return len(self.n_list)

    @property
    def beta(self) -> int:
        return len(self.ab_list)

    @property
    def dimension(self) -> int:
        return sum(self.n_list) + sum(a + b - 1 for a, b in self.ab_list)

    def embedding_size(self) -> int:
        return sum((n + 1) ** 2 for n in self.n_list) + sum((a + 1) ** 2 + (b + 1) ** 2 for a, b in self.ab_list)

    def counts(self) -> list[int]:
        """The numbers c_s entering the estimate: every n_i, a_j and b_j."""
        return list(self.n_list) + [c for ab in self.ab_list for c in ab]

    def norm_squared_bound(self) -> int:
        """Squared norm of every point: 1 per projective factor, 2 per Milnor factor."""
        return self.alpha + 2 * self.beta

    def to_json(self, d: int | None = None) -> dict:
        doc: dict = {"n_list": list(self.n_list), "ab_list": [list(ab) for ab in self.ab_list]}
        if d is not None:
            doc["d"] = d
        doc["translation"] = [format_rational(x) for x in self.translation]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "CobordismSpec":
        try:
            spec = cls(tuple(doc.get("n_list", ())), tuple(tuple(ab) for ab in doc.get("ab_list", ())),
                       tuple(doc.get("translation", ())))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed cobordism spec: {exc}") from exc
        if "alpha" in doc and doc["alpha"] != spec.alpha:
            raise ParseError("alpha disagrees with n_list")
        if "beta" in doc and doc["beta"] != spec.beta:
            raise ParseError("beta disagrees with ab_list")
        return spec


def estimate(counts: Sequence[int]) -> tuple[int, int]:
    """Both sides of sum (c_s + 1)^2 <= (1 + sum c_s)^2."""
    lhs = sum((c + 1) ** 2 for c in counts)
    rhs = (1 + sum(counts)) ** 2
    return lhs, rhs


def cobordism_bookkeeping(spec: CobordismSpec, d: int) -> dict:
    if spec.dimension != d:
        raise PreconditionError(f"factor dimensions sum to {spec.dimension}, not {d}")
    lhs, rhs = estimate(spec.counts())
    size = spec.embedding_size()
    bound = (2 * d + 1) ** 2
    if lhs != size:
        raise AssertionError("embedding size disagrees with the estimate's left side")
    if not size <= rhs <= bound:
        raise PreconditionError(f"embedding size {size} exceeds (2d+1)^2 = {bound}")
    return {"N_h": size, "estimate_rhs": rhs, "bound": bound}


def cobordism_generator(spec: CobordismSpec, d: int) -> QAlgebraicSet:
    book = cobordism_bookkeeping(spec, d)
    target = book["bound"]
    factors = [grassmannian(n + 1, 1) for n in spec.n_list]
    factors += [milnor_hypersurface(a, b) for a, b in spec.ab_list]
    if factors:
        Y = factors[0]
        for F in factors[1:]:
            Y = product(Y, F)
        Y = pad_with_origin(Y, target)
    else:
        Y = QAlgebraicSet.point([0] * target)
    v = spec.translation or (Fraction(0),) * target
    if len(v) != target:
        raise DimensionMismatch(f"translation must have length {target}")
    Y = translate(Y, v)
    return QAlgebraicSet(Y.ambient_dim, Y.generators, claimed_dim=d, overt=Y.overt,
                         notes=(f"N_h = {book['N_h']} <= {target}",))


def disjoint_translations(specs: Sequence[CobordismSpec], d: int) -> list[tuple[Fraction, ...]]:
    """Grid translations keeping the translated generators pairwise disjoint.

    Every point of a generator has norm at most R = sqrt(alpha + 2 beta), so
    shifting along the first axis by a spacing S > 2R separates them.
    """
    target = (2 * d + 1) ** 2
    radius_sq = max((s.norm_squared_bound() for s in specs), default=0)
    spacing = isqrt(4 * radius_sq) + 1
    out = []
    for h in range(len(specs)):
        v = [Fraction(0)] * target
        v[0] = Fraction(h * spacing)
        out.append(tuple(v))
    return out
