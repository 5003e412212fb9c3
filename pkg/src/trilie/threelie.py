"""3-Lie algebras given by structure constants.

Only canonical slots ``i<j<k`` are stored; every other index pattern is
derived by the permutation sign, so skew-symmetry cannot be violated by the
data.

Fundamental identity checks run over basis 5-tuples with ``x1<x2`` and
``x3<x4<x5`` only. Both sides are skew in ``(x1, x2)`` and alternating in
``(x3, x4, x5)`` (the right-hand side is the derivation action of
``ad_{x1,x2}`` on an alternating product), so by multilinearity this subset
determines the identity on all of ``g^5``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .exactlin import (ZERO, Matrix, Vector, basis_vec, det3, is_zero,
                       vec, vscale, vsum, zero_vec)
from .report import (DimensionMismatchError, IdentityViolation, Report,
                     fmt_tuple, timed)

Triple = tuple[int, int, int]


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 when an entry repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def canonical(i: int, j: int, k: int) -> tuple[int, Triple]:
    s = perm_sign((i, j, k))
    return s, tuple(sorted((i, j, k)))


@dataclass(frozen=True, eq=False)
class ThreeLieAlgebra:
    """Ternary skew bracket on a ``dim``-dimensional space.

    ``structure`` maps canonical triples ``(i, j, k)`` (0-based, ``i<j<k``) to
    the coordinate vector of ``[e_i, e_j, e_k]``. Missing triples are zero.
    """

    dim: int
    structure: Mapping[Triple, Vector] = field(default_factory=dict)
    verified: bool = False
    name: str = ""

    def __post_init__(self):
        clean = {}
        for key, value in dict(self.structure).items():
            i, j, k = key
            if not (0 <= i < j < k < self.dim):
                raise ValueError(f"non-canonical bracket slot {key} for dim {self.dim}")
            v = vec(value)
            if len(v) != self.dim:
                raise DimensionMismatchError(
                    f"bracket value for {key} has length {len(v)}, expected {self.dim}")
            if not is_zero(v):
                clean[(i, j, k)] = v
        object.__setattr__(self, "structure", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThreeLieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, tuple(self.structure.items())))

    @cached_property
    def _table(self) -> list:
        d = self.dim
        z = zero_vec(d)
        t = [[[z] * d for _ in range(d)] for _ in range(d)]
        for (i, j, k), v in self.structure.items():
            neg = vscale(-1, v)
            for p in itertools.permutations((0, 1, 2)):
                idx = tuple((i, j, k)[q] for q in p)
                t[idx[0]][idx[1]][idx[2]] = v if perm_sign(p) > 0 else neg
        return t

    @cached_property
    def _sparse(self) -> list:
        return sparse_sign_table(self.structure, self.dim)

    def basis_bracket(self, i: int, j: int, k: int) -> Vector:
        return self._table[i][j][k]

    def bracket(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        d = self.dim
        if not (len(x) == len(y) == len(z) == d):
            raise DimensionMismatchError(
                f"bracket arguments must have length {d}")
        return trilinear_eval(self.structure, self._sparse, d, x, y, z)

    def ad(self, x: Sequence, y: Sequence) -> Matrix:
        """Matrix of ``z -> [x, y, z]``."""
        d = self.dim
        return Matrix.from_columns(
            [self.bracket(x, y, basis_vec(d, k)) for k in range(d)], d)

    def ad_basis(self, i: int, j: int) -> Matrix:
        t = self._table
        return Matrix.from_columns([t[i][j][k] for k in range(self.dim)], self.dim)

    def basis(self) -> list[Vector]:
        return [basis_vec(self.dim, i) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return not self.structure


def trilinear_eval(structure, table, n: int, x, y, z) -> Vector:
    """Evaluate an alternating trilinear map given on canonical slots.

    Sparse arguments are expanded through the full sign table; dense ones
    go through one 3x3 determinant per stored slot.
    """
    acc = [ZERO] * n
    xs = [(i, c) for i, c in enumerate(x) if c]
    ys = [(i, c) for i, c in enumerate(y) if c]
    zs = [(i, c) for i, c in enumerate(z) if c]
    if not (xs and ys and zs):
        return tuple(acc)
    if len(xs) * len(ys) * len(zs) <= 6 * len(structure):
        for i, a in xs:
            ti = table[i]
            for j, b in ys:
                if i == j:
                    continue
                tij = ti[j]
                ab = a * b
                for k, c in zs:
                    v = tij[k]
                    if v is None:
                        continue
                    coef = ab * c
                    for l, w in v:
                        acc[l] += coef * w
        return tuple(acc)
    for (i, j, k), v in structure.items():
        c = det3((x[i], x[j], x[k]), (y[i], y[j], y[k]), (z[i], z[j], z[k]))
        if c:
            for l, a in enumerate(v):
                if a:
                    acc[l] += c * a
    return tuple(acc)


def sparse_sign_table(structure, d: int) -> list:
    """``t[i][j][k]`` = nonzero ``(l, value)`` pairs of ``[e_i,e_j,e_k]`` or None."""
    t = [[[None] * d for _ in range(d)] for _ in range(d)]
    for (i, j, k), v in structure.items():
        pos = [(l, a) for l, a in enumerate(v) if a]
        neg = [(l, -a) for l, a in pos]
        for p in itertools.permutations((0, 1, 2)):
            idx = tuple((i, j, k)[q] for q in p)
            t[idx[0]][idx[1]][idx[2]] = pos if perm_sign(p) > 0 else neg
    return t


def from_bracket(dim: int, fn: Callable[[int, int, int], Sequence], name: str = "") -> ThreeLieAlgebra:
    """Build an algebra by evaluating ``fn`` on canonical basis triples."""
    return ThreeLieAlgebra(
        dim, {t: vec(fn(*t)) for t in itertools.combinations(range(dim), 3)},
        name=name)


def abelian(dim: int) -> ThreeLieAlgebra:
    return ThreeLieAlgebra(dim, {}, name=f"abelian{dim}")


def as_matrix(m, rows: int, cols: int | None = None) -> Matrix:
    if not isinstance(m, Matrix):
        m = Matrix.from_rows(m)
    cols = rows if cols is None else cols
    if m.shape != (rows, cols):
        raise DimensionMismatchError(f"expected a {rows}x{cols} matrix, got {m.rows}x{m.cols}")
    return m


def fundamental_identity_sides(A: ThreeLieAlgebra, x1, x2, x3, x4, x5) -> tuple[Vector, Vector]:
    br = A.bracket
    lhs = br(x1, x2, br(x3, x4, x5))
    rhs = vsum((br(br(x1, x2, x3), x4, x5),
                br(x3, br(x1, x2, x4), x5),
                br(x3, x4, br(x1, x2, x5))), A.dim)
    return lhs, rhs


def check_fundamental_identity(A: ThreeLieAlgebra) -> Report:
    report = Report(f"fundamental identity [{A.name or f'dim {A.dim}'}]")
    d = A.dim
    t = A._table
    with timed(report):
        for a, b in itertools.combinations(range(d), 2):
            ad = A.ad_basis(a, b)
            for c, e, f in itertools.combinations(range(d), 3):
                lhs = ad.apply(t[c][e][f])
                # [x3,x4,x5] bracket terms with one argument replaced by ad_{x1,x2}
                r1 = _bracket_col(A, t[a][b][c], e, f, pos=0)
                r2 = _bracket_col(A, t[a][b][e], c, f, pos=1)
                r3 = _bracket_col(A, t[a][b][f], c, e, pos=2)
                rhs = vsum((r1, r2, r3), d)
                report.compare(fmt_tuple(a, b, c, e, f), lhs, rhs)
    return report


def _bracket_col(A: ThreeLieAlgebra, v: Vector, p: int, q: int, pos: int) -> Vector:
    """Bracket of a vector with two basis elements, ``v`` in slot ``pos``."""
    t = A._table
    terms = []
    for l, c in enumerate(v):
        if not c:
            continue
        if pos == 0:
            w = t[l][p][q]
        elif pos == 1:
            w = t[p][l][q]
        else:
            w = t[p][q][l]
        terms.append(vscale(c, w))
    return vsum(terms, A.dim)


def verify(A: ThreeLieAlgebra) -> ThreeLieAlgebra:
    """Return ``A`` flagged verified, or raise :class:`IdentityViolation`."""
    if A.verified:
        return A
    report = check_fundamental_identity(A)
    if not report.passed:
        raise IdentityViolation(report)
    return replace(A, verified=True)


def check_derivation(A: ThreeLieAlgebra, D) -> bool:
    return derivation_report(A, D).passed


def derivation_report(A: ThreeLieAlgebra, D) -> Report:
    D = as_matrix(D, A.dim)
    report = Report("derivation")
    basis = A.basis()
    with timed(report):
        for i, j, k in itertools.combinations(range(A.dim), 3):
            x, y, z = basis[i], basis[j], basis[k]
            lhs = D.apply(A.basis_bracket(i, j, k))
            rhs = vsum((A.bracket(D.col(i), y, z),
                        A.bracket(x, D.col(j), z),
                        A.bracket(x, y, D.col(k))), A.dim)
            report.compare(fmt_tuple(i, j, k), lhs, rhs)
    return report


def check_homomorphism(A: ThreeLieAlgebra, B: ThreeLieAlgebra, phi) -> bool:
    return homomorphism_report(A, B, phi).passed


def homomorphism_report(A: ThreeLieAlgebra, B: ThreeLieAlgebra, phi) -> Report:
    """``phi`` is a ``B.dim x A.dim`` matrix sending A-coordinates to B."""
    phi = as_matrix(phi, B.dim, A.dim)
    report = Report("homomorphism")
    with timed(report):
        for i, j, k in itertools.combinations(range(A.dim), 3):
            lhs = phi.apply(A.basis_bracket(i, j, k))
            rhs = B.bracket(phi.col(i), phi.col(j), phi.col(k))
            report.compare(fmt_tuple(i, j, k), lhs, rhs)
    return report


def is_skew_consistent(A: ThreeLieAlgebra, x, y, z) -> bool:
    """Skew-symmetry under all six permutations of ``(x, y, z)``."""
    base = A.bracket(x, y, z)
    args = (x, y, z)
    for p in itertools.permutations(range(3)):
        got = A.bracket(*(args[q] for q in p))
        if got != vscale(perm_sign(p), base):
            return False
    return True


__all__ = [
    "ThreeLieAlgebra", "abelian", "from_bracket", "check_fundamental_identity",
    "check_derivation", "check_homomorphism", "derivation_report",
    "homomorphism_report", "verify", "perm_sign", "canonical", "as_matrix",
    "fundamental_identity_sides", "trilinear_eval", "sparse_sign_table",
]
