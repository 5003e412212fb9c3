"""Exact rational scalars, dense matrices and fraction-free elimination.

Scalars are :class:`fractions.Fraction` throughout; vectors are tuples of
Fractions. Ranks are computed with Bareiss elimination on integer rows
obtained by clearing denominators row by row.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class SingularMatrixError(ArithmeticError):
    """Raised when an inverse is requested for a singular matrix."""


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        if "." in text or "e" in text.lower():
            raise ValueError(f"decimal literals are not accepted: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Fraction) -> str:
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- vectors ---------------------------------------------------------------

def vec(values: Iterable) -> Vector:
    return tuple(rat(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def basis_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def vsum(vectors: Iterable[Sequence[Fraction]], n: int) -> Vector:
    acc = [ZERO] * n
    for v in vectors:
        for i, x in enumerate(v):
            if x:
                acc[i] += x
    return tuple(acc)


def is_zero(a: Sequence[Fraction]) -> bool:
    return not any(a)


# -- matrices --------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Dense row-major rational matrix. Immutable."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries length {len(self.entries)} != {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(rat(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        entries = [ZERO] * (rows * cols)
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(c):
                entries[i * cols + j] = rat(x)
        return cls(rows, cols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO
                               for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, tuple(rat(values[i]) if i == j else ZERO
                               for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j]
                            for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        c = self.cols
        e = self.entries
        out = [ZERO] * self.rows
        for j, x in enumerate(v):
            if not x:
                continue
            for i in range(self.rows):
                a = e[i * c + j]
                if a:
                    out[i] += a * x
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [self.apply(other.col(j)) for j in range(other.cols)]
            return Matrix.from_columns(cols, self.rows)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix(self.rows, self.cols,
                      tuple(a + b if b else a for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return Matrix(self.rows, self.cols,
                      tuple(a - b if b else a for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a if a else a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, tuple(c * a if a else a for a in self.entries))

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in self.row(i))
                         for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    rows = blocks[0].rows
    out = []
    for i in range(rows):
        r = []
        for b in blocks:
            r.extend(b.row(i))
        out.append(r)
    return Matrix.from_rows(out, sum(b.cols for b in blocks))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    cols = blocks[0].cols
    return Matrix(sum(b.rows for b in blocks), cols,
                  tuple(x for b in blocks for x in b.entries))


# -- elimination -------------------------------------------------------------

def _integer_rows(rows: Iterable) -> list[dict[int, int]]:
    """Sparse integer rows: each row scaled by the lcm of its denominators.

    Rows may be dense sequences or ``{column: value}`` dicts; zero rows are
    dropped.
    """
    out = []
    for r in rows:
        items = r.items() if isinstance(r, Mapping) else enumerate(r)
        items = [(c, Fraction(x)) for c, x in items if x]
        if not items:
            continue
        m = 1
        for _, x in items:
            m = lcm(m, x.denominator)
        out.append({c: int(x * m) for c, x in items})
    return out


def bareiss_rank_sparse(rows: list[dict[int, int]]) -> int:
    """Rank of a sparse integer matrix by Bareiss fraction-free elimination.

    Every intermediate entry is a minor of the input, so each division by
    the previous pivot is exact. Pivot rows are taken in increasing column
    order; among candidates the one with the smallest pivot and then the
    fewest entries wins. ``rows`` is consumed.
    """
    rows = [r for r in rows if r]
    rank = 0
    prev = 1
    cols = sorted({c for r in rows for c in r})
    for col in cols:
        if not rows:
            break
        piv = None
        best = None
        for idx, r in enumerate(rows):
            a = r.get(col)
            if a:
                key = (abs(a), len(r))
                if best is None or key < best:
                    piv, best = idx, key
        if piv is None:
            continue
        prow = rows.pop(piv)
        p = prow.pop(col)
        updated = []
        for r in rows:
            a = r.pop(col, 0)
            if a:
                nr = {}
                for c in r.keys() | prow.keys():
                    v = (p * r.get(c, 0) - a * prow.get(c, 0)) // prev
                    if v:
                        nr[c] = v
                r = nr
            elif p != prev:
                r = {c: (p * x) // prev for c, x in r.items()}
            if r:
                updated.append(r)
        rows = updated
        prev = p
        rank += 1
    return rank


def bareiss_rank_int(rows: list[list[int]], ncols: int) -> int:
    """Dense-input wrapper around :func:`bareiss_rank_sparse`."""
    return bareiss_rank_sparse([{c: x for c, x in enumerate(r[:ncols]) if x} for r in rows])


def rank_of_rows(rows: Iterable, ncols: int | None = None) -> int:
    """Rank of rational rows given densely or as ``{column: value}`` dicts."""
    return bareiss_rank_sparse(_integer_rows(rows))


def rank(M: Matrix) -> int:
    """Exact rank over the rationals (Bareiss elimination)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    # eliminate along the shorter side
    if M.rows < M.cols:
        M = M.transpose()
    return rank_of_rows((M.row(i) for i in range(M.rows)), M.cols)


def kernel_dim(M: Matrix) -> int:
    return M.cols - rank(M)


def naive_rank(M: Matrix) -> int:
    """Plain Gaussian elimination over Fractions with pivot search.

    Kept as an independent cross-check for :func:`rank`.
    """
    a = M.to_rows()
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(M.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == M.rows:
            break
    return r


def determinant(M: Matrix) -> Fraction:
    """Determinant via Bareiss on the cleared-denominator matrix."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return ONE
    scale = ONE
    a = []
    for i in range(n):
        r = M.row(i)
        m = 1
        for x in r:
            if x:
                m = lcm(m, x.denominator)
        scale /= m
        a.append([int(x * m) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = p
    return scale * sign * a[n - 1][n - 1]


def invert(M: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan over Fractions.

    Raises :class:`SingularMatrixError` when ``rank(M) < rows``.
    """
    if not M.is_square():
        raise ValueError("only square matrices can be inverted")
    n = M.rows
    a = [list(M.row(i)) + [ONE if i == j else ZERO for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Matrix.from_rows([r[n:] for r in a], n)


def in_span(generators: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """Whether ``v`` lies in the span of ``generators`` (rank test)."""
    n = len(v)
    gens = [list(g) for g in generators]
    base = rank_of_rows(gens, n)
    return rank_of_rows(gens + [list(v)], n) == base


def det3(a, b, c) -> Fraction:
    """Determinant of the 3x3 matrix with columns a, b, c."""
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - b[0] * (a[1] * c[2] - a[2] * c[1])
            + c[0] * (a[1] * b[2] - a[2] * b[1]))
