"""Representations of 3-Lie algebras and the cochain complex they define.

Cochain spaces
--------------
``C^n(g; V)`` is ``Hom((wedge^2 g)^{n-1} (x) g, V)``. A basis of its domain is
a sequence of ``n-1`` strictly increasing index pairs followed by one index;
the pair slots are not symmetrised against each other. Coordinates are laid
out as ``((p_1 * P + p_2) * P + ...) * d + k`` times ``dim V`` plus the
component, with ``P = d(d-1)/2`` pairs in lexicographic order.

The coboundary is expanded once per target basis tuple into a list of terms
``(coefficient, source coordinate block, operator)`` where the operator is
either the identity of ``V`` or a ``rho`` matrix. Applying ``d`` to a cochain
and assembling its matrix both read the same expansion.

Alternating 2-cochains (``Hom(wedge^3 g, V)``) are a separate type,
:class:`TwoCochain`, with an embedding into degree-2 cochains.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exactlin import (ONE, ZERO, Matrix, Vector, basis_vec, is_zero,
                       rank_of_rows, vec, vscale, vsum, zero_vec)
from .report import (DimensionMismatchError, IdentityViolation, Report,
                     TrilieError, UnverifiedInputError, fmt_tuple, timed)
from .threelie import (ThreeLieAlgebra, as_matrix, perm_sign, sparse_sign_table,
                       trilinear_eval)

N_MAX = 4
MAX_ALGEBRA_DIM = 6
MAX_MODULE_DIM = 6

Pair = tuple[int, int]


class ResourceCapError(TrilieError):
    pass


class NotACocycleError(IdentityViolation):
    pass


def _pairs(d: int) -> list[Pair]:
    return list(itertools.combinations(range(d), 2))


@dataclass(frozen=True, eq=False)
class Representation:
    """``rho`` maps pairs ``i<j`` of algebra basis indices to ``dimV x dimV``
    matrices; ``rho(e_j, e_i) = -rho(e_i, e_j)`` and ``rho(e_i, e_i) = 0``."""

    algebra: ThreeLieAlgebra
    dimV: int
    rho: Mapping[Pair, Matrix] = field(default_factory=dict)
    verified: bool = False
    name: str = ""

    def __post_init__(self):
        d = self.algebra.dim
        clean = {}
        for key, m in dict(self.rho).items():
            i, j = key
            if not 0 <= i < j < d:
                raise ValueError(f"non-canonical representation slot {key}")
            m = as_matrix(m, self.dimV)
            if not m.is_zero():
                clean[(i, j)] = m
        object.__setattr__(self, "rho", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.algebra == other.algebra and self.dimV == other.dimV
                and self.rho == other.rho)

    __hash__ = None

    @cached_property
    def _zero(self) -> Matrix:
        return Matrix.zeros(self.dimV, self.dimV)

    @cached_property
    def _signed(self) -> dict:
        table = {}
        for (i, j), m in self.rho.items():
            table[(i, j)] = m
            table[(j, i)] = -m
        return table

    def basis_rho(self, i: int, j: int) -> Matrix:
        return self._signed.get((i, j), self._zero)

    def __call__(self, x: Sequence, y: Sequence) -> Matrix:
        """``rho(x, y)`` for arbitrary algebra vectors."""
        n = self.dimV
        acc = [ZERO] * (n * n)
        for (i, j), m in self.rho.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for t, a in enumerate(m.entries):
                    if a:
                        acc[t] += c * a
        return Matrix(n, n, tuple(acc))

    def act(self, x: Sequence, y: Sequence, v: Sequence) -> Vector:
        return self(x, y).apply(v)


def zero_representation(A: ThreeLieAlgebra, dimV: int) -> Representation:
    return Representation(A, dimV, {}, name="zero")


def adjoint(A: ThreeLieAlgebra) -> Representation:
    if not A.verified:
        raise UnverifiedInputError("adjoint representation needs a verified algebra")
    rep = Representation(A, A.dim, {(i, j): A.ad_basis(i, j) for i, j in _pairs(A.dim)},
                         name=f"ad({A.name})" if A.name else "ad")
    return verify_representation(rep)


def check_representation(rep: Representation) -> Report:
    """Both representation axioms on the reduced basis tuples.

    The commutator axiom is skew in (x1,x2) and in (x3,x4): checked on
    ``i<j, k<l``. The composition axiom is alternating in (x1,x2,x3):
    checked on ``i<j<k`` and every ``l``.
    """
    A = rep.algebra
    d = A.dim
    report = Report(f"representation [{rep.name or 'rho'}]")
    R = rep.basis_rho
    t = A._table
    with timed(report):
        for (i, j), (k, l) in itertools.product(_pairs(d), repeat=2):
            lhs = R(i, j) @ R(k, l) - R(k, l) @ R(i, j)
            rhs = rep(t[i][j][k], basis_vec(d, l)) + rep(basis_vec(d, k), t[i][j][l])
            report.compare(f"eq1 {fmt_tuple(i, j, k, l)}", lhs.entries, rhs.entries,
                           identity="commutator")
        for (i, j, k) in itertools.combinations(range(d), 3):
            for l in range(d):
                lhs = rep(t[i][j][k], basis_vec(d, l))
                rhs = R(i, j) @ R(k, l) + R(j, k) @ R(i, l) + R(k, i) @ R(j, l)
                report.compare(f"eq2 {fmt_tuple(i, j, k, l)}", lhs.entries, rhs.entries,
                               identity="composition")
    return report


def verify_representation(rep: Representation) -> Representation:
    if rep.verified:
        return rep
    report = check_representation(rep)
    if not report.passed:
        raise IdentityViolation(report)
    return replace(rep, verified=True)


# -- cochains ----------------------------------------------------------------

@dataclass(frozen=True)
class CochainSpace:
    d: int
    dimV: int
    degree: int

    @cached_property
    def pairs(self) -> list[Pair]:
        return _pairs(self.d)

    @cached_property
    def pair_index(self) -> dict[Pair, int]:
        return {p: n for n, p in enumerate(self.pairs)}

    @property
    def n_tuples(self) -> int:
        return len(self.pairs) ** (self.degree - 1) * self.d

    @property
    def dim(self) -> int:
        return self.n_tuples * self.dimV

    def tuple_index(self, pair_ids: Sequence[int], k: int) -> int:
        P = len(self.pairs)
        idx = 0
        for p in pair_ids:
            idx = idx * P + p
        return idx * self.d + k

    def tuples(self) -> Iterable[tuple[tuple[int, ...], int]]:
        P = len(self.pairs)
        for ids in itertools.product(range(P), repeat=self.degree - 1):
            for k in range(self.d):
                yield ids, k

    def describe(self, pair_ids: Sequence[int], k: int) -> str:
        parts = [f"e{self.pairs[p][0] + 1}^e{self.pairs[p][1] + 1}" for p in pair_ids]
        parts.append(f"e{k + 1}")
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class NCochain:
    """Element of ``C^n(g; V)`` stored as flat coordinates (see module doc)."""

    degree: int
    d: int
    dimV: int
    values: tuple

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("cochain degree must be >= 1")
        expected = self.space.dim
        if len(self.values) != expected:
            raise DimensionMismatchError(
                f"degree-{self.degree} cochain needs {expected} coordinates, got {len(self.values)}")

    @property
    def space(self) -> CochainSpace:
        return CochainSpace(self.d, self.dimV, self.degree)

    def value(self, pair_ids: Sequence[int], k: int) -> Vector:
        t = self.space.tuple_index(pair_ids, k)
        return self.values[t * self.dimV:(t + 1) * self.dimV]

    def is_zero(self) -> bool:
        return is_zero(self.values)

    def __add__(self, other: "NCochain") -> "NCochain":
        return replace(self, values=tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "NCochain") -> "NCochain":
        return replace(self, values=tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "NCochain":
        return replace(self, values=tuple(c * a for a in self.values))

    @classmethod
    def zero(cls, degree: int, d: int, dimV: int) -> "NCochain":
        return cls(degree, d, dimV, zero_vec(CochainSpace(d, dimV, degree).dim))

    @classmethod
    def from_linear_map(cls, f) -> "NCochain":
        """Degree-1 cochain from a ``dimV x d`` matrix (columns = images)."""
        f = f if isinstance(f, Matrix) else Matrix.from_rows(f)
        values = tuple(x for k in range(f.cols) for x in f.col(k))
        return cls(1, f.cols, f.rows, values)

    def to_linear_map(self) -> Matrix:
        if self.degree != 1:
            raise ValueError("only degree-1 cochains are linear maps")
        return Matrix.from_columns([self.value((), k) for k in range(self.d)], self.dimV)


@dataclass(frozen=True, eq=False)
class TwoCochain:
    """Alternating trilinear map ``wedge^3 g -> V`` on canonical slots."""

    d: int
    dimV: int
    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, v in dict(self.values).items():
            i, j, k = key
            if not 0 <= i < j < k < self.d:
                raise ValueError(f"non-canonical cochain slot {key}")
            v = vec(v)
            if len(v) != self.dimV:
                raise DimensionMismatchError("cochain value has wrong length")
            if not is_zero(v):
                clean[(i, j, k)] = v
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, TwoCochain):
            return NotImplemented
        return (self.d, self.dimV, self.values) == (other.d, other.dimV, other.values)

    __hash__ = None

    @cached_property
    def _table(self):
        z = zero_vec(self.dimV)
        t = {}
        for (i, j, k), v in self.values.items():
            neg = vscale(-1, v)
            for p in itertools.permutations((0, 1, 2)):
                idx = tuple((i, j, k)[q] for q in p)
                t[idx] = v if perm_sign(p) > 0 else neg
        return t, z

    def basis_value(self, i: int, j: int, k: int) -> Vector:
        t, z = self._table
        return t.get((i, j, k), z)

    @cached_property
    def _sparse(self) -> list:
        return sparse_sign_table(self.values, self.d)

    def __call__(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        return trilinear_eval(self.values, self._sparse, self.dimV, x, y, z)

    def to_ncochain(self) -> NCochain:
        space = CochainSpace(self.d, self.dimV, 2)
        vals = []
        for (p,), k in space.tuples():
            i, j = space.pairs[p]
            vals.extend(self.basis_value(i, j, k))
        return NCochain(2, self.d, self.dimV, tuple(vals))

    def __neg__(self) -> "TwoCochain":
        return TwoCochain(self.d, self.dimV, {k: vscale(-1, v) for k, v in self.values.items()})

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        keys = set(self.values) | set(other.values)
        z = zero_vec(self.dimV)
        return TwoCochain(self.d, self.dimV,
                          {k: vsum((self.values.get(k, z), other.values.get(k, z)), self.dimV)
                           for k in keys})

    def __sub__(self, other: "TwoCochain") -> "TwoCochain":
        return self + (-other)


def alternating_part(f: NCochain) -> TwoCochain:
    """Read a degree-2 cochain on canonical triples ``i<j<k``.

    Only meaningful when ``f`` is already alternating (e.g. ``d`` of a
    degree-1 cochain)."""
    if f.degree != 2:
        raise ValueError("alternating_part expects a degree-2 cochain")
    space = f.space
    vals = {}
    for i, j, k in itertools.combinations(range(f.d), 3):
        vals[(i, j, k)] = f.value((space.pair_index[(i, j)],), k)
    return TwoCochain(f.d, f.dimV, vals)


def is_alternating(f: NCochain) -> bool:
    if f.degree != 2:
        return False
    space = f.space
    alt = alternating_part(f)
    for (p,), k in space.tuples():
        i, j = space.pairs[p]
        if f.value((p,), k) != alt.basis_value(i, j, k):
            return False
    return True


def bracket_cochain(A: ThreeLieAlgebra, scale=1) -> TwoCochain:
    """``scale * [.,.,.]_g`` as a ``g``-valued alternating 2-cochain."""
    return TwoCochain(A.dim, A.dim,
                      {t: vscale(scale, v) for t, v in A.structure.items()})


# -- coboundary --------------------------------------------------------------

def _wedge_terms(u: Vector, a: int | None, v: Vector | None, b: int | None):
    """Expand ``x ^ y`` into canonical basis pairs.

    Exactly one of each (vector, index) pair is given: a vector argument or a
    basis index.
    """
    out: dict[Pair, object] = {}
    xs = [(a, ONE)] if u is None else [(i, c) for i, c in enumerate(u) if c]
    ys = [(b, ONE)] if v is None else [(i, c) for i, c in enumerate(v) if c]
    for i, ci in xs:
        for j, cj in ys:
            if i == j:
                continue
            c = ci * cj
            key = (i, j) if i < j else (j, i)
            out[key] = out.get(key, ZERO) + (c if i < j else -c)
    return out


def coboundary_terms(A: ThreeLieAlgebra, n: int, pair_ids: Sequence[int], k: int):
    """Terms of ``(d f)(X_1..X_n, x_{n+1})`` for a degree-``n`` cochain ``f``.

    Returns a dict ``(source tuple index, op) -> coefficient`` where ``op`` is
    ``None`` for the identity of ``V`` or a canonical pair ``(i, j)`` standing
    for ``rho(e_i, e_j)``.
    """
    d = A.dim
    t = A._table
    src = CochainSpace(d, 0, n)
    pairs = src.pairs
    pidx = src.pair_index
    X = [pairs[p] for p in pair_ids]
    terms: dict = {}

    def add(ids, last, op, c):
        if not c:
            return
        if op is not None:
            i, j = op
            if i == j:
                return
            if i > j:
                op, c = (j, i), -c
        key = (src.tuple_index(ids, last), op)
        terms[key] = terms.get(key, ZERO) + c

    # sum_{j<k} (-1)^j f(.., X_j omitted, .., W_jk in slot k, .., x_{n+1})
    for j in range(n):
        sj = -1 if (j + 1) % 2 else 1
        a, b = X[j]
        for kk in range(j + 1, n):
            c_, e_ = X[kk]
            w = _wedge_terms(t[a][b][c_], None, None, e_)
            for pq, cw in _wedge_terms(None, c_, t[a][b][e_], None).items():
                w[pq] = w.get(pq, ZERO) + cw
            for pq, cw in w.items():
                ids = [pair_ids[m] for m in range(n) if m != j]
                ids[kk - 1] = pidx[pq]
                add(ids, k, None, sj * cw)
    for j in range(n):
        sj = -1 if (j + 1) % 2 else 1
        a, b = X[j]
        rest = [pair_ids[m] for m in range(n) if m != j]
        # (-1)^j f(.., X_j omitted, .., [x_j, y_j, x_{n+1}])
        for l, c in enumerate(t[a][b][k]):
            add(rest, l, None, sj * c)
        # (-1)^{j+1} rho(x_j, y_j) f(.., X_j omitted, .., x_{n+1})
        add(rest, k, (a, b), -sj)
    # (-1)^{n+1} (rho(y_n, x_{n+1}) f(X_1..X_{n-1}, x_n)
    #            + rho(x_{n+1}, x_n) f(X_1..X_{n-1}, y_n))
    sn = 1 if (n + 1) % 2 == 0 else -1
    a, b = X[n - 1]
    head = list(pair_ids[:n - 1])
    add(head, a, (b, k), sn)
    add(head, b, (k, a), sn)
    return terms


def _check_caps(d: int, dimV: int, degree: int, n_max: int) -> None:
    if d > MAX_ALGEBRA_DIM or dimV > MAX_MODULE_DIM:
        raise ResourceCapError(
            f"cohomology is capped at dim g <= {MAX_ALGEBRA_DIM}, dim V <= {MAX_MODULE_DIM}")
    if degree > n_max:
        raise ResourceCapError(f"degree {degree} exceeds n_max = {n_max}")


def coboundary(rep: Representation, f: NCochain, n_max: int = N_MAX) -> NCochain:
    """``d f`` by direct evaluation of the coboundary formula."""
    A = rep.algebra
    if (f.d, f.dimV) != (A.dim, rep.dimV):
        raise DimensionMismatchError("cochain does not match the representation")
    n = f.degree
    _check_caps(A.dim, rep.dimV, n, max(n_max, N_MAX) if n_max is None else n_max)
    target = CochainSpace(A.dim, rep.dimV, n + 1)
    m = rep.dimV
    out = []
    for ids, k in target.tuples():
        acc = [ZERO] * m
        for (s, op), c in coboundary_terms(A, n, ids, k).items():
            v = f.values[s * m:(s + 1) * m]
            if op is not None:
                v = rep.basis_rho(*op).apply(v)
            for r, x in enumerate(v):
                if x:
                    acc[r] += c * x
        out.extend(acc)
    return NCochain(n + 1, A.dim, m, tuple(out))


def coboundary_rows(rep: Representation, n: int) -> list[dict]:
    """Sparse rows ``{column: value}`` of the matrix of ``d: C^n -> C^{n+1}``."""
    A = rep.algebra
    m = rep.dimV
    target = CochainSpace(A.dim, m, n + 1)
    rows = []
    for ids, k in target.tuples():
        block = [{} for _ in range(m)]
        for (s, op), c in coboundary_terms(A, n, ids, k).items():
            if op is None:
                for r in range(m):
                    col = s * m + r
                    block[r][col] = block[r].get(col, ZERO) + c
            else:
                R = rep.basis_rho(*op)
                for r in range(m):
                    for q in range(m):
                        x = R[r, q]
                        if x:
                            col = s * m + q
                            block[r][col] = block[r].get(col, ZERO) + c * x
        rows.extend(block)
    return rows


def coboundary_matrix(rep: Representation, n: int) -> Matrix:
    ncols = CochainSpace(rep.algebra.dim, rep.dimV, n).dim
    dense = []
    for r in coboundary_rows(rep, n):
        row = [ZERO] * ncols
        for c, x in r.items():
            row[c] = x
        dense.append(row)
    return Matrix.from_rows(dense) if dense else Matrix.zeros(0, ncols)


def check_2cocycle(rep: Representation, phi: TwoCochain) -> Report:
    """2-cocycle identity on tuples ``i<j`` and ``k<l<m``."""
    A = rep.algebra
    d = A.dim
    if (phi.d, phi.dimV) != (d, rep.dimV):
        raise DimensionMismatchError("cochain does not match the representation")
    report = Report("2-cocycle")
    t = A._table
    e = [basis_vec(d, i) for i in range(d)]
    R = rep.basis_rho
    with timed(report):
        for (i, j) in _pairs(d):
            for (k, l, m) in itertools.combinations(range(d), 3):
                terms = (
                    phi(e[i], e[j], t[k][l][m]),
                    vscale(-1, phi(t[i][j][k], e[l], e[m])),
                    vscale(-1, phi(e[k], t[i][j][l], e[m])),
                    vscale(-1, phi(e[k], e[l], t[i][j][m])),
                    R(i, j).apply(phi.basis_value(k, l, m)),
                    vscale(-1, R(k, l).apply(phi.basis_value(i, j, m))),
                    vscale(-1, R(l, m).apply(phi.basis_value(i, j, k))),
                    vscale(-1, R(m, k).apply(phi.basis_value(i, j, l))),
                )
                report.compare(fmt_tuple(i, j, k, l, m), vsum(terms, rep.dimV),
                               zero_vec(rep.dimV))
    return report


def require_cocycle(rep: Representation, phi: TwoCochain) -> None:
    report = check_2cocycle(rep, phi)
    if not report.passed:
        raise NotACocycleError(report)


def twisted_semidirect(rep: Representation, phi: TwoCochain) -> ThreeLieAlgebra:
    """The twisted semidirect product on ``g (+) V`` (g coordinates first)."""
    if not rep.verified:
        raise UnverifiedInputError("twisted semidirect product needs a verified representation")
    require_cocycle(rep, phi)
    A = rep.algebra
    d, m = A.dim, rep.dimV
    n = d + m
    structure = {}
    for i, j, k in itertools.combinations(range(n), 3):
        g_idx = [x for x in (i, j, k) if x < d]
        if len(g_idx) == 3:
            value = A.basis_bracket(i, j, k) + phi.basis_value(i, j, k)
        elif len(g_idx) == 2:
            # [(e_i), (e_j), (f_w)] = (0, rho(e_i, e_j) f_w)
            w = k - d
            value = zero_vec(d) + rep.basis_rho(i, j).col(w)
        else:
            continue
        structure[(i, j, k)] = value
    return ThreeLieAlgebra(n, structure, name=f"{A.name or 'g'} x_phi V")


def semidirect_gauge(d: int, f: Matrix) -> Matrix:
    """``Psi_f = [[Id, 0], [f, Id]]`` on ``g (+) V``.

    An isomorphism from the product twisted by ``Phi + df`` onto the one twisted by ``Phi``.
    """
    m = f.rows
    rows = []
    for i in range(d + m):
        r = [ZERO] * (d + m)
        if i < d:
            r[i] = ONE
        else:
            r[:d] = f.row(i - d)
            r[i] = ONE
        rows.append(r)
    return Matrix.from_rows(rows)


@dataclass(frozen=True)
class CohomologyRow:
    degree: int
    cochains: int
    cocycles: int
    coboundaries: int
    image: int

    @property
    def cohomology(self) -> int:
        return self.cocycles - self.coboundaries

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.degree, self.cocycles, self.coboundaries, self.cohomology)


def _rank_job(args) -> int:
    rows, ncols = args
    return rank_of_rows(rows, ncols)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("TRILIE_WORKERS", "1")))
    except ValueError:
        return 1


def complex_dims(dims: Sequence[int], ranks: Sequence[int]) -> list[CohomologyRow]:
    """Rows for a complex with ``dims[n]`` cochains and ``rank(d_n) = ranks[n]``.

    Degree ``n`` runs over ``1..len(dims)``; the first space has no incoming
    differential.
    """
    out = []
    for n, (dim_c, r) in enumerate(zip(dims, ranks), start=1):
        b = ranks[n - 2] if n >= 2 else 0
        out.append(CohomologyRow(n, dim_c, dim_c - r, b, r))
    return out


def differential_ranks(jobs: list, workers: int | None = None) -> list[int]:
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_rank_job, jobs))
    return [_rank_job(j) for j in jobs]


def cohomology_dims(rep: Representation, n_max: int = 3,
                    workers: int | None = None) -> list[CohomologyRow]:
    """``dim Z^n``, ``dim B^n`` and ``dim H^n`` for ``n = 1..n_max``."""
    if not rep.verified:
        raise UnverifiedInputError("cohomology needs a verified representation")
    A = rep.algebra
    _check_caps(A.dim, rep.dimV, n_max, N_MAX)
    jobs = []
    dims = []
    for n in range(1, n_max + 1):
        dims.append(CochainSpace(A.dim, rep.dimV, n).dim)
        jobs.append((coboundary_rows(rep, n), dims[-1]))
    return complex_dims(dims, differential_ranks(jobs, workers))
