"""NS-3-Lie algebras, Nijenhuis operators and Reynolds operators.

NS axiom checks run on reduced basis tuples:

* the ``{x1,x2,{x3,x4,x5}}`` axiom is skew in ``(x1, x2)`` and in
  ``(x3, x4)`` on both sides, so ``x1<x2``, ``x3<x4`` and any ``x5``;
* the ``{[[x1,x2,x3]], x4, x5}`` axiom is alternating in ``(x1, x2, x3)``
  (the cyclic sum of a map skew in its first two slots is alternating), so
  ``x1<x2<x3`` and any ``x4, x5``;
* the ``[x1,x2,[[x3,x4,x5]]]`` axiom is skew in ``(x1, x2)`` and alternating
  in ``(x3, x4, x5)`` by the same argument, so ``x1<x2`` and ``x3<x4<x5``.

Cyclic sums rotate ``(a, b, c) -> (b, c, a) -> (c, a, b)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exactlin import (ZERO, Matrix, SingularMatrixError, Vector, basis_vec,
                       invert, is_zero, vadd, vec, vscale, vsub, vsum, zero_vec)
from .report import (DimensionMismatchError, IdentityViolation, Report,
                     UnverifiedInputError, fmt_tuple, timed)
from .repcoh import (Representation, TwoCochain, adjoint, bracket_cochain,
                     verify_representation)
from .threelie import (ThreeLieAlgebra, as_matrix, derivation_report, perm_sign,
                       verify)
from .trbo import TwistedRBO, make_context, verify_trbo


class NotNijenhuisError(IdentityViolation):
    pass


class NotReynoldsError(IdentityViolation):
    pass


class NotADerivationError(IdentityViolation):
    pass


# -- NS-3-Lie algebras -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NSThreeLie:
    """``curly`` keyed ``(i, j, k)`` with ``i<j`` (third slot free); ``square``
    keyed canonically ``i<j<k``."""

    dim: int
    curly: Mapping = field(default_factory=dict)
    square: Mapping = field(default_factory=dict)
    verified: bool = False
    name: str = ""

    def __post_init__(self):
        n = self.dim
        curly = {}
        for key, v in dict(self.curly).items():
            i, j, k = key
            if not (0 <= i < j < n and 0 <= k < n):
                raise ValueError(f"non-canonical curly slot {key}")
            v = vec(v)
            if len(v) != n:
                raise DimensionMismatchError("curly value has wrong length")
            if not is_zero(v):
                curly[(i, j, k)] = v
        object.__setattr__(self, "curly", dict(sorted(curly.items())))
        # reuse the canonical storage and validation of ThreeLieAlgebra
        sq = ThreeLieAlgebra(n, self.square)
        object.__setattr__(self, "square", sq.structure)

    def __eq__(self, other):
        if not isinstance(other, NSThreeLie):
            return NotImplemented
        return (self.dim, self.curly, self.square) == (other.dim, other.curly, other.square)

    __hash__ = None

    @cached_property
    def square_algebra(self) -> ThreeLieAlgebra:
        return ThreeLieAlgebra(self.dim, self.square)

    @cached_property
    def _curly_table(self):
        n = self.dim
        z = zero_vec(n)
        t = [[[z] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.curly.items():
            t[i][j][k] = v
            t[j][i][k] = vscale(-1, v)
        return t

    def curly_basis(self, i: int, j: int, k: int) -> Vector:
        return self._curly_table[i][j][k]

    def curly_bracket(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        acc = [ZERO] * self.dim
        for (i, j, k), v in self.curly.items():
            c = (x[i] * y[j] - x[j] * y[i]) * z[k]
            if c:
                for l, a in enumerate(v):
                    if a:
                        acc[l] += c * a
        return tuple(acc)

    def square_bracket(self, x, y, z) -> Vector:
        return self.square_algebra.bracket(x, y, z)

    def total(self, x, y, z) -> Vector:
        """``{x,y,z} + {y,z,x} + {z,x,y} + [x,y,z]``."""
        c = self.curly_bracket
        return vsum((c(x, y, z), c(y, z, x), c(z, x, y), self.square_bracket(x, y, z)), self.dim)


def check_ns_axioms(A: NSThreeLie) -> Report:
    n = A.dim
    e = [basis_vec(n, i) for i in range(n)]
    C, S, K = A.curly_bracket, A.square_bracket, A.total
    report = Report("NS-3-Lie axioms")
    pairs = list(itertools.combinations(range(n), 2))
    with timed(report):
        for (a, b), (c, d) in itertools.product(pairs, repeat=2):
            x1, x2, x3, x4 = e[a], e[b], e[c], e[d]
            for f in range(n):
                x5 = e[f]
                lhs = C(x1, x2, C(x3, x4, x5))
                rhs = vsum((C(x3, x4, C(x1, x2, x5)), C(K(x1, x2, x3), x4, x5),
                            C(x3, K(x1, x2, x4), x5)), n)
                report.compare(fmt_tuple(a, b, c, d, f), lhs, rhs, identity="curly-curly")
        for a, b, c in itertools.combinations(range(n), 3):
            x1, x2, x3 = e[a], e[b], e[c]
            for d, f in itertools.product(range(n), repeat=2):
                x4, x5 = e[d], e[f]
                lhs = C(K(x1, x2, x3), x4, x5)
                rhs = vsum((C(x1, x2, C(x3, x4, x5)), C(x2, x3, C(x1, x4, x5)),
                            C(x3, x1, C(x2, x4, x5))), n)
                report.compare(fmt_tuple(a, b, c, d, f), lhs, rhs, identity="total-curly")
        for a, b in pairs:
            x1, x2 = e[a], e[b]
            for c, d, f in itertools.combinations(range(n), 3):
                x3, x4, x5 = e[c], e[d], e[f]
                lhs = S(x1, x2, K(x3, x4, x5))
                rot = ((x3, x4, x5), (x4, x5, x3), (x5, x3, x4))
                terms = [S(p, q, K(x1, x2, r)) for p, q, r in rot]
                terms.append(vscale(-1, C(x1, x2, S(x3, x4, x5))))
                terms += [C(p, q, S(x1, x2, r)) for p, q, r in rot]
                report.compare(fmt_tuple(a, b, c, d, f), lhs, vsum(terms, n),
                               identity="square-total")
    return report


def verify_ns(A: NSThreeLie) -> NSThreeLie:
    if A.verified:
        return A
    report = check_ns_axioms(A)
    if not report.passed:
        raise IdentityViolation(report)
    return replace(A, verified=True)


def subadjacent(A: NSThreeLie) -> ThreeLieAlgebra:
    if not A.verified:
        raise UnverifiedInputError("subadjacent algebra needs a verified NS-3-Lie algebra")
    n = A.dim
    e = [basis_vec(n, i) for i in range(n)]
    structure = {t: A.total(e[t[0]], e[t[1]], e[t[2]])
                 for t in itertools.combinations(range(n), 3)}
    return verify(ThreeLieAlgebra(n, structure, name="subadjacent"))


def L_representation(A: NSThreeLie) -> Representation:
    """``L(x, y) z = {x, y, z}`` as a representation of the subadjacent algebra."""
    Ac = subadjacent(A)
    n = A.dim
    rho = {(i, j): Matrix.from_columns([A.curly_basis(i, j, k) for k in range(n)], n)
           for i, j in itertools.combinations(range(n), 2)}
    return verify_representation(Representation(Ac, n, rho, name="L"))


def ns_from_trbo(T: TwistedRBO) -> NSThreeLie:
    """``{u,v,w} = rho(Tu,Tv) w`` and ``[u,v,w] = Phi(Tu,Tv,Tw)``."""
    if not T.verified:
        raise UnverifiedInputError("NS structure needs a verified operator")
    ctx = T.context
    m = T.dimV
    curly = {}
    for i, j in itertools.combinations(range(m), 2):
        R = ctx.rep(T.Tcol(i), T.Tcol(j))
        for k in range(m):
            curly[(i, j, k)] = R.col(k)
    square = {(i, j, k): ctx.phi(T.Tcol(i), T.Tcol(j), T.Tcol(k))
              for i, j, k in itertools.combinations(range(m), 3)}
    return verify_ns(NSThreeLie(m, curly, square))


def ns_homomorphism_report(psi, A: NSThreeLie, B: NSThreeLie) -> Report:
    psi = as_matrix(psi, B.dim, A.dim)
    report = Report("NS homomorphism")
    n = A.dim
    e = [basis_vec(n, i) for i in range(n)]
    with timed(report):
        for i, j in itertools.combinations(range(n), 2):
            for k in range(n):
                lhs = psi.apply(A.curly_basis(i, j, k))
                rhs = B.curly_bracket(psi.col(i), psi.col(j), psi.col(k))
                report.compare(fmt_tuple(i, j, k), lhs, rhs, identity="curly")
        for i, j, k in itertools.combinations(range(n), 3):
            lhs = psi.apply(A.square_bracket(e[i], e[j], e[k]))
            rhs = B.square_bracket(psi.col(i), psi.col(j), psi.col(k))
            report.compare(fmt_tuple(i, j, k), lhs, rhs, identity="square")
    return report


def check_ns_homomorphism(psi, A: NSThreeLie, B: NSThreeLie) -> bool:
    return ns_homomorphism_report(psi, A, B).passed


# -- Nijenhuis operators -----------------------------------------------------------

def _require_algebra(A: ThreeLieAlgebra) -> None:
    if not A.verified:
        raise UnverifiedInputError("operator checks need a verified 3-Lie algebra")


def _n_correction(A: ThreeLieAlgebra, N: Matrix, x, y, z) -> Vector:
    """``-N([Nx,y,z] + [x,Ny,z] + [x,y,Nz]) + N^2 [x,y,z]``."""
    br = A.bracket
    Nx, Ny, Nz = N.apply(x), N.apply(y), N.apply(z)
    inner = vsum((br(Nx, y, z), br(x, Ny, z), br(x, y, Nz)), A.dim)
    return vsub(N.apply(N.apply(br(x, y, z))), N.apply(inner))


def nijenhuis_report(A: ThreeLieAlgebra, N) -> Report:
    _require_algebra(A)
    N = as_matrix(N, A.dim)
    br = A.bracket
    d = A.dim
    report = Report("Nijenhuis operator")
    with timed(report):
        for i, j, k in itertools.combinations(range(d), 3):
            x, y, z = basis_vec(d, i), basis_vec(d, j), basis_vec(d, k)
            Nx, Ny, Nz = N.col(i), N.col(j), N.col(k)
            lhs = br(Nx, Ny, Nz)
            inner = vsum((br(Nx, Ny, z), br(x, Ny, Nz), br(Nx, y, Nz),
                          vscale(-1, N.apply(br(Nx, y, z))),
                          vscale(-1, N.apply(br(x, Ny, z))),
                          vscale(-1, N.apply(br(x, y, Nz))),
                          N.apply(N.apply(br(x, y, z)))), d)
            report.compare(fmt_tuple(i, j, k), lhs, N.apply(inner))
    return report


def check_nijenhuis(A: ThreeLieAlgebra, N) -> bool:
    return nijenhuis_report(A, N).passed


def _require_nijenhuis(A: ThreeLieAlgebra, N) -> Matrix:
    report = nijenhuis_report(A, N)
    if not report.passed:
        raise NotNijenhuisError(report)
    return as_matrix(N, A.dim)


def deformed_bracket(A: ThreeLieAlgebra, N) -> ThreeLieAlgebra:
    N = _require_nijenhuis(A, N)
    d = A.dim
    br = A.bracket
    e = [basis_vec(d, i) for i in range(d)]
    structure = {}
    for i, j, k in itertools.combinations(range(d), 3):
        x, y, z = e[i], e[j], e[k]
        Nx, Ny, Nz = N.col(i), N.col(j), N.col(k)
        top = vsum((br(Nx, Ny, z), br(x, Ny, Nz), br(Nx, y, Nz)), d)
        structure[(i, j, k)] = vadd(top, _n_correction(A, N, x, y, z))
    return verify(ThreeLieAlgebra(d, structure, name=f"{A.name or 'g'}_N"))


def rho_N(A: ThreeLieAlgebra, N) -> Representation:
    """``rho_N(x, y) z = [Nx, Ny, z]`` on ``g`` as a module over ``g_N``."""
    gN = deformed_bracket(A, N)
    N = as_matrix(N, A.dim)
    d = A.dim
    rho = {(i, j): A.ad(N.col(i), N.col(j)) for i, j in itertools.combinations(range(d), 2)}
    return verify_representation(Representation(gN, d, rho, name="rho_N"))


def phi_N(A: ThreeLieAlgebra, N) -> TwoCochain:
    N = _require_nijenhuis(A, N)
    d = A.dim
    e = [basis_vec(d, i) for i in range(d)]
    return TwoCochain(d, d, {(i, j, k): _n_correction(A, N, e[i], e[j], e[k])
                             for i, j, k in itertools.combinations(range(d), 3)})


def nijenhuis_trbo(A: ThreeLieAlgebra, N) -> TwistedRBO:
    """The identity map as a twisted operator in ``(g_N, rho_N, Phi_N)``."""
    rep = rho_N(A, N)
    ctx = make_context(rep.algebra, rep, phi_N(A, N))
    return verify_trbo(TwistedRBO(ctx, Matrix.identity(A.dim)))


def ns_from_nijenhuis(A: ThreeLieAlgebra, N) -> NSThreeLie:
    return ns_from_trbo(nijenhuis_trbo(A, N))


def ns_nijenhuis_direct(A: ThreeLieAlgebra, N) -> NSThreeLie:
    """Same structure written straight from the two defining formulas."""
    N = _require_nijenhuis(A, N)
    d = A.dim
    e = [basis_vec(d, i) for i in range(d)]
    curly = {(i, j, k): A.bracket(N.col(i), N.col(j), e[k])
             for i, j in itertools.combinations(range(d), 2) for k in range(d)}
    square = {(i, j, k): _n_correction(A, N, e[i], e[j], e[k])
              for i, j, k in itertools.combinations(range(d), 3)}
    return verify_ns(NSThreeLie(d, curly, square))


def minor(N: Matrix, i: int, j: int) -> Fraction:
    """Complementary minor of entry ``(i, j)`` of a 3x3 matrix (0-based)."""
    r = [a for a in range(3) if a != i]
    c = [b for b in range(3) if b != j]
    return N[r[0], c[0]] * N[r[1], c[1]] - N[r[0], c[1]] * N[r[1], c[0]]


def inversion_sign(seq: Sequence[int]) -> int:
    return perm_sign(seq)


def minor_table(N) -> dict[tuple[int, int, int], Vector]:
    """Closed-form curly brackets of the NS structure on ``[e1,e2,e3] = e1``.

    Keys are 0-based ``(i, j, k)``; entries with a repeated first pair are
    omitted (they vanish). Distinct triples carry the inversion-count sign.
    """
    N = as_matrix(N, 3)
    M = lambda a, b: minor(N, a - 1, b - 1)
    e1 = lambda c: (c, ZERO, ZERO)
    table = {}
    for i, j, k in itertools.permutations((1, 2, 3)):
        table[(i - 1, j - 1, k - 1)] = e1(inversion_sign((i, j, k)) * M(k, k))
    listed = {(1, 2, 1): M(1, 3), (1, 3, 1): M(1, 2), (2, 1, 2): M(2, 3),
              (2, 3, 2): -M(2, 1), (3, 1, 3): -M(3, 2), (3, 2, 3): -M(3, 1)}
    for (i, j, k), c in listed.items():
        table[(i - 1, j - 1, k - 1)] = e1(c)
        table[(j - 1, i - 1, k - 1)] = e1(-c)
    return table


def minor_square(N) -> Vector:
    """``[e1, e2, e3]`` of the same NS structure, in terms of minors."""
    N = as_matrix(N, 3)
    M = lambda a, b: minor(N, a - 1, b - 1)
    return (-M(2, 2) - M(3, 3), -M(1, 2), M(1, 3))


# -- Reynolds operators ------------------------------------------------------------

def _reynolds_inner(A: ThreeLieAlgebra, R: Matrix, x, y, z) -> Vector:
    """``[Rx,Ry,z] + [x,Ry,Rz] + [Rx,y,Rz] - [Rx,Ry,Rz]``."""
    br = A.bracket
    Rx, Ry, Rz = R.apply(x), R.apply(y), R.apply(z)
    return vsub(vsum((br(Rx, Ry, z), br(x, Ry, Rz), br(Rx, y, Rz)), A.dim), br(Rx, Ry, Rz))


def reynolds_report(A: ThreeLieAlgebra, R) -> Report:
    _require_algebra(A)
    R = as_matrix(R, A.dim)
    d = A.dim
    report = Report("Reynolds operator")
    with timed(report):
        for i, j, k in itertools.combinations(range(d), 3):
            x, y, z = basis_vec(d, i), basis_vec(d, j), basis_vec(d, k)
            lhs = A.bracket(R.col(i), R.col(j), R.col(k))
            report.compare(fmt_tuple(i, j, k), lhs, R.apply(_reynolds_inner(A, R, x, y, z)))
    return report


def check_reynolds(A: ThreeLieAlgebra, R) -> bool:
    return reynolds_report(A, R).passed


def _require_reynolds(A: ThreeLieAlgebra, R) -> Matrix:
    report = reynolds_report(A, R)
    if not report.passed:
        raise NotReynoldsError(report)
    return as_matrix(R, A.dim)


def reynolds_bracket(A: ThreeLieAlgebra, R) -> ThreeLieAlgebra:
    R = _require_reynolds(A, R)
    d = A.dim
    e = [basis_vec(d, i) for i in range(d)]
    structure = {(i, j, k): _reynolds_inner(A, R, e[i], e[j], e[k])
                 for i, j, k in itertools.combinations(range(d), 3)}
    return verify(ThreeLieAlgebra(d, structure, name=f"{A.name or 'g'}_R"))


def reynolds_context(A: ThreeLieAlgebra):
    """``(g, ad, -[.,.,.])``."""
    return make_context(A, adjoint(A), bracket_cochain(A, -1))


def trbo_from_reynolds(A: ThreeLieAlgebra, R, context=None) -> TwistedRBO:
    R = _require_reynolds(A, R)
    ctx = reynolds_context(A) if context is None else context
    return verify_trbo(TwistedRBO(ctx, R))


def derivation_from_reynolds(A: ThreeLieAlgebra, R) -> Matrix:
    """``R^{-1} - Id/2``; raises :class:`SingularMatrixError` for singular ``R``."""
    R = _require_reynolds(A, R)
    D = invert(R) - Matrix.identity(A.dim).scale(Fraction(1, 2))
    report = derivation_report(A, D)
    if not report.passed:
        raise NotADerivationError(report)
    return D


def reynolds_from_derivation(A: ThreeLieAlgebra, D) -> Matrix:
    """``(D + Id/2)^{-1}``."""
    _require_algebra(A)
    D = as_matrix(D, A.dim)
    report = derivation_report(A, D)
    if not report.passed:
        raise NotADerivationError(report)
    R = invert(D + Matrix.identity(A.dim).scale(Fraction(1, 2)))
    _require_reynolds(A, R)
    return R


__all__ = [
    "NSThreeLie", "check_ns_axioms", "verify_ns", "subadjacent", "L_representation",
    "ns_from_trbo", "check_ns_homomorphism", "ns_homomorphism_report",
    "check_nijenhuis", "nijenhuis_report", "deformed_bracket", "rho_N", "phi_N",
    "nijenhuis_trbo", "ns_from_nijenhuis", "ns_nijenhuis_direct", "minor",
    "minor_table", "minor_square", "check_reynolds", "reynolds_report",
    "reynolds_bracket", "reynolds_context", "trbo_from_reynolds",
    "derivation_from_reynolds", "reynolds_from_derivation", "NotNijenhuisError",
    "NotReynoldsError", "NotADerivationError", "SingularMatrixError",
]
