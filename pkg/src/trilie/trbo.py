"""Phi-twisted Rota-Baxter operators.

An operator lives in a context ``(g, rho, Phi)``: a 3-Lie algebra, a
representation on ``V`` and a 2-cocycle. ``T`` is a ``dim g x dim V`` matrix.

Formal-parameter statements (deformations ``T + t*frakT`` and the
homomorphism pair attached to an equivalence) are handled as polynomials in
``t`` with matrix coefficients and compared coefficient by coefficient.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Sequence

from .exactlin import (Matrix, SingularMatrixError, Vector, basis_vec,
                       in_span, invert, vadd, vsub, vsum, zero_vec)
from .report import (IdentityViolation, Report, TrilieError,
                     UnverifiedInputError, Violation, fmt_tuple, timed)
from .repcoh import (N_MAX, CochainSpace, NCochain, NotACocycleError,
                     Representation, ResourceCapError, TwoCochain,
                     alternating_part, check_2cocycle,
                     coboundary, coboundary_rows, complex_dims,
                     differential_ranks, twisted_semidirect,
                     verify_representation)
from .threelie import (ThreeLieAlgebra, as_matrix, homomorphism_report, verify)


class ContextMismatchError(TrilieError, ValueError):
    pass


class NotAdmissibleError(TrilieError):
    """``Id + f T`` is singular."""


class PreconditionError(TrilieError):
    pass


@dataclass(frozen=True, eq=False)
class TRBOContext:
    algebra: ThreeLieAlgebra
    rep: Representation
    phi: TwoCochain
    verified: bool = False

    @property
    def d(self) -> int:
        return self.algebra.dim

    @property
    def dimV(self) -> int:
        return self.rep.dimV

    def same_as(self, other: "TRBOContext") -> bool:
        return (self is other or (self.algebra == other.algebra and self.rep == other.rep
                                  and self.phi == other.phi))


def make_context(A: ThreeLieAlgebra, rep: Representation, phi: TwoCochain | None = None) -> TRBOContext:
    """Verify ``(A, rep, phi)`` and return a flagged context."""
    if rep.algebra != A:
        raise ContextMismatchError("representation is over a different algebra")
    phi = TwoCochain(A.dim, rep.dimV) if phi is None else phi
    if (phi.d, phi.dimV) != (A.dim, rep.dimV):
        raise ContextMismatchError("cocycle does not match the representation")
    A = verify(A)
    rep = verify_representation(replace(rep, algebra=A))
    report = check_2cocycle(rep, phi)
    if not report.passed:
        raise NotACocycleError(report)
    return TRBOContext(A, rep, phi, verified=True)


@dataclass(frozen=True, eq=False)
class TwistedRBO:
    context: TRBOContext
    T: Matrix
    verified: bool = False

    def __post_init__(self):
        object.__setattr__(self, "T", as_matrix(self.T, self.context.d, self.context.dimV))

    @property
    def d(self) -> int:
        return self.context.d

    @property
    def dimV(self) -> int:
        return self.context.dimV

    def Tcol(self, u: int) -> Vector:
        return self.T.col(u)


def _require_context(ctx: TRBOContext) -> None:
    if not ctx.verified:
        raise UnverifiedInputError("twisted Rota-Baxter context is not verified")


def _require(T: TwistedRBO) -> None:
    if not T.verified:
        raise UnverifiedInputError("twisted Rota-Baxter operator is not verified")


def inner_bracket(T: TwistedRBO, u: Sequence, v: Sequence, w: Sequence) -> Vector:
    """``rho(Tu,Tv)w + rho(Tv,Tw)u + rho(Tw,Tu)v + Phi(Tu,Tv,Tw)``."""
    ctx = T.context
    Tu, Tv, Tw = T.T.apply(u), T.T.apply(v), T.T.apply(w)
    rho = ctx.rep
    return vsum((rho.act(Tu, Tv, w), rho.act(Tv, Tw, u), rho.act(Tw, Tu, v),
                 ctx.phi(Tu, Tv, Tw)), ctx.dimV)


def check_twisted_rbo(T: TwistedRBO) -> Report:
    """Operator identity on basis triples ``u<v<w`` of ``V``.

    Both sides are alternating in ``(u, v, w)``, so these triples suffice.
    """
    _require_context(T.context)
    A = T.context.algebra
    m = T.dimV
    report = Report("twisted Rota-Baxter operator")
    with timed(report):
        for u, v, w in itertools.combinations(range(m), 3):
            lhs = A.bracket(T.Tcol(u), T.Tcol(v), T.Tcol(w))
            rhs = T.T.apply(inner_bracket(T, basis_vec(m, u), basis_vec(m, v), basis_vec(m, w)))
            report.compare(fmt_tuple(u, v, w), lhs, rhs)
    return report


def verify_trbo(T: TwistedRBO) -> TwistedRBO:
    if T.verified:
        return T
    report = check_twisted_rbo(T)
    if not report.passed:
        raise IdentityViolation(report)
    return replace(T, verified=True)


def graph_basis(T: TwistedRBO) -> list[Vector]:
    """``(T e_u, e_u)`` in ``g (+) V`` coordinates."""
    return [T.Tcol(u) + basis_vec(T.dimV, u) for u in range(T.dimV)]


def graph_closure_check(T: TwistedRBO) -> bool:
    return graph_closure_report(T).passed


def graph_closure_report(T: TwistedRBO) -> Report:
    """Is the graph of ``T`` a subalgebra of the twisted semidirect product?"""
    ctx = T.context
    _require_context(ctx)
    S = twisted_semidirect(ctx.rep, ctx.phi)
    gens = graph_basis(T)
    report = Report("graph closure")
    with timed(report):
        for u, v, w in itertools.combinations(range(T.dimV), 3):
            b = S.bracket(gens[u], gens[v], gens[w])
            report.checked += 1
            if not in_span(gens, b):
                # witness: g-part of the bracket against T of its V-part
                report.violations.append(
                    Violation(fmt_tuple(u, v, w), b[:T.d], T.T.apply(b[T.d:]), "graph"))
    return report


def trbo_from_inverse(rep: Representation, f) -> TwistedRBO:
    """``T = f^{-1}`` for an invertible ``f: g -> V`` with ``Phi = -d f``."""
    A = rep.algebra
    f = as_matrix(f, rep.dimV, A.dim)
    try:
        T = invert(f)
    except SingularMatrixError as exc:
        raise NotAdmissibleError("f is not invertible") from exc
    phi = -alternating_part(coboundary(rep, NCochain.from_linear_map(f)))
    ctx = make_context(A, rep, phi)
    return TwistedRBO(ctx, T)


# -- induced structures --------------------------------------------------------

def induced_bracket(T: TwistedRBO) -> ThreeLieAlgebra:
    """3-Lie bracket on ``V``: the inner expression of the operator identity."""
    _require(T)
    m = T.dimV
    e = [basis_vec(m, i) for i in range(m)]
    structure = {(u, v, w): inner_bracket(T, e[u], e[v], e[w])
                 for u, v, w in itertools.combinations(range(m), 3)}
    return verify(ThreeLieAlgebra(m, structure, name="V_T"))


def varrho_basis(T: TwistedRBO, u: int, v: int) -> Matrix:
    ctx = T.context
    A = ctx.algebra
    d, m = T.d, T.dimV
    Tu, Tv = T.Tcol(u), T.Tcol(v)
    eu, ev = basis_vec(m, u), basis_vec(m, v)
    cols = []
    for k in range(d):
        x = basis_vec(d, k)
        inner = vsum((ctx.rep.act(x, Tu, ev), ctx.rep.act(Tv, x, eu), ctx.phi(Tu, Tv, x)), m)
        cols.append(vsub(A.bracket(Tu, Tv, x), T.T.apply(inner)))
    return Matrix.from_columns(cols, d)


def induced_rep_varrho(T: TwistedRBO) -> Representation:
    _require(T)
    VT = induced_bracket(T)
    rho = {(u, v): varrho_basis(T, u, v) for u, v in itertools.combinations(range(T.dimV), 2)}
    return verify_representation(Representation(VT, T.d, rho, name="varrho"))


def phi_X_T(T: TwistedRBO, x: Sequence, y: Sequence) -> Matrix:
    """``u -> Phi(x, y, T u)`` as an endomorphism of ``V``."""
    return Matrix.from_columns([T.context.phi(x, y, T.Tcol(u)) for u in range(T.dimV)],
                               T.dimV)


def delta(T: TwistedRBO, x: Sequence, y: Sequence) -> Matrix:
    """``delta(x^y) v = T rho(x,y) v - [x, y, T v] + T Phi(x, y, T v)`` as a ``d x dimV`` matrix."""
    _require(T)
    ctx = T.context
    A = ctx.algebra
    R = ctx.rep(x, y)
    P = phi_X_T(T, x, y)
    cols = []
    for u in range(T.dimV):
        col = vadd(T.T.apply(R.col(u)), T.T.apply(P.col(u)))
        cols.append(vsub(col, A.bracket(x, y, T.Tcol(u))))
    return Matrix.from_columns(cols, T.d)


def delta_matrix(T: TwistedRBO) -> Matrix:
    """Matrix of ``delta: wedge^2 g -> Hom(V, g)``.

    Columns follow basis pairs ``i<j``; rows are the coordinates of a degree-1
    cochain of ``(V; g)``.
    """
    d = T.d
    cols = []
    for i, j in itertools.combinations(range(d), 2):
        D = delta(T, basis_vec(d, i), basis_vec(d, j))
        cols.append(NCochain.from_linear_map(D).values)
    return Matrix.from_columns(cols, T.d * T.dimV)


def wedge_coords(x: Sequence, y: Sequence) -> Vector:
    d = len(x)
    return tuple(x[i] * y[j] - x[j] * y[i] for i, j in itertools.combinations(range(d), 2))


def coboundary_dT(T: TwistedRBO, f: NCochain, varrho: Representation | None = None) -> NCochain:
    _require(T)
    varrho = induced_rep_varrho(T) if varrho is None else varrho
    return coboundary(varrho, f)


def trbo_cohomology_dims(T: TwistedRBO, n_max: int = 3, workers: int | None = None):
    """Rows ``(n, Z, B, H)`` of the operator complex for ``n = 1..n_max``.

    ``C^1 = wedge^2 g`` with differential ``delta``; ``C^n`` is the degree
    ``n-1`` cochain space of ``(V; g)`` with the coboundary of ``varrho``.
    """
    _require(T)
    if n_max > N_MAX:
        raise ResourceCapError(f"n_max {n_max} exceeds cap {N_MAX}")
    varrho = induced_rep_varrho(T)
    d, m = T.d, T.dimV
    dims = [d * (d - 1) // 2]
    dm = delta_matrix(T)
    jobs = [([dm.row(i) for i in range(dm.rows)], dm.cols)]
    for n in range(2, n_max + 1):
        dims.append(CochainSpace(m, d, n - 1).dim)
        jobs.append((coboundary_rows(varrho, n - 1), dims[-1]))
    return complex_dims(dims, differential_ranks(jobs, workers))


# -- gauge ---------------------------------------------------------------------

def closedness_report(rep: Representation, f) -> Report:
    f = as_matrix(f, rep.dimV, rep.algebra.dim)
    df = coboundary(rep, NCochain.from_linear_map(f))
    report = Report("1-cocycle")
    space = df.space
    for ids, k in space.tuples():
        report.compare(space.describe(ids, k), df.value(ids, k), zero_vec(rep.dimV))
    return report


def t_admissible_gauge(T: TwistedRBO, f) -> TwistedRBO:
    """``T_f = T (Id + f T)^{-1}`` for a ``T``-admissible 1-cocycle ``f``."""
    _require(T)
    ctx = T.context
    f = as_matrix(f, T.dimV, T.d)
    report = closedness_report(ctx.rep, f)
    if not report.passed:
        raise NotACocycleError(report)
    try:
        inv = invert(Matrix.identity(T.dimV) + f @ T.T)
    except SingularMatrixError as exc:
        raise NotAdmissibleError("Id + f T is singular") from exc
    return verify_trbo(TwistedRBO(ctx, T.T @ inv))


def gauge_isomorphism_report(T: TwistedRBO, f) -> Report:
    """``Id + f T`` as a map from ``V_T`` to ``V_{T_f}``."""
    Tf = t_admissible_gauge(T, f)
    f = as_matrix(f, T.dimV, T.d)
    return homomorphism_report(induced_bracket(T), induced_bracket(Tf),
                               Matrix.identity(T.dimV) + f @ T.T)


# -- polynomials in t ----------------------------------------------------------

PolyVec = list  # list of vectors, index = power of t


def _poly_mats(P) -> list[Matrix]:
    if isinstance(P, Matrix):
        return [P]
    return [p if isinstance(p, Matrix) else Matrix.from_rows(p) for p in P]


def _papply(P: list[Matrix], v: PolyVec) -> PolyVec:
    out: dict[int, Vector] = {}
    for i, M in enumerate(P):
        for j, x in enumerate(v):
            y = M.apply(x)
            out[i + j] = vadd(out[i + j], y) if i + j in out else y
    return [out[k] for k in sorted(out)]


def _ptri(fn, a: PolyVec, b: PolyVec, c: PolyVec, n: int) -> PolyVec:
    out = [zero_vec(n) for _ in range(len(a) + len(b) + len(c) - 2)]
    for (i, x), (j, y), (k, z) in itertools.product(enumerate(a), enumerate(b), enumerate(c)):
        out[i + j + k] = vadd(out[i + j + k], fn(x, y, z))
    return out


def _pcompare(report: Report, where: str, lhs: PolyVec, rhs: PolyVec, n: int,
              identity: str, order: int | None) -> None:
    top = max(len(lhs), len(rhs))
    if order is not None:
        top = min(top, order + 1)
    for k in range(top):
        a = lhs[k] if k < len(lhs) else zero_vec(n)
        b = rhs[k] if k < len(rhs) else zero_vec(n)
        report.compare(f"{where} t^{k}", a, b, identity=identity)


@dataclass(frozen=True, eq=False)
class FormalRBO:
    """``sum_k t^k coeffs[k]`` in a fixed context."""

    context: TRBOContext
    coeffs: tuple[Matrix, ...]


def as_formal(T) -> FormalRBO:
    if isinstance(T, FormalRBO):
        return T
    return FormalRBO(T.context, (T.T,))


def deformed_operator(T: TwistedRBO, frakT) -> FormalRBO:
    """``T + t frakT``."""
    return FormalRBO(T.context, (T.T, as_matrix(frakT, T.d, T.dimV)))


def trbo_homomorphism_report(phi, psi, T, T2, order: int | None = None) -> Report:
    """Homomorphism conditions from ``T`` to ``T2``.

    ``phi``/``psi`` and the operators may be polynomials in ``t``; every
    coefficient up to ``order`` (default: all) is compared.
    """
    T, T2 = as_formal(T), as_formal(T2)
    if not T.context.same_as(T2.context):
        raise ContextMismatchError("operators live in different contexts")
    ctx = T.context
    A, rep, Phi = ctx.algebra, ctx.rep, ctx.phi
    d, m = ctx.d, ctx.dimV
    phi, psi = _poly_mats(phi), _poly_mats(psi)
    for P in phi:
        as_matrix(P, d)
    for P in psi:
        as_matrix(P, m)
    report = Report("twisted Rota-Baxter homomorphism")
    eg = [[basis_vec(d, i)] for i in range(d)]
    ev = [[basis_vec(m, i)] for i in range(m)]
    with timed(report):
        for i, j, k in itertools.combinations(range(d), 3):
            lhs = _papply(phi, [A.basis_bracket(i, j, k)])
            rhs = _ptri(A.bracket, _papply(phi, eg[i]), _papply(phi, eg[j]), _papply(phi, eg[k]), d)
            _pcompare(report, fmt_tuple(i, j, k), lhs, rhs, d, "algebra", order)
        for u in range(m):
            lhs = _papply(phi, _papply(list(T.coeffs), ev[u]))
            rhs = _papply(list(T2.coeffs), _papply(psi, ev[u]))
            _pcompare(report, fmt_tuple(u), lhs, rhs, d, "phi T = T' psi", order)
        act = lambda x, y, v: rep.act(x, y, v)
        for i, j in itertools.combinations(range(d), 2):
            for u in range(m):
                lhs = _papply(psi, [rep.basis_rho(i, j).col(u)])
                rhs = _ptri(act, _papply(phi, eg[i]), _papply(phi, eg[j]), _papply(psi, ev[u]), m)
                _pcompare(report, fmt_tuple(i, j, u), lhs, rhs, m, "psi rho", order)
        for i, j, k in itertools.combinations(range(d), 3):
            lhs = _papply(psi, [Phi.basis_value(i, j, k)])
            rhs = _ptri(Phi, _papply(phi, eg[i]), _papply(phi, eg[j]), _papply(phi, eg[k]), m)
            _pcompare(report, fmt_tuple(i, j, k), lhs, rhs, m, "psi Phi", order)
    return report


def check_trbo_homomorphism(phi, psi, T, T2, order: int | None = None) -> bool:
    return trbo_homomorphism_report(phi, psi, T, T2, order).passed


def equivalence_pair(T: TwistedRBO, x: Sequence, y: Sequence) -> tuple[list[Matrix], list[Matrix]]:
    """``(Id + t ad_X, Id + t rho(X) + t Phi(X, T))`` for ``X = x ^ y``."""
    ctx = T.context
    phi = [Matrix.identity(T.d), ctx.algebra.ad(x, y)]
    psi = [Matrix.identity(T.dimV), ctx.rep(x, y) + phi_X_T(T, x, y)]
    return phi, psi


# -- deformations --------------------------------------------------------------

DEFORMATION_IDENTITIES = ("t1", "t2", "t3", "t4")


def check_deformation(T: TwistedRBO, frakT) -> Report:
    """The four t-coefficient identities of ``T + t frakT``.

    Per-identity outcomes are in ``report.notes``; passing ``t1`` alone means
    ``frakT`` is closed in the operator complex.
    """
    _require(T)
    ctx = T.context
    A, rho, Phi = ctx.algebra, ctx.rep, ctx.phi
    d, m = T.d, T.dimV
    S = as_matrix(frakT, d, m)
    report = Report("infinitesimal deformation")
    br = A.bracket
    with timed(report):
        for u, v, w in itertools.combinations(range(m), 3):
            eu, ev, ew = basis_vec(m, u), basis_vec(m, v), basis_vec(m, w)
            Tu, Tv, Tw = T.Tcol(u), T.Tcol(v), T.Tcol(w)
            Su, Sv, Sw = S.col(u), S.col(v), S.col(w)
            where = fmt_tuple(u, v, w)

            lhs1 = vsum((br(Su, Tv, Tw), br(Tu, Sv, Tw), br(Tu, Tv, Sw)), d)
            lin = vsum((rho.act(Sw, Tu, ev), rho.act(Tv, Sw, eu), rho.act(Su, Tv, ew),
                        rho.act(Tw, Su, ev), rho.act(Sv, Tw, eu), rho.act(Tu, Sv, ew),
                        Phi(Su, Tv, Tw), Phi(Tu, Sv, Tw), Phi(Tu, Tv, Sw)), m)
            zero_order = vsum((rho.act(Tu, Tv, ew), rho.act(Tv, Tw, eu), rho.act(Tw, Tu, ev),
                               Phi(Tu, Tv, Tw)), m)
            rhs1 = vadd(T.T.apply(lin), S.apply(zero_order))
            report.compare(where, lhs1, rhs1, identity="t1")

            lhs2 = vsum((br(Su, Sv, Tw), br(Sv, Sw, Tu), br(Sw, Su, Tv)), d)
            quad_rho = vsum((rho.act(Su, Sv, ew), rho.act(Sv, Sw, eu), rho.act(Sw, Su, ev)), m)
            quad_phi = vsum((Phi(Tu, Sv, Sw), Phi(Su, Tv, Sw), Phi(Su, Sv, Tw)), m)
            rhs2 = vadd(S.apply(lin), T.T.apply(vadd(quad_rho, quad_phi)))
            report.compare(where, lhs2, rhs2, identity="t2")

            lhs3 = br(Su, Sv, Sw)
            rhs3 = vsum((T.T.apply(Phi(Su, Sv, Sw)), S.apply(quad_rho), S.apply(quad_phi)), d)
            report.compare(where, lhs3, rhs3, identity="t3")

            report.compare(where, S.apply(Phi(Su, Sv, Sw)), zero_vec(d), identity="t4")
    failed = {v.identity for v in report.violations}
    report.notes["identities"] = {k: ("fail" if k in failed else "pass")
                                  for k in DEFORMATION_IDENTITIES}
    report.notes["closed_in_complex"] = "t1" not in failed
    return report


def deformation_equivalence_report(T: TwistedRBO, frakT1, frakT2,
                                   x: Sequence, y: Sequence) -> Report:
    """Both conditions linking two deformations through ``X = x ^ y``.

    When both hold, the difference is also compared against ``delta`` applied
    to the wedge coordinates of ``X`` through :func:`delta_matrix`.
    """
    _require(T)
    d, m = T.d, T.dimV
    S1 = as_matrix(frakT1, d, m)
    S2 = as_matrix(frakT2, d, m)
    for S in (S1, S2):
        if not check_deformation(T, S).passed:
            raise PreconditionError("direction does not generate a deformation")
    ctx = T.context
    report = Report("deformation equivalence")
    with timed(report):
        D = delta(T, x, y)
        Rx = ctx.rep(x, y)
        P = phi_X_T(T, x, y)
        for u in range(m):
            report.compare(fmt_tuple(u), vsub(S1.col(u), S2.col(u)), D.col(u),
                           identity="difference")
            lhs = ctx.algebra.bracket(x, y, S1.col(u))
            rhs = S2.apply(vadd(Rx.col(u), P.col(u)))
            report.compare(fmt_tuple(u), lhs, rhs, identity="intertwining")
        if report.passed:
            dX = delta_matrix(T).apply(wedge_coords(x, y))
            diff = NCochain.from_linear_map(S1 - S2).values
            report.compare("partial X", diff, dX, identity="cohomologous")
    return report


def check_deformation_equivalence(T: TwistedRBO, frakT1, frakT2, x: Sequence, y: Sequence) -> bool:
    return deformation_equivalence_report(T, frakT1, frakT2, x, y).passed


__all__ = [
    "TRBOContext", "TwistedRBO", "FormalRBO", "make_context", "check_twisted_rbo",
    "verify_trbo", "graph_closure_check", "graph_closure_report", "trbo_from_inverse",
    "induced_bracket", "induced_rep_varrho", "delta", "delta_matrix", "coboundary_dT",
    "trbo_cohomology_dims", "t_admissible_gauge", "gauge_isomorphism_report",
    "check_trbo_homomorphism", "trbo_homomorphism_report", "equivalence_pair",
    "deformed_operator", "check_deformation", "check_deformation_equivalence",
    "deformation_equivalence_report", "closedness_report", "wedge_coords",
    "ContextMismatchError", "NotAdmissibleError", "PreconditionError",
]
