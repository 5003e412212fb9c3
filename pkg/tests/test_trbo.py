import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from strategies import seeds
from trilie.exactlin import Matrix, basis_vec, vsum
from trilie.fixtures import (deformation_pair, dim3, heisenberg4, rand_invertible,
                             rand_matrix, rand_vector, simple4)
from trilie.repcoh import NCochain, NotACocycleError, TwoCochain, adjoint
from trilie.report import IdentityViolation, UnverifiedInputError
from trilie.threelie import check_fundamental_identity, check_homomorphism
from trilie.trbo import (ContextMismatchError, NotAdmissibleError, PreconditionError,
                         TwistedRBO, check_deformation, check_deformation_equivalence,
                         check_trbo_homomorphism, check_twisted_rbo, coboundary_dT, delta,
                         deformed_operator, equivalence_pair, gauge_isomorphism_report,
                         graph_closure_check, graph_closure_report, induced_bracket,
                         induced_rep_varrho, make_context, t_admissible_gauge,
                         trbo_cohomology_dims, trbo_from_inverse, verify_trbo)


def inverse_operator(seed, make=dim3):
    rng = random.Random(seed)
    A = make()
    return verify_trbo(trbo_from_inverse(adjoint(A), rand_invertible(rng, A.dim)))


@given(seeds)
def test_inverse_operators_and_graph_agree(seed):
    rng = random.Random(seed)
    A = [dim3, heisenberg4, simple4][seed % 3]()
    T = trbo_from_inverse(adjoint(A), rand_invertible(rng, A.dim))
    assert check_twisted_rbo(T).passed
    assert graph_closure_check(T)
    P = rand_matrix(rng, A.dim, A.dim)
    T2 = TwistedRBO(T.context, T.T + P)
    assert check_twisted_rbo(T2).passed == graph_closure_check(T2)


def test_zero_operator_is_an_o_operator():
    ctx = make_context(simple4(), adjoint(simple4()))
    assert check_twisted_rbo(TwistedRBO(ctx, Matrix.zeros(4, 4))).passed


def test_singular_f_rejected():
    with pytest.raises(NotAdmissibleError):
        trbo_from_inverse(adjoint(dim3()), Matrix.zeros(3, 3))


def test_context_checks():
    A = dim3()
    with pytest.raises(NotACocycleError):
        make_context(heisenberg4(), adjoint(heisenberg4()),
                     TwoCochain(4, 4, {(0, 1, 3): (1, 0, 0, 0)}))
    with pytest.raises(ContextMismatchError):
        make_context(A, adjoint(heisenberg4()))


def test_verify_trbo_raises():
    T = inverse_operator(1)
    with pytest.raises(IdentityViolation):
        verify_trbo(TwistedRBO(T.context, T.T + Matrix.identity(3)))


def test_constructions_need_verified_operator():
    T = inverse_operator(2)
    with pytest.raises(UnverifiedInputError):
        induced_bracket(TwistedRBO(T.context, T.T))


def test_graph_violation_is_explicit():
    T = inverse_operator(3)
    bad = TwistedRBO(T.context, T.T.scale(2))
    report = graph_closure_report(bad)
    assert not report.passed
    assert report.violations[0].identity == "graph"


@pytest.mark.parametrize("seed", range(4))
def test_induced_structures(seed):
    make = [dim3, heisenberg4][seed % 2]
    T = inverse_operator(seed, make)
    VT = induced_bracket(T)
    assert check_fundamental_identity(VT).passed
    assert check_homomorphism(VT, T.context.algebra, T.T)
    varrho = induced_rep_varrho(T)
    e = [basis_vec(T.d, i) for i in range(T.d)]
    for i, j in itertools.combinations(range(T.d), 2):
        assert coboundary_dT(T, NCochain.from_linear_map(delta(T, e[i], e[j])), varrho).is_zero()


def test_operator_cohomology_dim3():
    T = inverse_operator(0)
    rows = [r.as_tuple() for r in trbo_cohomology_dims(T, 3)]
    assert rows[0][0] == 1
    for r in trbo_cohomology_dims(T, 3):
        assert r.cocycles + r.image == r.cochains
        assert r.coboundaries <= r.cocycles


def test_gauge_transform():
    A = dim3()
    T = inverse_operator(5)
    f = A.ad((1, 0, 0), (0, 1, 0))
    Tf = t_admissible_gauge(T, f)
    assert check_twisted_rbo(Tf).passed
    assert gauge_isomorphism_report(T, f).passed


def test_gauge_rejects_non_cocycle():
    T = inverse_operator(6)
    with pytest.raises(NotACocycleError):
        t_admissible_gauge(T, Matrix.identity(3))


# -- deformations -------------------------------------------------------------------

def operator_residual(ctx, M, u, v, w):
    """lhs - rhs of the operator identity for an arbitrary matrix ``M``."""
    A, rho, Phi = ctx.algebra, ctx.rep, ctx.phi
    Mu, Mv, Mw = M.col(u), M.col(v), M.col(w)
    m = ctx.dimV
    eu, ev, ew = basis_vec(m, u), basis_vec(m, v), basis_vec(m, w)
    inner = vsum((rho.act(Mu, Mv, ew), rho.act(Mv, Mw, eu), rho.act(Mw, Mu, ev), Phi(Mu, Mv, Mw)), m)
    return tuple(a - b for a, b in zip(A.bracket(Mu, Mv, Mw), M.apply(inner)))


def t_coefficients(T, S):
    """Coefficients of t^1..t^4 of the identity at ``T + t S`` by interpolation at t = 0..4."""
    points = range(5)
    samples = {t: {trip: operator_residual(T.context, T.T + S.scale(t), *trip)
                   for trip in itertools.combinations(range(T.dimV), 3)} for t in points}
    # Lagrange basis polynomial coefficients
    coeffs = {k: {} for k in range(5)}
    for t in points:
        poly = [Fraction(1)]
        denom = Fraction(1)
        for s in points:
            if s == t:
                continue
            poly = [a - s * b for a, b in zip([Fraction(0)] + poly, poly + [Fraction(0)])]
            denom *= t - s
        for k in range(5):
            for trip, r in samples[t].items():
                acc = coeffs[k].setdefault(trip, [Fraction(0)] * len(r))
                for i, x in enumerate(r):
                    acc[i] += poly[k] * x / denom
    return {k: all(all(x == 0 for x in v) for v in coeffs[k].values()) for k in range(1, 5)}


@given(seeds)
def test_deformation_identities_match_polynomial_expansion(seed):
    rng = random.Random(seed)
    T = inverse_operator(seed % 7)
    choice = seed % 3
    if choice == 0:
        S = rand_matrix(rng, 3, 3)
    elif choice == 1:
        S = delta(T, rand_vector(rng, 3), rand_vector(rng, 3))
    else:
        S = Matrix.zeros(3, 3)
    report = check_deformation(T, S)
    zero = t_coefficients(T, S)
    for k, name in enumerate(("t1", "t2", "t3", "t4"), start=1):
        assert (report.notes["identities"][name] == "pass") == zero[k]


def test_trivial_directions_are_closed():
    T = inverse_operator(4)
    S = delta(T, (1, 0, 2), (0, 1, 1))
    assert check_deformation(T, S).notes["closed_in_complex"]


@pytest.mark.parametrize("seed", range(5))
def test_equivalent_deformations(seed):
    T, S1, S2, (x, y) = deformation_pair(random.Random(seed))
    assert check_deformation(T, S1).passed and check_deformation(T, S2).passed
    assert check_deformation_equivalence(T, S1, S2, x, y)
    assert S1 - S2 == delta(T, x, y)
    phi, psi = equivalence_pair(T, x, y)
    assert check_trbo_homomorphism(phi, psi, deformed_operator(T, S1), deformed_operator(T, S2),
                                   order=1)


def test_inequivalent_pair_reported():
    T, S1, S2, (x, y) = deformation_pair(random.Random(9))
    assert not check_deformation_equivalence(T, S1, S1.scale(2), x, y)


def test_equivalence_requires_deformations():
    T = inverse_operator(0)
    with pytest.raises(PreconditionError):
        check_deformation_equivalence(T, rand_matrix(random.Random(1), 3, 3), Matrix.zeros(3, 3),
                                      (1, 0, 0), (0, 1, 0))


@pytest.mark.parametrize("seed", range(3))
def test_operator_differential_squares_to_zero(seed):
    from trilie.repcoh import CochainSpace
    T = inverse_operator(seed, heisenberg4)
    varrho = induced_rep_varrho(T)
    rng = random.Random(seed)
    for degree in (1, 2):
        n = CochainSpace(T.dimV, T.d, degree).dim
        f = NCochain(degree, T.dimV, T.d, tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)))
        assert coboundary_dT(T, coboundary_dT(T, f, varrho), varrho).is_zero()
