import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import seeds
from trilie.exactlin import Matrix, naive_rank
from trilie.fixtures import (dim3, heisenberg4, rand_matrix, rand_two_cochain, rand_vector,
                             simple4)
from trilie.report import IdentityViolation, UnverifiedInputError
from trilie.repcoh import (CochainSpace, NCochain, NotACocycleError, Representation,
                           ResourceCapError, TwoCochain, adjoint, alternating_part,
                           bracket_cochain, check_2cocycle, check_representation, coboundary,
                           coboundary_matrix, cohomology_dims, is_alternating,
                           semidirect_gauge, twisted_semidirect, verify_representation,
                           zero_representation)
from trilie.threelie import check_derivation, check_homomorphism, verify


def rand_cochain(rng, rep, degree):
    space = CochainSpace(rep.algebra.dim, rep.dimV, degree)
    return NCochain(degree, space.d, space.dimV,
                    tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(space.dim)))


@pytest.mark.parametrize("make", [dim3, heisenberg4, simple4])
def test_adjoint_is_representation(make):
    assert check_representation(adjoint(make())).passed


def test_broken_representation_reported():
    A = dim3()
    rep = Representation(A, 1, {(0, 1): Matrix.from_rows([[1]])})
    report = check_representation(rep)
    assert not report.passed
    with pytest.raises(IdentityViolation):
        verify_representation(rep)


def test_rho_extends_bilinearly():
    rep = adjoint(simple4())
    x, y, v = (1, 2, 0, 0), (0, 1, 0, 3), (1, 1, 1, 1)
    expected = simple4().bracket(x, y, v)
    assert rep.act(x, y, v) == expected


def test_cochain_space_dimensions():
    assert CochainSpace(3, 3, 1).dim == 9
    assert CochainSpace(3, 3, 2).dim == 27
    assert CochainSpace(4, 2, 3).dim == 6 * 6 * 4 * 2


@given(seeds, st.sampled_from([1, 2]))
def test_d_squared_is_zero(seed, degree):
    rng = random.Random(seed)
    rep = adjoint(dim3())
    f = rand_cochain(rng, rep, degree)
    assert coboundary(rep, coboundary(rep, f)).is_zero()


def test_d_squared_is_zero_on_heisenberg_degree_3():
    rep = adjoint(heisenberg4())
    f = rand_cochain(random.Random(0), rep, 3)
    assert coboundary(rep, coboundary(rep, f)).is_zero()


def test_coboundary_matrix_matches_direct_evaluation():
    rng = random.Random(4)
    rep = adjoint(dim3())
    for degree in (1, 2):
        f = rand_cochain(rng, rep, degree)
        assert coboundary_matrix(rep, degree).apply(f.values) == coboundary(rep, f).values


@given(seeds)
def test_closed_one_cochains_are_derivations(seed):
    rng = random.Random(seed)
    A = dim3()
    rep = adjoint(A)
    D = A.ad(rand_vector(rng, 3), rand_vector(rng, 3)) if rng.random() < 0.5 else rand_matrix(rng, 3, 3)
    closed = coboundary(rep, NCochain.from_linear_map(D)).is_zero()
    assert closed == check_derivation(A, D)


@given(seeds)
def test_alternating_cochains_agree_with_cocycle_check(seed):
    rng = random.Random(seed)
    rep = adjoint(dim3())
    phi = rand_two_cochain(rng, 3, 3) if rng.random() < 0.5 else bracket_cochain(dim3(), rng.randint(-2, 2))
    closed = coboundary(rep, phi.to_ncochain()).is_zero()
    assert closed == check_2cocycle(rep, phi).passed


def test_exact_cochains_are_alternating_cocycles():
    rng = random.Random(8)
    rep = adjoint(simple4())
    df = coboundary(rep, NCochain.from_linear_map(rand_matrix(rng, 4, 4)))
    assert is_alternating(df)
    assert check_2cocycle(rep, alternating_part(df)).passed


def test_twisted_semidirect_product():
    rep = adjoint(dim3())
    S = twisted_semidirect(rep, bracket_cochain(dim3(), -1))
    assert S.dim == 6
    verify(S)
    rep4 = adjoint(heisenberg4())
    bad = TwoCochain(4, 4, {(0, 1, 3): (1, 0, 0, 0)})
    assert not check_2cocycle(rep4, bad).passed
    with pytest.raises(NotACocycleError):
        twisted_semidirect(rep4, bad)


def test_semidirect_needs_verified_rep():
    rep = Representation(dim3(), 3, adjoint(dim3()).rho)
    with pytest.raises(UnverifiedInputError):
        twisted_semidirect(rep, bracket_cochain(dim3(), -1))


def test_gauge_map_between_cohomologous_twists():
    rng = random.Random(1)
    rep = adjoint(dim3())
    phi = bracket_cochain(dim3(), -1)
    f = rand_matrix(rng, 3, 3)
    df = alternating_part(coboundary(rep, NCochain.from_linear_map(f)))
    source = twisted_semidirect(rep, phi + df)
    target = twisted_semidirect(rep, phi)
    assert check_homomorphism(source, target, semidirect_gauge(3, f))


def test_dim3_cohomology():
    rows = [r.as_tuple() for r in cohomology_dims(adjoint(dim3()), 3)]
    assert rows == [(1, 6, 0, 6), (2, 6, 3, 3), (3, 24, 21, 3)]


def test_heisenberg_cohomology():
    rows = [r.as_tuple() for r in cohomology_dims(adjoint(heisenberg4()), 2)]
    assert rows == [(1, 12, 0, 12), (2, 27, 4, 23)]


def test_cohomology_against_dense_ranks():
    rep = adjoint(dim3())
    rows = cohomology_dims(rep, 2)
    for r in rows:
        M = coboundary_matrix(rep, r.degree)
        assert r.cochains - naive_rank(M) == r.cocycles


def test_first_cohomology_counts_derivations():
    A = heisenberg4()
    d = A.dim
    derivations = 0
    basis = [Matrix.from_rows([[int((i, j) == (a, b)) for j in range(d)] for i in range(d)])
             for a, b in itertools.product(range(d), repeat=2)]
    # derivations of the Heisenberg algebra: rank of the defect map on matrix units
    e = [tuple(int(i == k) for i in range(d)) for k in range(d)]
    cols = []
    for D in basis:
        col = []
        for t in itertools.combinations(range(d), 3):
            x, y, z = (e[i] for i in t)
            lhs = D.apply(A.bracket(x, y, z))
            rhs = [sum(v) for v in zip(A.bracket(D.apply(x), y, z), A.bracket(x, D.apply(y), z),
                                       A.bracket(x, y, D.apply(z)))]
            col.extend(l - r for l, r in zip(lhs, rhs))
        cols.append(col)
    derivations = d * d - naive_rank(Matrix.from_columns(cols, len(cols[0])))
    assert cohomology_dims(adjoint(A), 1)[0].cohomology == derivations


def test_resource_caps():
    from trilie.threelie import abelian
    rep = zero_representation(verify(abelian(7)), 1)
    rep = verify_representation(rep)
    with pytest.raises(ResourceCapError):
        cohomology_dims(rep, 1)
    with pytest.raises(ResourceCapError):
        cohomology_dims(adjoint(dim3()), 5)


def test_parallel_ranks_match_serial():
    rep = adjoint(dim3())
    assert cohomology_dims(rep, 3, workers=2) == cohomology_dims(rep, 3, workers=1)
