import random

import pytest
from hypothesis import given

from strategies import seeds
from trilie.exactlin import Matrix, SingularMatrixError
from trilie.fixtures import dim3, heisenberg4, rand_matrix, rand_vector, simple4
from trilie.nsnr import (L_representation, NotADerivationError, NotNijenhuisError,
                         NotReynoldsError, NSThreeLie, check_nijenhuis, check_ns_axioms,
                         check_ns_homomorphism, check_reynolds, deformed_bracket,
                         derivation_from_reynolds, minor, minor_square, minor_table,
                         nijenhuis_trbo, ns_from_nijenhuis, ns_from_trbo, ns_nijenhuis_direct,
                         phi_N, reynolds_bracket, reynolds_from_derivation, rho_N, subadjacent,
                         trbo_from_reynolds, verify_ns)
from trilie.repcoh import adjoint, check_2cocycle, check_representation
from trilie.report import IdentityViolation, UnverifiedInputError
from trilie.threelie import check_fundamental_identity, verify
from trilie.trbo import check_twisted_rbo, induced_bracket, trbo_from_inverse, verify_trbo


@given(seeds)
def test_every_operator_on_dim3_is_nijenhuis(seed):
    assert check_nijenhuis(dim3(), rand_matrix(random.Random(seed), 3, 3))


@given(seeds)
def test_nijenhuis_chain(seed):
    A = dim3()
    N = rand_matrix(random.Random(seed), 3, 3)
    assert check_fundamental_identity(deformed_bracket(A, N)).passed
    rho = rho_N(A, N)
    assert check_representation(rho).passed
    assert check_2cocycle(rho, phi_N(A, N)).passed
    assert check_twisted_rbo(nijenhuis_trbo(A, N)).passed


def test_random_operator_on_semidirect_product_is_not_nijenhuis():
    from trilie.repcoh import bracket_cochain, twisted_semidirect
    S = verify(twisted_semidirect(adjoint(dim3()), bracket_cochain(dim3(), -1)))
    rng = random.Random(0)
    N = rand_matrix(rng, 6, 6)
    assert not check_nijenhuis(S, N)
    with pytest.raises(NotNijenhuisError):
        deformed_bracket(S, N)


def test_identity_and_scalars_are_nijenhuis():
    A = simple4()
    assert check_nijenhuis(A, Matrix.identity(4))
    assert check_nijenhuis(A, Matrix.identity(4).scale(3))


@given(seeds)
def test_direct_formula_agrees(seed):
    A = dim3()
    N = rand_matrix(random.Random(seed), 3, 3)
    assert ns_from_nijenhuis(A, N) == ns_nijenhuis_direct(A, N)


@given(seeds)
def test_minor_table(seed):
    N = rand_matrix(random.Random(seed), 3, 3)
    ns = ns_from_nijenhuis(dim3(), N)
    for key, value in minor_table(N).items():
        assert ns.curly_basis(*key) == value
    assert ns.square[(0, 1, 2)] == minor_square(N)


def test_listed_minor_entries():
    N = Matrix.from_rows([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
    ns = ns_from_nijenhuis(dim3(), N)
    M = lambda a, b: minor(N, a - 1, b - 1)
    assert ns.curly_basis(0, 1, 0)[0] == M(1, 3)
    assert ns.curly_basis(0, 2, 0)[0] == M(1, 2)
    assert ns.curly_basis(1, 2, 1)[0] == -M(2, 1)
    assert ns.curly_basis(2, 1, 2)[0] == -M(3, 1)
    assert M(1, 1) == 1 * 0 - 4 * 6


def test_ns_instances():
    rng = random.Random(3)
    ops = [verify_trbo(trbo_from_inverse(adjoint(A), m))
           for A, m in ((dim3(), Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 2, 1]])),
                        (heisenberg4(), Matrix.from_rows([[1, 0, 0, 1], [0, 2, 0, 0],
                                                          [1, 0, 1, 0], [0, 0, 0, 1]])))]
    ops.append(nijenhuis_trbo(dim3(), rand_matrix(rng, 3, 3)))
    ops.append(trbo_from_reynolds(dim3(), Matrix.identity(3).scale(2)))
    for T in ops:
        ns = ns_from_trbo(T)
        assert check_ns_axioms(ns).passed
        sub = subadjacent(ns)
        assert sub.structure == induced_bracket(T).structure
        assert check_representation(L_representation(ns)).passed


def test_ns_axioms_catch_a_perturbation():
    ns = ns_from_nijenhuis(dim3(), Matrix.from_rows([[1, 2, 0], [0, 1, 1], [1, 0, 1]]))
    curly = dict(ns.curly)
    curly[(0, 1, 2)] = (1, 1, 1)
    bad = NSThreeLie(3, curly, ns.square)
    assert not check_ns_axioms(bad).passed
    with pytest.raises(IdentityViolation):
        verify_ns(bad)


def test_subadjacent_needs_verified_ns():
    with pytest.raises(UnverifiedInputError):
        subadjacent(NSThreeLie(3, {}, {}))


def test_ns_homomorphism():
    ns = ns_from_nijenhuis(dim3(), Matrix.from_rows([[1, 2, 0], [0, 1, 1], [1, 0, 1]]))
    assert check_ns_homomorphism(Matrix.identity(3), ns, ns)
    assert not check_ns_homomorphism(Matrix.identity(3).scale(2), ns, ns)


# -- Reynolds ----------------------------------------------------------------------

def test_scalar_reynolds_operators():
    A = dim3()
    assert not check_reynolds(A, Matrix.identity(3))
    assert check_reynolds(A, Matrix.identity(3).scale(2))
    with pytest.raises(NotReynoldsError):
        reynolds_bracket(A, Matrix.identity(3))


def test_reynolds_from_inner_derivation():
    A = dim3()
    D = A.ad((1, 0, 0), (0, 1, 0))
    R = reynolds_from_derivation(A, D)
    assert R == Matrix.from_rows([[2, 0, -4], [0, 2, 0], [0, 0, 2]])
    assert derivation_from_reynolds(A, R) == D


@given(seeds)
def test_derivation_round_trip(seed):
    rng = random.Random(seed)
    A = [dim3, heisenberg4, simple4][seed % 3]()
    D = A.ad(rand_vector(rng, A.dim, 2, 1), rand_vector(rng, A.dim, 2, 1))
    try:
        R = reynolds_from_derivation(A, D)
    except SingularMatrixError:
        return
    assert check_reynolds(A, R)
    assert derivation_from_reynolds(A, R) == D


def test_non_derivation_rejected():
    with pytest.raises(NotADerivationError):
        reynolds_from_derivation(dim3(), Matrix.identity(3))


def test_reynolds_bracket_is_induced_bracket():
    A = dim3()
    R = Matrix.identity(3).scale(2)
    assert reynolds_bracket(A, R).structure == induced_bracket(trbo_from_reynolds(A, R)).structure


def test_trivial_nijenhuis_ns_structures():
    A = dim3()
    zero = ns_from_nijenhuis(A, Matrix.zeros(3, 3))
    assert not zero.curly and not zero.square
    ident = ns_from_nijenhuis(A, Matrix.identity(3))
    assert ident.curly_basis(0, 1, 2) == A.basis_bracket(0, 1, 2)
    assert ident.square[(0, 1, 2)] == tuple(-2 * c for c in A.basis_bracket(0, 1, 2))
