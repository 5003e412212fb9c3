"""Small algebras and random generators used by tests, scripts and the CLI."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exactlin import Matrix, SingularMatrixError, basis_vec, invert
from .repcoh import Representation, TwoCochain, adjoint, zero_representation
from .threelie import ThreeLieAlgebra, abelian, perm_sign, verify


def dim3() -> ThreeLieAlgebra:
    """``[e1, e2, e3] = e1``."""
    return verify(ThreeLieAlgebra(3, {(0, 1, 2): (1, 0, 0)}, name="dim3"))


def broken4() -> ThreeLieAlgebra:
    """The Heisenberg bracket plus ``[e1,e2,e4] = e1``; fails the fundamental identity."""
    return ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1), (0, 1, 3): (1, 0, 0, 0)},
                           name="broken")


def heisenberg4() -> ThreeLieAlgebra:
    """``[e1, e2, e3] = e4``; ``e4`` is central."""
    return verify(ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1)}, name="heis4"))


def simple4() -> ThreeLieAlgebra:
    """The simple 4-dimensional algebra ``[e_i,e_j,e_k] = sum_l eps_ijkl e_l``."""
    structure = {}
    for t in itertools.combinations(range(4), 3):
        (l,) = set(range(4)) - set(t)
        v = [0] * 4
        v[l] = perm_sign(t + (l,))
        structure[t] = v
    return verify(ThreeLieAlgebra(4, structure, name="A4"))


def named_algebras() -> dict[str, ThreeLieAlgebra]:
    return {"dim3": dim3(), "heis4": heisenberg4(), "A4": simple4(),
            "abelian3": verify(abelian(3))}


# -- random data ---------------------------------------------------------------

def rand_rational(rng: random.Random, bound: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_matrix(rng: random.Random, rows: int, cols: int, bound: int = 5,
                den: int = 3, density: float = 1.0) -> Matrix:
    return Matrix.from_rows([[rand_rational(rng, bound, den) if rng.random() < density else 0
                              for _ in range(cols)] for _ in range(rows)], cols)


def rand_invertible(rng: random.Random, n: int, rows: int | None = None, **kw) -> Matrix:
    while True:
        M = rand_matrix(rng, n, n, **kw)
        try:
            invert(M)
            return M
        except SingularMatrixError:
            continue


def rand_vector(rng: random.Random, n: int, bound: int = 5, den: int = 3) -> tuple:
    return tuple(rand_rational(rng, bound, den) for _ in range(n))


def rand_two_cochain(rng: random.Random, d: int, dimV: int, **kw) -> TwoCochain:
    return TwoCochain(d, dimV, {t: rand_vector(rng, dimV, **kw)
                                for t in itertools.combinations(range(d), 3)})


def heisenberg_central_rep() -> Representation:
    return adjoint(heisenberg4())


def deformation_pair(rng: random.Random):
    """``(T, frakT1, frakT2, (x, y))`` on the Heisenberg algebra with its adjoint.

    ``T`` and ``frakT1`` take values in the centre ``span(e4)`` and ``frakT1``
    kills ``e4``; ``frakT2 = frakT1 - delta(x ^ y)``. Both directions are then
    deformations and the pair is equivalent through ``X = x ^ y``.
    """
    from .trbo import TwistedRBO, delta, make_context, verify_trbo
    rep = heisenberg_central_rep()
    ctx = make_context(rep.algebra, rep)
    a = rand_vector(rng, 4)
    b = rand_vector(rng, 3) + (0,)
    T = verify_trbo(TwistedRBO(ctx, Matrix.from_rows([[0] * 4] * 3 + [list(a)], 4)))
    S1 = Matrix.from_rows([[0] * 4] * 3 + [list(b)], 4)
    x, y = rand_vector(rng, 4), rand_vector(rng, 4)
    S2 = S1 - delta(T, x, y)
    return T, S1, S2, (x, y)


def deformation_pairs(rng: random.Random, count: int) -> list:
    return [deformation_pair(rng) for _ in range(count)]


__all__ = ["dim3", "broken4", "heisenberg4", "simple4", "named_algebras",
           "rand_rational", "rand_matrix", "rand_invertible", "rand_vector",
           "rand_two_cochain", "deformation_pair", "deformation_pairs",
           "zero_representation", "basis_vec"]
