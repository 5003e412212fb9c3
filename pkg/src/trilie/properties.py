"""Seeded randomized property runs, shared by the CLI and the scripts."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .exactlin import Matrix, SingularMatrixError, invert
from .fixtures import (deformation_pair, dim3, rand_invertible, rand_matrix,
                       rand_vector)
from .nsnr import (check_nijenhuis, derivation_from_reynolds, reynolds_report,
                   reynolds_from_derivation)
from .repcoh import NCochain, adjoint, coboundary
from .report import Report, timed
from .trbo import (check_deformation, check_twisted_rbo, deformation_equivalence_report,
                   graph_closure_check, trbo_from_inverse)


def _rand_cochain(rng: random.Random, rep, degree: int) -> NCochain:
    z = NCochain.zero(degree, rep.algebra.dim, rep.dimV)
    return NCochain(degree, z.d, z.dimV, tuple(Fraction(rng.randint(-4, 4)) for _ in z.values))


def dd_zero(rng: random.Random, trials: int) -> Report:
    rep = adjoint(dim3())
    report = Report("d o d = 0")
    with timed(report):
        for t in range(trials):
            for degree in (1, 2):
                f = _rand_cochain(rng, rep, degree)
                ddf = coboundary(rep, coboundary(rep, f))
                report.compare(f"trial {t} degree {degree}", ddf.values,
                               (0,) * len(ddf.values))
    return report


def trbo_graph(rng: random.Random, trials: int) -> Report:
    """``T = f^-1`` is a twisted operator and its graph closes; both agree."""
    rep = adjoint(dim3())
    report = Report("inverse operators and graphs")
    with timed(report):
        for t in range(trials):
            T = trbo_from_inverse(rep, rand_invertible(rng, 3))
            report.compare(f"trial {t}", [check_twisted_rbo(T).passed, graph_closure_check(T)],
                           [True, True])
    return report


def nijenhuis(rng: random.Random, trials: int) -> Report:
    A = dim3()
    report = Report("random operators on dim3 are Nijenhuis")
    with timed(report):
        for t in range(trials):
            report.compare(f"trial {t}", [check_nijenhuis(A, rand_matrix(rng, 3, 3))], [True])
    return report


def random_derivation(rng: random.Random, A) -> Matrix:
    """A random combination of inner derivations ``ad_{x,y}``."""
    D = Matrix.zeros(A.dim, A.dim)
    for _ in range(2):
        D = D + A.ad(rand_vector(rng, A.dim, 3, 2), rand_vector(rng, A.dim, 3, 2))
    return D


def reynolds_roundtrip(rng: random.Random, trials: int) -> Report:
    A = dim3()
    half = Matrix.identity(3).scale(Fraction(1, 2))
    report = Report("derivation -> Reynolds -> derivation")
    with timed(report):
        done = 0
        while done < trials:
            D = random_derivation(rng, A)
            try:
                invert(D + half)
            except SingularMatrixError:
                continue
            R = reynolds_from_derivation(A, D)
            report.merge(reynolds_report(A, R))
            back = derivation_from_reynolds(A, R)
            report.compare(f"trial {done}", [back[i, j] for i in range(3) for j in range(3)],
                           [D[i, j] for i in range(3) for j in range(3)], identity="round trip")
            done += 1
    return report


def deformation(rng: random.Random, trials: int) -> Report:
    report = Report("equivalent deformation pairs")
    with timed(report):
        for _ in range(trials):
            T, S1, S2, (x, y) = deformation_pair(rng)
            report.merge(check_deformation(T, S1))
            report.merge(check_deformation(T, S2))
            report.merge(deformation_equivalence_report(T, S1, S2, x, y))
    return report


PROPERTIES: dict[str, Callable[[random.Random, int], Report]] = {
    "dd": dd_zero,
    "trbo-graph": trbo_graph,
    "nijenhuis": nijenhuis,
    "reynolds-roundtrip": reynolds_roundtrip,
    "deformation": deformation,
}
