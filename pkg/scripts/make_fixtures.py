"""Regenerate the JSON fixtures under fixtures/ (dim3.alg and broken.alg are hand-written)."""
from __future__ import annotations

import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from trilie import formats
from trilie.exactlin import Matrix
from trilie.fixtures import deformation_pair, dim3, heisenberg4
from trilie.nsnr import ns_from_nijenhuis, trbo_from_reynolds
from trilie.repcoh import adjoint, bracket_cochain
from trilie.trbo import t_admissible_gauge, trbo_from_inverse, verify_trbo

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"


def dump(name: str, doc: dict) -> None:
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", OUT / name)


def main() -> None:
    OUT.mkdir(exist_ok=True)
    A = dim3()
    dump("dim3_adjoint.rep", {"type": "rep", "algebra": "dim3.alg", "rho": "adjoint"})
    dump("heis4.alg", formats.algebra_to(heisenberg4()))
    dump("heis4_adjoint.rep", {"type": "rep", "algebra": "heis4.alg", "rho": "adjoint"})
    dump("dim3_minus_bracket.coc", formats.cochain_to(bracket_cochain(A, -1)))

    N = Matrix.from_rows([[1, 2, 0], [0, Fraction(1, 2), -1], [3, 0, 1]])
    dump("dim3_nijenhuis.mat", formats.matrix_to(N))
    dump("dim3_reynolds.mat", formats.matrix_to(Matrix.identity(3).scale(2)))
    dump("dim3_derivation.mat", formats.matrix_to(A.ad((1, 0, 0), (0, 1, 0))))
    dump("dim3_ns.ns", formats.ns_to(ns_from_nijenhuis(A, N)))

    f = Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 2, 1]])
    T = verify_trbo(trbo_from_inverse(adjoint(A), f))
    doc = formats.trbo_to(T)
    doc["representation"] = "dim3_adjoint.rep"
    dump("dim3_inverse.trbo", doc)
    dump("dim3_gauge.mat", formats.matrix_to(A.ad((1, 0, 0), (0, 1, 0))))
    t_admissible_gauge(T, A.ad((1, 0, 0), (0, 1, 0)))

    R = trbo_from_reynolds(A, Matrix.identity(3).scale(2))
    doc = formats.trbo_to(R)
    doc["representation"] = "dim3_adjoint.rep"
    doc["cocycle"] = "minus-bracket"
    dump("dim3_reynolds.trbo", doc)

    T, S1, S2, (x, y) = deformation_pair(random.Random(7))
    op = {"type": "trbo", "representation": "heis4_adjoint.rep",
          "T": formats.matrix_to(T.T)["matrix"]}
    dump("heis4.deform", {"type": "deformation", "operator": op,
                          "frakT": formats.matrix_to(S1)["matrix"],
                          "frakT2": formats.matrix_to(S2)["matrix"],
                          "X": [formats.vector_to(x), formats.vector_to(y)]})


if __name__ == "__main__":
    main()
