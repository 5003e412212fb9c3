"""Print cohomology dimensions for the bundled algebras and a few twisted operators.

    python scripts/cohomology_table.py --nmax 3
"""
from __future__ import annotations

import argparse
import random

from trilie.fixtures import named_algebras, rand_invertible
from trilie.repcoh import adjoint, cohomology_dims
from trilie.trbo import trbo_cohomology_dims, trbo_from_inverse, verify_trbo


def show(title: str, rows) -> None:
    print(title)
    print(f"  {'n':>2} {'dim C':>7} {'Z':>6} {'B':>6} {'H':>6}")
    for r in rows:
        print(f"  {r.degree:>2} {r.cochains:>7} {r.cocycles:>6} {r.coboundaries:>6} {r.cohomology:>6}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for name, A in named_algebras().items():
        rep = adjoint(A)
        show(f"{name}, adjoint", cohomology_dims(rep, args.nmax))
        T = verify_trbo(trbo_from_inverse(rep, rand_invertible(rng, A.dim)))
        show(f"{name}, T = f^-1 (seed {args.seed})", trbo_cohomology_dims(T, args.nmax))


if __name__ == "__main__":
    main()
