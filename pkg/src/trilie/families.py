"""Closed-form infinite families: Laurent polynomials and the w_infinity algebra.

Elements are sparse dicts ``index -> coefficient``. Laurent indices are
integers ``l`` (for ``t^l``); w_infinity indices are pairs ``(m, a)``.

Windows
-------
A window is a finite box of indices. Brackets leaving the box are tagged as
escaping. For Laurent windows with ``lo >= 1`` and w_infinity windows with
``m, a >= 0`` the generators above the box span an ideal of the subalgebra
they live in (every bracket strictly raises the grading), so setting
escaping brackets to zero gives a genuine quotient 3-Lie algebra on which the
Reynolds operator still acts diagonally.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .exactlin import ZERO, Matrix, det3
from .report import Report, TrilieError, timed
from .threelie import ThreeLieAlgebra, verify

Element = dict


class UndefinedDenominatorError(TrilieError, ValueError):
    """A sampled index triple hits a vanishing denominator of ``R``."""


def laurent_bracket(l: int, m: int, n: int) -> tuple[Fraction, int]:
    sgn = lambda k: -1 if k % 2 else 1
    coeff = det3((sgn(l), 1, l), (sgn(m), 1, m), (sgn(n), 1, n))
    return Fraction(coeff), l + m + n - 1


def omega_bracket(x: tuple[int, int], y: tuple[int, int], z: tuple[int, int]) -> tuple[Fraction, tuple[int, int]]:
    (m, a), (n, b), (p, c) = x, y, z
    coeff = det3((1, m, a), (1, n, b), (1, p, c))
    return Fraction(coeff), (m + n + p, a + b + c + 1)


@dataclass(frozen=True)
class Family:
    name: str
    bracket_index: Callable
    r_denominator: Callable[[Hashable], int]

    def R_scale(self, idx) -> Fraction:
        den = self.r_denominator(idx)
        if den == 0:
            raise UndefinedDenominatorError(f"{self.name}: R undefined at {idx}")
        return Fraction(1, den)

    def bracket(self, x: Element, y: Element, z: Element) -> Element:
        out: dict = {}
        for (i, a), (j, b), (k, c) in itertools.product(x.items(), y.items(), z.items()):
            coeff, idx = self.bracket_index(i, j, k)
            if coeff:
                out[idx] = out.get(idx, ZERO) + a * b * c * coeff
        return {k: v for k, v in out.items() if v}

    def R(self, x: Element) -> Element:
        return {k: v * self.R_scale(k) for k, v in x.items() if v}

    def r_bracket_index(self, i, j, k) -> tuple[Fraction, Hashable]:
        """Closed form of ``[x,y,z]_R`` on generators."""
        coeff, idx = self.bracket_index(i, j, k)
        factor = Fraction(self.r_denominator(idx)) * self.R_scale(i) * self.R_scale(j) * self.R_scale(k)
        return coeff * factor, idx

    def require_defined(self, triple: Sequence) -> None:
        """Denominators of ``R`` at the inputs and at the bracket's grade."""
        for idx in triple:
            self.R_scale(idx)
        _, out = self.bracket_index(*triple)
        if self.r_denominator(out) == 0:
            raise UndefinedDenominatorError(f"{self.name}: R undefined at output {out} of {tuple(triple)}")

    def is_defined(self, triple: Sequence) -> bool:
        try:
            self.require_defined(triple)
            return True
        except UndefinedDenominatorError:
            return False


LAURENT = Family("laurent", laurent_bracket, lambda l: l)
OMEGA = Family("omega", omega_bracket, lambda x: x[0] + x[1] + 1)

FAMILIES = {"laurent": LAURENT, "omega": OMEGA}


def _add(*elements: Element) -> Element:
    out: dict = {}
    for e in elements:
        for k, v in e.items():
            out[k] = out.get(k, ZERO) + v
    return {k: v for k, v in out.items() if v}


def _neg(x: Element) -> Element:
    return {k: -v for k, v in x.items()}


def _fmt(triple) -> str:
    return "(" + ",".join(str(i) for i in triple) + ")"


def check_reynolds_sampled(family: Family, samples: Iterable[Sequence]) -> Report:
    """Reynolds identity on generator triples, evaluated on sparse elements.

    Every triple must have all denominators defined, otherwise
    :class:`UndefinedDenominatorError` is raised before anything is checked.
    """
    samples = [tuple(s) for s in samples]
    for s in samples:
        family.require_defined(s)
    br, R = family.bracket, family.R
    report = Report(f"{family.name} Reynolds (sampled)")
    with timed(report):
        for s in samples:
            x, y, z = ({i: Fraction(1)} for i in s)
            Rx, Ry, Rz = R(x), R(y), R(z)
            lhs = br(Rx, Ry, Rz)
            rhs = R(_add(br(Rx, Ry, z), br(x, Ry, Rz), br(Rx, y, Rz), _neg(br(Rx, Ry, Rz))))
            keys = sorted(set(lhs) | set(rhs))
            report.compare(_fmt(s), [lhs.get(k, ZERO) for k in keys],
                           [rhs.get(k, ZERO) for k in keys])
    return report


def laurent_samples(lo: int = -5, hi: int = 6) -> list[tuple[int, int, int]]:
    return [t for t in itertools.permutations(range(lo, hi + 1), 3) if LAURENT.is_defined(t)]


def omega_samples(lo: int = -3, hi: int = 3) -> list[tuple]:
    gens = [(m, a) for m in range(lo, hi + 1) for a in range(lo, hi + 1)]
    return [t for t in itertools.combinations(gens, 3) if OMEGA.is_defined(t)]


# -- windows -------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """Inclusive bounds; Laurent uses ``(lo, hi)``, w_infinity ``((m_lo, m_hi), (a_lo, a_hi))``."""

    family: str
    bounds: tuple

    def indices(self) -> list:
        if self.family == "laurent":
            lo, hi = self.bounds
            out = list(range(lo, hi + 1))
        else:
            (m0, m1), (a0, a1) = self.bounds
            out = [(m, a) for m in range(m0, m1 + 1) for a in range(a0, a1 + 1)]
        if not out:
            raise ValueError("empty window")
        return out

    @property
    def closed_above(self) -> bool:
        """Whether truncation is a quotient of a subalgebra (see module doc)."""
        if self.family == "laurent":
            return self.bounds[0] >= 1
        (m0, _), (a0, _) = self.bounds
        return m0 >= 0 and a0 >= 0


@dataclass
class PartialAlgebra:
    window: Window
    basis: list
    entries: dict = field(default_factory=dict)  # canonical position triple -> (coeff, index, in_window)

    @property
    def family(self) -> Family:
        return FAMILIES[self.window.family]

    @property
    def position(self) -> dict:
        return {idx: p for p, idx in enumerate(self.basis)}

    def escaping(self) -> list[tuple]:
        return [t for t, (c, _, inside) in self.entries.items() if c and not inside]

    def truncated(self) -> ThreeLieAlgebra:
        """Escaping brackets set to zero."""
        d = len(self.basis)
        pos = self.position
        structure = {}
        for t, (c, idx, inside) in self.entries.items():
            if c and inside:
                v = [ZERO] * d
                v[pos[idx]] = c
                structure[t] = v
        return ThreeLieAlgebra(d, structure, name=f"{self.window.family}{self.window.bounds}")

    def quotient_algebra(self) -> ThreeLieAlgebra:
        if not self.window.closed_above:
            raise TrilieError("window truncation is not a quotient algebra")
        return verify(self.truncated())

    def reynolds_matrix(self) -> Matrix:
        return Matrix.diagonal([self.family.R_scale(i) for i in self.basis])

    def r_bracket_closed_form(self) -> ThreeLieAlgebra:
        """``[.,.,.]_R`` from the closed form, escaping values dropped."""
        d = len(self.basis)
        pos = self.position
        structure = {}
        for (i, j, k) in itertools.combinations(range(d), 3):
            c, idx = self.family.r_bracket_index(self.basis[i], self.basis[j], self.basis[k])
            if c and idx in pos:
                v = [ZERO] * d
                v[pos[idx]] = c
                structure[(i, j, k)] = v
        return ThreeLieAlgebra(d, structure)

    def _br(self, i: int, j: int, k: int):
        """Bracket of basis positions as ``(coeff, position | None)``."""
        if len({i, j, k}) < 3:
            return ZERO, None
        s = sorted((i, j, k))
        c, idx, inside = self.entries[tuple(s)]
        sign = 1 if sum(1 for a, b in itertools.combinations((i, j, k), 2) if a > b) % 2 == 0 else -1
        if not c:
            return ZERO, None
        return sign * c, (self.position[idx] if inside else "out")

    def restricted_fi_report(self, positions: Sequence[int] | None = None) -> Report:
        """Fundamental identity on basis 5-tuples whose intermediates stay in the window.

        ``positions`` limits the tuples to a subset of basis positions.
        Skipped tuples are counted in ``report.notes``.
        """
        d = len(self.basis)
        pos_set = list(range(d)) if positions is None else sorted(positions)
        report = Report(f"restricted FI [{self.window.family} {self.window.bounds}]")
        skipped = 0
        br = self._br
        with timed(report):
            for a, b in itertools.combinations(pos_set, 2):
                for c, e, f in itertools.combinations(pos_set, 3):
                    ok = True
                    lhs: dict = {}
                    rhs: dict = {}

                    def acc(target, coef, p, q, r, slot):
                        nonlocal ok
                        if not coef or p is None:
                            return
                        if p == "out":
                            ok = False
                            return
                        args = [q, r]
                        args.insert(slot, p)
                        c2, p2 = br(*args)
                        if not c2 or p2 is None:
                            return
                        if p2 == "out":
                            ok = False
                            return
                        target[p2] = target.get(p2, ZERO) + coef * c2

                    c1, p1 = br(c, e, f)
                    acc(lhs, c1, p1, a, b, 2)
                    for (cc, pp), (q, r), slot in (
                            (br(a, b, c), (e, f), 0),
                            (br(a, b, e), (c, f), 1),
                            (br(a, b, f), (c, e), 2)):
                        acc(rhs, cc, pp, q, r, slot)
                    if not ok:
                        skipped += 1
                        continue
                    keys = sorted(set(lhs) | set(rhs))
                    report.compare(
                        _fmt(self.basis[x] for x in (a, b, c, e, f)),
                        [lhs.get(k, ZERO) for k in keys], [rhs.get(k, ZERO) for k in keys])
        report.notes["restricted_out"] = skipped
        report.notes["positions"] = [self.basis[p] for p in pos_set]
        return report


def materialize_window(family: str | Family, window) -> PartialAlgebra:
    name = family if isinstance(family, str) else family.name
    w = window if isinstance(window, Window) else Window(name, tuple(window))
    fam = FAMILIES[name]
    basis = w.indices()
    inside = set(basis)
    entries = {}
    for t in itertools.combinations(range(len(basis)), 3):
        c, idx = fam.bracket_index(*(basis[p] for p in t))
        entries[t] = (c, idx, idx in inside)
    return PartialAlgebra(w, basis, entries)


def in_window(family: str, window, triple: Sequence) -> bool:
    fam = FAMILIES[family]
    w = window if isinstance(window, Window) else Window(family, tuple(window))
    c, idx = fam.bracket_index(*triple)
    return idx in set(w.indices())


__all__ = [
    "laurent_bracket", "omega_bracket", "Family", "LAURENT", "OMEGA", "FAMILIES",
    "check_reynolds_sampled", "laurent_samples", "omega_samples", "Window",
    "PartialAlgebra", "materialize_window", "in_window", "UndefinedDenominatorError",
]
