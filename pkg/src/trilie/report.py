"""Check reports shared by every identity checker."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from .exactlin import rat_str


class TrilieError(Exception):
    """Base class for precondition failures raised by constructors."""


class UnverifiedInputError(TrilieError):
    """A constructor received a structure whose checker has not passed."""


class DimensionMismatchError(TrilieError, ValueError):
    pass


class IdentityViolation(TrilieError):
    """Raised by ``verify`` helpers; carries the failing report."""

    def __init__(self, report: "Report"):
        self.report = report
        super().__init__(f"{report.subject}: {len(report.violations)} violation(s)")


@dataclass
class Violation:
    where: str
    lhs: tuple
    rhs: tuple
    identity: str = ""

    def to_dict(self) -> dict[str, Any]:
        d = {"tuple": self.where,
             "lhs": [rat_str(x) for x in self.lhs],
             "rhs": [rat_str(x) for x in self.rhs]}
        if self.identity:
            d["identity"] = self.identity
        return d


@dataclass
class Report:
    subject: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    elapsed: float = 0.0
    error: str | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        if self.error is not None:
            return "error"
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def __bool__(self) -> bool:
        return self.passed

    def compare(self, where: str, lhs, rhs, identity: str = "") -> None:
        self.checked += 1
        lhs = tuple(lhs)
        rhs = tuple(rhs)
        if lhs != rhs:
            self.violations.append(Violation(where, lhs, rhs, identity))

    def merge(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.checked += other.checked
        self.elapsed += other.elapsed
        if other.error and not self.error:
            self.error = other.error
        return self

    def to_dict(self) -> dict[str, Any]:
        d = {"subject": self.subject,
             "outcome": self.outcome,
             "violations": [v.to_dict() for v in self.violations],
             "stats": {"tuples_checked": self.checked,
                       "elapsed_s": round(self.elapsed, 6)}}
        if self.error:
            d["error"] = self.error
        if self.notes:
            d["notes"] = self.notes
        return d

    def summary(self) -> str:
        s = f"{self.subject}: {self.outcome.upper()} ({self.checked} tuples"
        if self.violations:
            s += f", {len(self.violations)} violations"
        return s + f", {self.elapsed:.3f}s)"


class timed:
    """Context manager filling ``report.elapsed``."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed += time.perf_counter() - self._t0
        return False


def fmt_tuple(*idx: int) -> str:
    """1-based rendering of basis index tuples, e.g. ``(e1,e2,e3)``."""
    return "(" + ",".join(f"e{i + 1}" for i in idx) + ")"
