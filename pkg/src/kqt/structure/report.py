"""Check results and their line-oriented serialisation."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any


def fmt_arc(arc: Sequence[int]) -> str:
    return f"{arc[0]}->{arc[1]}"


def fmt_path(path: Sequence[int]) -> str:
    return "-".join(map(str, path))


@dataclass(frozen=True)
class Check:
    """One named pass/fail verdict with an optional witness on failure."""

    name: str
    passed: bool
    witness: str | None = None

    def line(self) -> str:
        text = f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'}"
        if self.witness is not None:
            text += f" witness={self.witness}"
        return text

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class Report:
    """A group of checks produced by one verification operation.

    ``notes`` carries observations that are not verdicts (counts, observed
    threshold indices, which witness strategy was used).
    """

    name: str
    checks: list[Check] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: str | None = None) -> Check:
        check = Check(name, passed, None if passed else witness)
        self.checks.append(check)
        return check

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": self.notes,
        }


def first_failure(pairs: Iterable[tuple[bool, str]]) -> tuple[bool, str | None]:
    """Fold ``(ok, witness)`` items into a single verdict keeping the first bad witness."""
    for ok, witness in pairs:
        if not ok:
            return False, witness
    return True, None
