"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class KqtError(Exception):
    """Base class for all package errors."""


class UsageError(KqtError, ValueError):
    """An operation was called outside its documented preconditions."""


class ParseError(KqtError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HypothesisFailure(KqtError):
    """The input digraph does not satisfy the structural hypotheses.

    ``requirement`` names the failed hypothesis, e.g. ``"strong"``,
    ``"k-quasi-transitive"`` or ``"diameter < k+2"``.
    """

    def __init__(self, requirement: str, detail: str = "") -> None:
        self.requirement = requirement
        self.detail = detail
        msg = f"hypothesis failed: {requirement}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class StructuralViolation(KqtError):
    """A construction needed an arc that the digraph does not contain.

    On a legal frame instance this never happens; it signals either an
    illegal input or a counterexample.
    """

    def __init__(self, lemma: str, arc: tuple[int, int] | None = None, detail: str = "") -> None:
        self.lemma = lemma
        self.arc = arc
        self.detail = detail
        parts = [f"{lemma}: structural hypothesis violated"]
        if arc is not None:
            parts.append(f"missing arc {arc[0]}->{arc[1]}")
        if detail:
            parts.append(detail)
        super().__init__("; ".join(parts))
