"""End-to-end structural verification of one digraph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..digraph import Digraph, validate_path
from ..errors import HypothesisFailure, StructuralViolation
from .classify import BIPARTITE, SEMICOMPLETE, StructureClass, classify_frame, classify_outside
from .frame import (
    ShortestPathFrame,
    check_bipartite_subdigraph,
    check_hypotheses,
    check_lemma4,
    check_outside_forcing,
    check_proposition2,
    locate_frame,
    witness_path,
)
from .outside import (
    OutsidePartition,
    check_lemma10,
    check_lemma11,
    check_outside_claims,
    check_rotation,
    partition_outside,
)
from .report import Report, fmt_arc, fmt_path
from .semicomplete import cycle_adjacency_check, propagate_adjacency_check


@dataclass
class Classification:
    """Everything :func:`classify_all` learned about one digraph."""

    frame: ShortestPathFrame
    frame_class: StructureClass
    outside_class: StructureClass | None
    partition: OutsidePartition | None
    reports: list[Report] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def failures(self) -> list[str]:
        return [c.line() for r in self.reports for c in r.failures()]

    def lines(self) -> list[str]:
        return [line for r in self.reports for line in r.lines()]

    def to_dict(self) -> dict[str, Any]:
        return {
            "frame": list(self.frame.path),
            "frame_class": self.frame_class.to_dict(),
            "outside_class": None if self.outside_class is None else self.outside_class.to_dict(),
            "partition": None if self.partition is None else self.partition.to_dict(),
            "passed": self.passed,
            "reports": [r.to_dict() for r in self.reports],
        }


def _guarded(name: str, fn, *args) -> Report:
    """Run a check, turning a structural violation into a failed check."""
    try:
        return fn(*args)
    except StructuralViolation as exc:
        report = Report(name)
        report.add(f"{name}:construction", False, str(exc).replace(" ", "_"))
        return report


def check_witnesses(d: Digraph, frame: ShortestPathFrame) -> Report:
    """Build and validate the length ``k-2``/``k-1`` witness for every pair ``t < s``."""
    report = Report("witnesses")
    k = frame.k
    bad = None
    strategies: dict[str, int] = {}
    for s in range(frame.top + 1):
        for t in range(s):
            want = k - 2 if (s - t) % 2 else k - 1
            try:
                path = witness_path(d, frame, s, t)
            except StructuralViolation as exc:
                bad = bad or f"s={s},t={t}:" + (fmt_arc(exc.arc) if exc.arc else "no-path")
                continue
            strategies[path.strategy] = strategies.get(path.strategy, 0) + 1
            ok = (
                validate_path(d, path)
                and path.length == want
                and path[0] == frame.x(s)
                and path[-1] == frame.x(t)
                and set(path) <= frame.vertex_set
            )
            if not ok and bad is None:
                bad = f"s={s},t={t}:{fmt_path(path)}"
    report.add("lemma3:witness-paths", bad is None, bad)
    report.notes["strategies"] = dict(sorted(strategies.items()))
    return report


def classify_all(d: Digraph, k: int, witnesses: bool = False, strict: bool = True) -> Classification:
    """Check the hypotheses, locate the frame and run every applicable check.

    Raises :class:`HypothesisFailure` when ``d`` is not strong, not k-qt,
    or has no pair at distance ``k+2``.  With ``strict=False`` a k-qt
    failure is recorded as a failed check instead and the structural
    checks still run, so a doctored instance shows which conclusions break.
    """
    reports = []
    try:
        check_hypotheses(d, k)
    except HypothesisFailure as exc:
        if strict or exc.requirement != "k-quasi-transitive":
            raise
        failed = Report("hypotheses")
        failed.add("hypothesis:k-quasi-transitive", False, exc.detail.removeprefix("violation "))
        reports.append(failed)
    frame = locate_frame(d, k)
    if frame is None:
        raise HypothesisFailure("diameter < k+2")
    reports += [
        check_proposition2(d, frame),
        check_bipartite_subdigraph(d, frame),
        _guarded("outside_forcing", check_outside_forcing, d, frame),
        check_lemma4(d, frame),
    ]
    if witnesses:
        reports.append(check_witnesses(d, frame))
    frame_class, frame_report = classify_frame(d, frame)
    reports.append(frame_report)

    if d.has_arc(frame.v, frame.u):
        reports.append(cycle_adjacency_check(d, frame.path, k))
    else:
        missing = Report("lemma8")
        missing.add("lemma8:frame-cycle", False, f"{frame.v}->{frame.u}")
        reports.append(missing)

    try:
        partition = partition_outside(d, frame)
    except StructuralViolation as exc:
        failed = Report("partition")
        failed.add("partition:adjacent-to-frame", False, str(exc).replace(" ", "_"))
        reports.append(failed)
        return Classification(frame, frame_class, None, None, reports)

    reports.append(check_rotation(d, frame, partition))
    if frame_class.kind == SEMICOMPLETE:
        reports.append(_guarded("lemma7", propagate_adjacency_check, d, frame))
        reports.append(check_lemma11(d, frame, partition))
    elif frame_class.kind == BIPARTITE:
        reports.append(check_lemma10(d, frame, partition))
        reports.append(check_outside_claims(d, frame, partition))

    outside_class, outside_report = classify_outside(d, frame, frame_class)
    reports.append(outside_report)
    return Classification(frame, frame_class, outside_class, partition, reports)
