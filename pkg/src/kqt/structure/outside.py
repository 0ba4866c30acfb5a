"""The vertices off the frame: the I/W/B partition and the rules it obeys."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from ..digraph import Digraph, iter_bits
from ..errors import StructuralViolation, UsageError
from .classify import BIPARTITE, SEMICOMPLETE, classify_induced
from .frame import ShortestPathFrame, outside_vertices
from .report import Report, fmt_arc
from .semicomplete import cycle_rotation_step


@dataclass(frozen=True)
class OutsidePartition:
    """``I`` sends arcs only into the frame, ``W`` only receives from it, ``B`` does both.

    ``I1``/``I2`` are the members of ``I`` that dominate all of
    ``E(P)``/``O(P)`` with no arc back; ``W1``/``W2`` dually; ``B1``/``B2``
    are the members of ``B`` adjacent to ``E(P)``/``O(P)``; ``I_tilde`` is
    the part of ``I`` receiving an arc from ``B`` or ``W``.
    """

    I: frozenset[int]
    W: frozenset[int]
    B: frozenset[int]
    I1: frozenset[int]
    I2: frozenset[int]
    W1: frozenset[int]
    W2: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]
    I_tilde: frozenset[int]

    CELLS = ("I", "W", "B", "I1", "I2", "W1", "W2", "B1", "B2", "I_tilde")

    def sizes(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in self.CELLS}

    def to_dict(self) -> dict[str, list[int]]:
        return {name: sorted(getattr(self, name)) for name in self.CELLS}


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def partition_outside(d: Digraph, frame: ShortestPathFrame) -> OutsidePartition:
    """Split ``V(D) - V(P)`` into ``I``, ``W``, ``B`` and their refinement cells.

    Raises :class:`StructuralViolation` if an outside vertex is adjacent
    to no frame vertex.
    """
    pmask = frame.mask
    emask = _mask(frame.even_class)
    omask = _mask(frame.odd_class)
    cells: dict[str, set[int]] = {name: set() for name in OutsidePartition.CELLS}
    for w in outside_vertices(d, frame):
        to_p = d.out[w] & pmask
        from_p = d.inn[w] & pmask
        if not to_p and not from_p:
            raise StructuralViolation("lemma8", None, f"vertex {w} is not adjacent to V(P)")
        if not from_p:
            cells["I"].add(w)
            if to_p & emask == emask:
                cells["I1"].add(w)
            if to_p & omask == omask:
                cells["I2"].add(w)
        elif not to_p:
            cells["W"].add(w)
            if from_p & emask == emask:
                cells["W1"].add(w)
            if from_p & omask == omask:
                cells["W2"].add(w)
        else:
            cells["B"].add(w)
            if (to_p | from_p) & emask:
                cells["B1"].add(w)
            if (to_p | from_p) & omask:
                cells["B2"].add(w)
    feeders = _mask(cells["B"] | cells["W"])
    cells["I_tilde"] = {w for w in cells["I"] if d.inn[w] & feeders}
    return OutsidePartition(**{name: frozenset(v) for name, v in cells.items()})


def _require_frame_kind(d: Digraph, frame: ShortestPathFrame, kind: str) -> None:
    verdict = classify_induced(d, frame.path)
    if verdict.kind != kind:
        raise UsageError(f"requires a {kind} frame, got {verdict}")


def check_rotation(d: Digraph, frame: ShortestPathFrame, part: OutsidePartition) -> Report:
    """Rotation by ``k-1`` around the frame cycle for every arc between ``I``/``W`` and the frame."""
    report = Report("lemma9")
    cycle = frame.path
    witness = None
    steps = 0
    try:
        for w in sorted(part.I):
            for i, v in enumerate(cycle):
                if d.has_arc(w, v):
                    cycle_rotation_step(d, cycle, frame.k, w, i, "out")
                    steps += 1
        for w in sorted(part.W):
            for i, v in enumerate(cycle):
                if d.has_arc(v, w):
                    cycle_rotation_step(d, cycle, frame.k, w, i, "in")
                    steps += 1
    except StructuralViolation as exc:
        witness = fmt_arc(exc.arc) if exc.arc else str(exc)
    report.add("lemma9:rotation", witness is None, witness)
    report.notes["steps"] = steps
    return report


def _maps_to(d: Digraph, sources: Iterable[int], targets: Iterable[int]) -> tuple[int, int] | None:
    """First pair breaking ``sources |-> targets`` (missing arc or arc back)."""
    for a in sources:
        for b in targets:
            if not d.has_arc(a, b) or d.has_arc(b, a):
                return (a, b)
    return None


def check_lemma10(d: Digraph, frame: ShortestPathFrame, part: OutsidePartition) -> Report:
    """Domination patterns of ``I``, ``W`` and ``B`` against a bipartite frame.

    For ``B`` the thresholds are taken as the largest class index that
    ``x`` dominates and the smallest one dominating ``x``; the observed
    values are recorded under ``notes["thresholds"]``.
    """
    _require_frame_kind(d, frame, BIPARTITE)
    report = Report("lemma10")
    k, top, x = frame.k, frame.top, frame.x
    emask = _mask(frame.even_class)
    omask = _mask(frame.odd_class)

    bad = None
    for w in sorted(part.I):
        to_p = d.out[w]
        for cls in (emask, omask):
            if to_p & cls and to_p & cls != cls:
                bad = f"{w} misses {fmt_arc((w, next(iter_bits(cls & ~to_p))))}"
                break
        if bad:
            break
    report.add("lemma10.1:I", bad is None, bad)

    bad = None
    for w in sorted(part.W):
        from_p = d.inn[w]
        for cls in (emask, omask):
            if from_p & cls and from_p & cls != cls:
                bad = f"{w} misses {fmt_arc((next(iter_bits(cls & ~from_p)), w))}"
                break
        if bad:
            break
    report.add("lemma10.2:W", bad is None, bad)

    bad = None
    thresholds = []
    # (parity, smallest allowed t, largest allowed s)
    for parity, lo, hi in ((1, 3, k), (0, 2, k - 1)):
        idx = list(range(parity, top + 1, 2))
        for w in sorted(part.B):
            touching = [i for i in idx if d.adj(w, x(i))]
            if not touching or len(touching) == len(idx):
                continue
            dominated = [i for i in idx if d.has_arc(w, x(i))]
            dominating = [i for i in idx if d.has_arc(x(i), w)]
            t = max(dominated) if dominated else None
            s = min(dominating) if dominating else None
            thresholds.append({"vertex": w, "parity": "odd" if parity else "even", "t": t, "s": s})
            if bad is not None:
                continue
            if t is None or s is None or not lo <= t < s <= hi:
                bad = f"{w}: t={t}, s={s}"
                continue
            upper = [x(i) for i in idx if i >= s]
            lower = [x(i) for i in idx if i <= t]
            broken = _maps_to(d, upper, [w]) or _maps_to(d, [w], lower)
            if broken:
                bad = f"{w}: pattern broken at {fmt_arc(broken)}"
    report.add("lemma10.3:B", bad is None, bad)
    report.notes["thresholds"] = thresholds
    report.notes["t_min"] = min((r["t"] for r in thresholds if r["t"] is not None), default=None)
    report.notes["s_max"] = max((r["s"] for r in thresholds if r["s"] is not None), default=None)

    covered = part.I1 | part.I2 | part.W1 | part.W2 | part.B1 | part.B2
    stray = sorted((part.I | part.W | part.B) - covered)
    report.add("lemma10:cells-cover", not stray, ",".join(map(str, stray)))
    return report


def check_lemma11(d: Digraph, frame: ShortestPathFrame, part: OutsidePartition) -> Report:
    """Against a semicomplete frame: threshold pattern of ``B``; ``I |-> V(P)`` and ``V(P) |-> W``."""
    _require_frame_kind(d, frame, SEMICOMPLETE)
    report = Report("lemma11")
    k, top, x = frame.k, frame.top, frame.x
    pmask = frame.mask
    bad = None
    thresholds = []
    for w in sorted(part.B):
        if d.adj_row(w) & pmask == pmask:
            continue
        t = max(i for i in range(top + 1) if d.has_arc(w, x(i)))
        s = min(i for i in range(top + 1) if d.has_arc(x(i), w))
        thresholds.append({"vertex": w, "t": t, "s": s})
        if bad is not None:
            continue
        if not 4 <= t + 1 < s <= k - 1:
            bad = f"{w}: t={t}, s={s}"
            continue
        broken = _maps_to(d, [x(i) for i in range(s, top + 1)], [w]) or _maps_to(
            d, [w], [x(i) for i in range(t + 1)]
        )
        if broken:
            bad = f"{w}: pattern broken at {fmt_arc(broken)}"
    report.add("lemma11:B", bad is None, bad)
    report.notes["thresholds"] = thresholds

    broken = _maps_to(d, sorted(part.I), frame.path)
    report.add("lemma12:I", broken is None, broken and fmt_arc(broken))
    broken = _maps_to(d, frame.path, sorted(part.W))
    report.add("lemma12:W", broken is None, broken and fmt_arc(broken))
    return report


def _arc_between(d: Digraph, sources: Iterable[int], targets: Iterable[int]) -> tuple[int, int] | None:
    tmask = _mask(targets)
    for a in sorted(sources):
        hit = d.out[a] & tmask
        if hit:
            return (a, (hit & -hit).bit_length() - 1)
    return None


def _non_adjacent(d: Digraph, xs: Iterable[int], ys: Iterable[int]) -> tuple[int, int] | None:
    ys = sorted(ys)
    for a in sorted(xs):
        for b in ys:
            if a != b and not d.adj(a, b):
                return (a, b)
    return None


def _first(*candidates: tuple[int, int] | None) -> str | None:
    for c in candidates:
        if c is not None:
            return fmt_arc(c)
    return None


def check_outside_claims(d: Digraph, frame: ShortestPathFrame, part: OutsidePartition) -> Report:
    """The arc-set and adjacency claims behind the outside classification (bipartite frame).

    Emits eleven checks; with every cell empty they all pass vacuously.
    """
    _require_frame_kind(d, frame, BIPARTITE)
    report = Report("outside_claims")
    I1, I2, W1, W2, B1, B2 = part.I1, part.I2, part.W1, part.W2, part.B1, part.B2
    Is, Ws, Bs = {1: I1, 2: I2}, {1: W1, 2: W2}, {1: B1, 2: B2}

    common = sorted(B1 & B2)
    report.add("lemma14:B1-B2-disjoint", not common, ",".join(map(str, common)))
    report.add("lemma14:B1-B2-adjacent", (w := _non_adjacent(d, B1, B2)) is None, w and fmt_arc(w))
    report.add(
        "lemma14:B-independent",
        (w := _first(_arc_between(d, B1, B1), _arc_between(d, B2, B2))) is None,
        w,
    )
    report.add(
        "claim1:cross-adjacency",
        (
            w := _first(
                *(_non_adjacent(d, Is[i], Bs[3 - i] | Ws[3 - i]) for i in (1, 2)),
                *(_non_adjacent(d, Ws[i], Bs[3 - i]) for i in (1, 2)),
            )
        )
        is None,
        w,
    )
    report.add("claim4:(W,I)", (w := _arc_between(d, part.W, part.I)) is None, w and fmt_arc(w))
    report.add(
        "claim5:(B_i,I_i),(W_i,B_i)",
        (
            w := _first(
                *(_arc_between(d, Bs[i], Is[i]) for i in (1, 2)),
                *(_arc_between(d, Ws[i], Bs[i]) for i in (1, 2)),
            )
        )
        is None,
        w,
    )
    overlap = sorted((I1 & I2) | (W1 & W2))
    report.add("claim6:I1-I2,W1-W2-disjoint", not overlap, ",".join(map(str, overlap)))
    report.add(
        "claim7:I_i,W_i-independent",
        (w := _first(*(_arc_between(d, c, c) for c in (I1, I2, W1, W2)))) is None,
        w,
    )
    report.add(
        "claim8:(I_i,B_i),(B_i,W_i)",
        (
            w := _first(
                *(_arc_between(d, Is[i], Bs[i]) for i in (1, 2)),
                *(_arc_between(d, Bs[i], Ws[i]) for i in (1, 2)),
            )
        )
        is None,
        w,
    )
    report.add(
        "claim10:(I_i,W_i)",
        (w := _first(*(_arc_between(d, Is[i], Ws[i]) for i in (1, 2)))) is None,
        w,
    )
    report.add(
        "claim11:I_tilde-adjacency",
        (w := _first(*(_non_adjacent(d, part.I_tilde & Is[i], Is[3 - i]) for i in (1, 2)))) is None,
        w,
    )
    return report
