"""The shortest-path frame ``x_0 ... x_{k+2}`` and the arcs it forces.

All index arguments (``s``, ``t``, ``i``) are positions on the frame path;
vertex ids of the host digraph appear only in return values and witnesses.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from ..digraph import Digraph, Path, bfs_distances, is_strong, iter_bits, validate_path
from ..engine import find_violation
from ..errors import HypothesisFailure, StructuralViolation, UsageError
from .report import Report, fmt_arc, fmt_path


def check_odd_k(k: int) -> None:
    if not isinstance(k, int) or k < 5 or k % 2 == 0:
        raise UsageError(f"k must be an odd integer >= 5, got {k!r}")


@dataclass(frozen=True)
class ShortestPathFrame:
    """A shortest ``(u, v)``-path of length ``k+2`` in the host digraph."""

    k: int
    path: Path

    def __post_init__(self) -> None:
        if len(self.path) != self.k + 3:
            raise UsageError(f"frame path needs {self.k + 3} vertices, got {len(self.path)}")

    @property
    def u(self) -> int:
        return self.path[0]

    @property
    def v(self) -> int:
        return self.path[-1]

    @property
    def top(self) -> int:
        """Index of the last frame vertex, ``k+2``."""
        return self.k + 2

    def x(self, i: int) -> int:
        return self.path[i]

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.path)}

    @cached_property
    def odd_class(self) -> frozenset[int]:
        return frozenset(self.path[1::2])

    @cached_property
    def even_class(self) -> frozenset[int]:
        return frozenset(self.path[0::2])

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.path)

    @cached_property
    def mask(self) -> int:
        m = 0
        for v in self.path:
            m |= 1 << v
        return m

    def validate(self, d: Digraph) -> bool:
        """Path valid in ``d`` and ``d(u, v) = k+2``."""
        return validate_path(d, self.path) and bfs_distances(d, self.u)[self.v] == self.k + 2


def check_hypotheses(d: Digraph, k: int) -> None:
    """Raise :class:`HypothesisFailure` unless ``d`` is strong and k-qt."""
    check_odd_k(k)
    if d.n == 0 or not is_strong(d):
        raise HypothesisFailure("strong")
    violation = find_violation(d, k)
    if violation is not None:
        raise HypothesisFailure("k-quasi-transitive", f"violation {fmt_path(violation.path)}")


def find_frame(d: Digraph, k: int) -> ShortestPathFrame | None:
    """Frame from the lexicographically smallest pair at distance ``k+2``.

    The path is recovered backwards from ``v``, choosing at each step the
    smallest-id predecessor one level closer to ``u``.  Returns ``None``
    when no pair is at distance ``k+2`` (diameter below ``k+2``).
    """
    check_hypotheses(d, k)
    return locate_frame(d, k)


def locate_frame(d: Digraph, k: int) -> ShortestPathFrame | None:
    """:func:`find_frame` without the hypothesis checks."""
    check_odd_k(k)
    length = k + 2
    for u in range(d.n):
        dist = bfs_distances(d, u)
        for v in range(d.n):
            if dist[v] == length:
                return ShortestPathFrame(k, _backtrack(d, dist, v))
    return None


def _backtrack(d: Digraph, dist: list, v: int) -> Path:
    path = [v]
    while dist[path[-1]] != 0:
        w = path[-1]
        level = dist[w] - 1
        path.append(next(p for p in iter_bits(d.inn[w]) if dist[p] == level))
    return tuple(reversed(path))


def frame_from_path(d: Digraph, k: int, path: Sequence[int]) -> ShortestPathFrame:
    """Wrap an explicit path as a frame after checking it is a shortest path."""
    check_odd_k(k)
    frame = ShortestPathFrame(k, tuple(path))
    if not frame.validate(d):
        raise UsageError("path is not a shortest (u,v)-path of length k+2")
    return frame


# -- forced arcs ------------------------------------------------------------------


def proposition2_arcs(frame: ShortestPathFrame) -> list[tuple[int, int]]:
    """Index pairs ``(a, b)`` of the arcs ``x_a -> x_b`` forced by minimality of the path."""
    k = frame.k
    arcs = [(k + 2, k - i) for i in range(1, k + 1, 2)]
    arcs += [(k + 1, k - i) for i in range(2, k + 1, 2)]
    return arcs


def check_proposition2(d: Digraph, frame: ShortestPathFrame) -> Report:
    report = Report("proposition2")
    for a, b in proposition2_arcs(frame):
        arc = (frame.x(a), frame.x(b))
        report.add(f"prop2:x{a}->x{b}", d.has_arc(*arc), fmt_arc(arc))
    return report


def check_bipartite_subdigraph(d: Digraph, frame: ShortestPathFrame) -> Report:
    """Every ``E(P) x O(P)`` pair adjacent; every long backward cross-parity arc present."""
    report = Report("bipartite_subdigraph")
    x = frame.x
    top = frame.top
    missing_pair = None
    pairs = 0
    for a in range(0, top + 1, 2):
        for b in range(1, top + 1, 2):
            pairs += 1
            if missing_pair is None and not d.adj(x(a), x(b)):
                missing_pair = (x(a), x(b))
    report.add("lemma3.1:cross-adjacency", missing_pair is None, missing_pair and fmt_arc(missing_pair))
    missing_arc = None
    for alpha in range(top + 1):
        for beta in range(alpha - 3, -1, -2):
            if not d.has_arc(x(alpha), x(beta)):
                missing_arc = (x(alpha), x(beta))
                break
        if missing_arc:
            break
    report.add("lemma3.1:backward-arcs", missing_arc is None, missing_arc and fmt_arc(missing_arc))
    report.notes["cross_pairs"] = pairs
    return report


# -- witness paths ------------------------------------------------------------------


class WitnessPath(tuple):
    """A path (tuple of vertex ids) remembering how it was obtained.

    ``strategy`` is ``"construction"`` for the explicit index formulas,
    ``"search"`` for the bounded-search fallback, and ``"prepend+..."``
    for same-parity witnesses built on a different-parity one.
    """

    strategy: str

    def __new__(cls, vertices: Iterable[int], strategy: str) -> WitnessPath:
        obj = super().__new__(cls, vertices)
        obj.strategy = strategy
        return obj

    @property
    def length(self) -> int:
        return len(self) - 1


def _seq(*ranges: range) -> list[int]:
    out: list[int] = []
    for r in ranges:
        out.extend(r)
    return out


def _diff_parity_indices(k: int, s: int, t: int) -> list[int] | None:
    """Index sequence of the explicit length-``k-2`` construction, if it applies."""
    gap = s - t
    if gap == 1:
        p = k + 1 if s == k + 1 else k - 1
        if not (s <= p and p - k + 2 <= t):
            return None
        return _seq(range(s, p + 1), range(p - k + 2, t + 1))
    if s > k + 1 or t < 1:
        return None
    if gap == 3:
        return _seq(range(s, k + 2), range(1, t + 1))
    return _seq(range(s, k + 2), range(t + 2, s - 1), range(1, t + 1))


def _missing(d: Digraph, vertices: Sequence[int]) -> tuple[int, int] | None:
    for a, b in zip(vertices, vertices[1:]):
        if not d.has_arc(a, b):
            return (a, b)
    return None


def bounded_path_search(
    d: Digraph,
    allowed: int,
    source: int,
    target: int,
    length: int,
    rank: dict[int, int],
) -> Path | None:
    """Simple ``(source, target)``-path with exactly ``length`` arcs inside ``allowed``.

    Depth-first; successors are tried in decreasing ``rank``.
    """
    if length < 1 or not (allowed >> source & 1 and allowed >> target & 1) or source == target:
        return None
    out = d.out
    path = [source]

    def extend(v: int, used: int, remaining: int) -> bool:
        if remaining == 1:
            return bool(out[v] >> target & 1)
        cands = out[v] & allowed & ~used & ~(1 << target)
        for w in sorted(iter_bits(cands), key=rank.__getitem__, reverse=True):
            path.append(w)
            if extend(w, used | 1 << w, remaining - 1):
                return True
            path.pop()
        return False

    if extend(source, 1 << source, length):
        return (*path, target)
    return None


def search_in_frame(
    d: Digraph,
    frame: ShortestPathFrame,
    s: int,
    t: int,
    length: int,
    avoid: Iterable[int] = (),
) -> Path | None:
    """Search ``D[V(P)]`` for an ``(x_s, x_t)``-path of exactly ``length`` arcs.

    Successors are tried from the highest frame index down, the direction
    the explicit constructions travel along the path.
    """
    allowed = frame.mask
    for i in avoid:
        allowed &= ~(1 << frame.x(i))
    return bounded_path_search(d, allowed, frame.x(s), frame.x(t), length, frame.index)


def _check_pair(frame: ShortestPathFrame, s: int, t: int) -> None:
    top = frame.top
    if not (isinstance(s, int) and isinstance(t, int) and 0 <= t < s <= top):
        raise UsageError(f"need 0 <= t < s <= {top}, got s={s}, t={t}")


def witness_path_diff_parity(d: Digraph, frame: ShortestPathFrame, s: int, t: int) -> WitnessPath:
    """Path of exactly ``k-2`` arcs from ``x_s`` to ``x_t`` inside ``V(P)`` (``s > t``, parities differ)."""
    _check_pair(frame, s, t)
    if (s - t) % 2 == 0:
        raise UsageError("s and t must have different parity")
    return _diff_parity(d, frame, s, t, avoid=())


def _diff_parity(d: Digraph, frame: ShortestPathFrame, s: int, t: int, avoid: tuple[int, ...]) -> WitnessPath:
    k = frame.k
    indices = _diff_parity_indices(k, s, t)
    if indices is not None and not set(indices) & set(avoid):
        vertices = [frame.x(i) for i in indices]
        gap = _missing(d, vertices)
        if gap is None:
            return WitnessPath(vertices, "construction")
        if s % 2 == 0:
            raise StructuralViolation("lemma3.2", gap, f"s={s}, t={t}")
    elif s % 2 == 0:
        raise StructuralViolation("lemma3.2", None, f"no construction for s={s}, t={t}")
    found = search_in_frame(d, frame, s, t, k - 2, avoid)
    if found is None:
        raise StructuralViolation("lemma3.2", None, f"no path of length {k - 2} from x{s} to x{t}")
    return WitnessPath(found, "search")


def witness_path_same_parity(d: Digraph, frame: ShortestPathFrame, s: int, t: int) -> WitnessPath:
    """Path of exactly ``k-1`` arcs from ``x_s`` to ``x_t`` inside ``V(P)`` (``s > t``, same parity)."""
    _check_pair(frame, s, t)
    if (s - t) % 2:
        raise UsageError("s and t must have the same parity")
    k = frame.k
    top = frame.top
    if s < top:
        tail = _diff_parity(d, frame, s + 1, t, avoid=(s,))
        return WitnessPath((frame.x(s), *tail), "prepend+" + tail.strategy)
    if t == k:
        indices = _seq(range(top, top + 1), range(2, k + 1))
    else:
        indices = _seq(range(top, top + 1), range(t + 1, k), range(1, t + 1))
    vertices = [frame.x(i) for i in indices]
    gap = _missing(d, vertices)
    if gap is not None:
        raise StructuralViolation("lemma3.3", gap, f"s={s}, t={t}")
    return WitnessPath(vertices, "construction")


def witness_path(d: Digraph, frame: ShortestPathFrame, s: int, t: int) -> WitnessPath:
    """Dispatch on parity: length ``k-2`` if parities differ, ``k-1`` otherwise."""
    if (s - t) % 2:
        return witness_path_diff_parity(d, frame, s, t)
    return witness_path_same_parity(d, frame, s, t)


def outside_vertices(d: Digraph, frame: ShortestPathFrame) -> list[int]:
    return [w for w in range(d.n) if w not in frame.vertex_set]


def check_outside_forcing(d: Digraph, frame: ShortestPathFrame) -> Report:
    """Adjacencies forced on outside vertices by the length ``k-2`` / ``k-1`` witnesses."""
    report = Report("outside_forcing")
    top = frame.top
    x = frame.x
    outside = outside_vertices(d, frame)
    into = {w: [i for i in range(top + 1) if d.has_arc(w, x(i))] for w in outside}
    outof = {w: [i for i in range(top + 1) if d.has_arc(x(i), w)] for w in outside}

    bad_pair = None
    for y in outside:
        for w in outside:
            if w == y or d.adj(w, y):
                continue
            hit = next(((s, t) for s in into[y] for t in outof[w] if s > t and (s - t) % 2), None)
            if hit is not None:
                bad_pair = f"{y}->x{hit[0]},x{hit[1]}->{w}"
                break
        if bad_pair:
            break
    report.add("lemma3.2:outside-pairs", bad_pair is None, bad_pair)

    bad_out = None
    for w in outside:
        for s in into[w]:
            for t in range(s - 2, -1, -2):
                if not d.adj(w, x(t)) or (s >= t + 4 and not d.has_arc(w, x(t))):
                    bad_out = f"{w}->x{s}:x{t}"
                    break
            if bad_out:
                break
        if bad_out:
            break
    report.add("lemma3.3:out-arcs", bad_out is None, bad_out)

    bad_in = None
    for w in outside:
        for t in outof[w]:
            for s in range(t + 2, top + 1, 2):
                if not d.adj(w, x(s)) or (s >= t + 4 and not d.has_arc(x(s), w)):
                    bad_in = f"x{t}->{w}:x{s}"
                    break
            if bad_in:
                break
        if bad_in:
            break
    report.add("lemma3.3:in-arcs", bad_in is None, bad_in)
    report.notes["outside"] = len(outside)
    return report


# -- same-parity trigger ------------------------------------------------------------


def semicomplete_trigger(d: Digraph, frame: ShortestPathFrame) -> tuple[int, int] | None:
    """First adjacent same-parity index pair ``(s, t)``, ``s > t``, or ``None``.

    Odd indices are scanned before even ones; within a class pairs are
    taken in lexicographic order of ``(t, s)``.
    """
    top = frame.top
    x = frame.x
    for parity in (1, 0):
        idx = range(parity, top + 1, 2)
        for t in idx:
            for s in idx:
                if s > t and d.adj(x(s), x(t)):
                    return (s, t)
    return None


def check_lemma4(d: Digraph, frame: ShortestPathFrame) -> Report:
    """When a trigger exists: ``x_s -> x_t`` for all ``t+1 < s`` and ``D[V(P)]`` semicomplete."""
    report = Report("lemma4")
    trigger = semicomplete_trigger(d, frame)
    report.notes["trigger"] = trigger
    if trigger is None:
        return report
    x = frame.x
    top = frame.top
    missing = next(
        ((x(s), x(t)) for s in range(top + 1) for t in range(s - 1) if not d.has_arc(x(s), x(t))),
        None,
    )
    report.add("lemma4:backward-arcs", missing is None, missing and fmt_arc(missing))
    nonadj = next(
        ((x(a), x(b)) for a in range(top + 1) for b in range(a + 1, top + 1) if not d.adj(x(a), x(b))),
        None,
    )
    report.add("lemma4:semicomplete", nonadj is None, nonadj and fmt_arc(nonadj))
    return report
