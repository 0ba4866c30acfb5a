"""Deciding k-quasi-transitivity, closing digraphs under it, and producing instances."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from . import _search
from .digraph import INFINITY, Arc, Digraph, Path, bfs_distances, directed_path, is_strong, iter_bits
from .errors import KqtError, UsageError

PRNG_ID = "numpy.random.PCG64"
MAX_ENUMERATION_ORDER = 5


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide seeded generator (identified by :data:`PRNG_ID`)."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Violation:
    """A simple path of exactly ``k`` arcs with non-adjacent endpoints."""

    path: Path

    @property
    def endpoints(self) -> Arc:
        return (self.path[0], self.path[-1])

    def __str__(self) -> str:
        return " ".join(map(str, self.path))


@dataclass(frozen=True)
class ClosurePolicy:
    """How :func:`kqt_closure` orients the arc it adds for each violation.

    ``mode`` is ``"backward"`` (always ``x_k -> x_0``), ``"distance"``
    (keep ``d(u, v) == target_distance``, preferring ``x_k -> x_0``) or
    ``"random"`` (orientation drawn from a generator seeded with ``seed``).
    """

    mode: str = "backward"
    u: int = 0
    v: int = 0
    target_distance: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("backward", "distance", "random"):
            raise UsageError(f"unknown closure mode {self.mode!r}")
        if self.mode == "distance" and self.target_distance < 1:
            raise UsageError("target_distance must be at least 1")

    @classmethod
    def backward_only(cls) -> ClosurePolicy:
        return cls("backward")

    @classmethod
    def distance_preserving(cls, u: int, v: int, target_distance: int) -> ClosurePolicy:
        return cls("distance", u=u, v=v, target_distance=target_distance)

    @classmethod
    def random_orientation(cls, seed: int) -> ClosurePolicy:
        return cls("random", seed=seed)


class ClosureFailure(KqtError):
    """Both orientations of a violation's arc would shrink the protected distance."""

    def __init__(self, violation: Violation, requirement: str) -> None:
        self.violation = violation
        self.requirement = requirement
        super().__init__(f"closure failed: {requirement} at violation {violation}")

    def to_line(self) -> str:
        return f"FAILURE requirement={self.requirement} violation={self.violation}"


class GenerationFailure(KqtError):
    """A generated candidate did not meet the frame-instance requirements."""

    def __init__(self, requirement: str, seed: int, violation: Violation | None = None) -> None:
        self.requirement = requirement
        self.seed = seed
        self.violation = violation
        msg = f"generation failed (seed={seed}): {requirement}"
        if violation is not None:
            msg += f" at violation {violation}"
        super().__init__(msg)

    def to_line(self) -> str:
        line = f"FAILURE seed={self.seed} requirement={self.requirement}"
        if self.violation is not None:
            line += f" violation={self.violation}"
        return line


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise UsageError(f"k must be an integer >= 2, got {k!r}")


def find_violation(d: Digraph, k: int) -> Violation | None:
    """Lexicographically first violating path, or ``None`` if ``d`` is k-qt."""
    _check_k(k)
    path = _search.first_violation(d.out, d.inn, k)
    return None if path is None else Violation(path)


def is_k_quasi_transitive(d: Digraph, k: int) -> bool:
    return find_violation(d, k) is None


def _shrinks(dist_from_u: list, dist_to_v: list, p: int, q: int, target: int) -> bool:
    """Would arc ``p -> q`` create a ``(u, v)``-path shorter than ``target``?"""
    a, b = dist_from_u[p], dist_to_v[q]
    if a is INFINITY or b is INFINITY:
        return False
    return a + 1 + b < target


class _Distances:
    """Distances from ``u`` and to ``v`` over mutable adjacency rows."""

    def __init__(self, out: list[int], inn: list[int], u: int, v: int) -> None:
        self.out, self.inn, self.u, self.v = out, inn, u, v
        self.refresh()

    def refresh(self) -> None:
        self.from_u = bfs_distances(Digraph.from_rows(self.out), self.u)
        self.to_v = bfs_distances(Digraph.from_rows(self.inn), self.v)


def kqt_closure(d: Digraph, k: int, policy: ClosurePolicy | None = None) -> Digraph:
    """Add arcs until ``d`` is k-quasi-transitive.

    Works in passes.  Each pass walks the violations of the digraph as it
    stood at the start of the pass in lexicographic order; a violation
    whose endpoints have meanwhile become adjacent is skipped, otherwise
    one arc joining its endpoints is added, oriented by ``policy``.
    Passes repeat until one adds nothing.

    Raises :class:`ClosureFailure` if a distance-preserving policy meets a
    violation whose arc shrinks ``d(u, v)`` in both orientations.
    """
    _check_k(k)
    policy = policy or ClosurePolicy.backward_only()
    out = list(d.out)
    inn = list(d.inn)
    adj = [o | i for o, i in zip(out, inn)]
    dist = None
    rng = None
    if policy.mode == "distance":
        for w in (policy.u, policy.v):
            if not 0 <= w < d.n:
                raise UsageError(f"vertex {w} out of range")
        dist = _Distances(out, inn, policy.u, policy.v)
        if dist.from_u[policy.v] != policy.target_distance:
            raise UsageError(
                f"d({policy.u},{policy.v}) = {dist.from_u[policy.v]}, expected {policy.target_distance}"
            )
    elif policy.mode == "random":
        rng = make_rng(policy.seed)

    while True:
        snapshot = tuple(out)
        added = 0
        for path in _search.iter_violations(snapshot, adj, k):
            first, last = path[0], path[-1]
            if policy.mode == "backward":
                arc = (last, first)
            elif policy.mode == "random":
                arc = (last, first) if rng.random() < 0.5 else (first, last)
            else:
                t = policy.target_distance
                if not _shrinks(dist.from_u, dist.to_v, last, first, t):
                    arc = (last, first)
                elif not _shrinks(dist.from_u, dist.to_v, first, last, t):
                    arc = (first, last)
                else:
                    raise ClosureFailure(Violation(path), f"d({policy.u},{policy.v})={t}")
            p, q = arc
            out[p] |= 1 << q
            inn[q] |= 1 << p
            adj[p] |= 1 << q
            adj[q] |= 1 << p
            added += 1
            if dist is not None:
                dist.refresh()
        if not added:
            return Digraph.from_rows(out)


OUTSIDE_MODES = ("random", "clone")


def generate_frame_instance(
    k: int, extra_vertices: int, arc_density: float, seed: int, outside: str = "random"
) -> Digraph:
    """Random strong k-qt digraph in which ``0 -> 1 -> ... -> k+2`` is a shortest path.

    Vertices ``0..k+2`` carry the path, the remaining ``extra_vertices`` lie
    outside it.  Two seeding modes:

    ``random``
        every ordered pair other than a forward chord of the path is drawn
        with probability ``arc_density``, one draw per pair in
        lexicographic order.
    ``clone``
        start from the closed bare path; each outside vertex in turn draws
        a path vertex ``x_i`` and a mode (0: copy in- and out-arcs of
        ``x_i``, 1: copy out-arcs only, 2: copy in-arcs only), then pairs
        of outside vertices are drawn with probability ``arc_density``.

    Arcs that would shorten ``d(0, k+2)`` are never seeded.  The result is
    closed with a distance-preserving policy.

    Raises :class:`GenerationFailure` naming the failed requirement.
    """
    if not isinstance(k, int) or k < 5 or k % 2 == 0:
        raise UsageError(f"k must be an odd integer >= 5, got {k!r}")
    if extra_vertices < 0:
        raise UsageError("extra_vertices must be non-negative")
    if not 0.0 <= arc_density <= 1.0:
        raise UsageError("arc_density must lie in [0, 1]")
    if outside not in OUTSIDE_MODES:
        raise UsageError(f"outside must be one of {OUTSIDE_MODES}, got {outside!r}")
    top = k + 2
    n = top + 1 + extra_vertices
    policy = ClosurePolicy.distance_preserving(0, top, top)
    base = directed_path(top + 1)
    if outside == "clone":
        base = kqt_closure(base, k, policy)
    out = list(base.out) + [0] * extra_vertices
    inn = list(base.inn) + [0] * extra_vertices
    dist = _Distances(out, inn, 0, top)
    rng = make_rng(seed)

    def seed_arc(a: int, b: int) -> None:
        if a == b or out[a] >> b & 1 or _shrinks(dist.from_u, dist.to_v, a, b, top):
            return
        out[a] |= 1 << b
        inn[b] |= 1 << a
        dist.refresh()

    if outside == "random":
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                r = rng.random()
                if r >= arc_density or (a <= top and b <= top and b > a):
                    continue
                seed_arc(a, b)
    else:
        for x in range(top + 1, n):
            src = int(rng.integers(0, top + 1))
            mode = int(rng.integers(0, 3))
            if mode != 2:
                for b in iter_bits(base.out[src]):
                    seed_arc(x, b)
            if mode != 1:
                for a in iter_bits(base.inn[src]):
                    seed_arc(a, x)
        for a in range(top + 1, n):
            for b in range(top + 1, n):
                if a != b and rng.random() < arc_density:
                    seed_arc(a, b)

    seeded = Digraph.from_rows(out)
    try:
        g = kqt_closure(seeded, k, policy)
    except ClosureFailure as exc:
        raise GenerationFailure("closure", seed, exc.violation) from exc
    if not is_strong(g):
        raise GenerationFailure("strong", seed)
    if bfs_distances(g, 0)[top] != top:
        raise GenerationFailure(f"d(0,{top})={top}", seed)
    violation = find_violation(g, k)
    if violation is not None:
        raise GenerationFailure("k-quasi-transitive", seed, violation)
    return g


def mirror_frame_instance(d: Digraph, k: int) -> Digraph:
    """Converse of ``d`` relabelled by ``i -> k+2-i`` on ``0..k+2``.

    k-quasi-transitivity and strongness survive reversal, and the reversed
    frame path is again ``0 -> 1 -> ... -> k+2``.
    """
    top = k + 2
    if d.n <= top:
        raise UsageError(f"need at least {top + 1} vertices")

    def relabel(v: int) -> int:
        return top - v if v <= top else v

    return Digraph(d.n, [(relabel(b), relabel(a)) for a, b in d.arcs()])


def enumerate_all_digraphs(n: int) -> Iterator[Digraph]:
    """Every loop-free digraph on ``n`` labelled vertices, by increasing arc bitmask.

    Bit ``i`` of the mask stands for the ``i``-th ordered pair ``(u, v)``,
    ``u != v``, in lexicographic order.
    """
    for rows in iter_digraph_rows(n):
        yield Digraph.from_rows(rows)


def iter_digraph_rows(n: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Adjacency rows of every digraph on ``n`` vertices (see :func:`enumerate_all_digraphs`).

    ``start``/``stop`` restrict the scan to arc bitmasks in ``[start, stop)``.
    """
    if not isinstance(n, int) or n < 0:
        raise UsageError(f"n must be a non-negative integer, got {n!r}")
    if n > MAX_ENUMERATION_ORDER:
        raise UsageError(f"exhaustive enumeration is limited to n <= {MAX_ENUMERATION_ORDER}")
    per_row = max(n - 1, 0)
    # row u owns mask bits [u*(n-1), (u+1)*(n-1)); expand them to vertex bits
    expand: list[list[int]] = []
    for u in range(n):
        targets = [v for v in range(n) if v != u]
        table = []
        for chunk in range(1 << per_row):
            row = 0
            for j, v in enumerate(targets):
                if chunk >> j & 1:
                    row |= 1 << v
            table.append(row)
        expand.append(table)
    low = (1 << per_row) - 1
    total = 1 << (n * per_row)
    stop = total if stop is None else min(stop, total)
    for mask in range(max(start, 0), stop):
        yield tuple(expand[u][mask >> (u * per_row) & low] for u in range(n))


@dataclass
class GenerationStats:
    """Attempt/failure tallies for repeated generation."""

    attempts: int = 0
    failures: dict[str, int] = field(default_factory=dict)

    def record(self, failure: GenerationFailure) -> None:
        self.failures[failure.requirement] = self.failures.get(failure.requirement, 0) + 1
