"""Back-paths in semicomplete shortest paths, and cycle-based adjacency rules."""

from __future__ import annotations

from collections.abc import Sequence

from ..digraph import Digraph, Path, bfs_distances, validate_cycle, validate_path
from ..errors import StructuralViolation, UsageError
from .frame import ShortestPathFrame, bounded_path_search, outside_vertices
from .report import Report, fmt_path


def _require_semicomplete(d: Digraph, vertices: Sequence[int], what: str) -> None:
    for a in range(len(vertices)):
        for b in range(a + 1, len(vertices)):
            if not d.adj(vertices[a], vertices[b]):
                raise UsageError(f"{what} is not semicomplete: {vertices[a]},{vertices[b]} non-adjacent")


def semicomplete_backpath(d: Digraph, q: Sequence[int], j: int, i: int, p: int) -> Path:
    """Path of exactly ``p`` arcs from ``q[j]`` back to ``q[i]`` inside ``V(Q)``.

    ``q`` must be a shortest path of length ``n >= 4`` whose vertex set
    induces a semicomplete digraph; ``0 <= i < j <= n`` and
    ``2 <= p <= n-1``.  Built by recursion on ``n``: windows of length
    ``n-1`` handle ``p <= n-2``, explicit formulas handle ``p = n-1`` and
    ``j - i = n``, and ``n = 4`` is settled by bounded search.
    """
    q = tuple(q)
    n = len(q) - 1
    if n < 4:
        raise UsageError("the path must have length at least 4")
    if not validate_path(d, q) or bfs_distances(d, q[0])[q[-1]] != n:
        raise UsageError("q is not a shortest path")
    _require_semicomplete(d, q, "D[V(Q)]")
    if not (isinstance(j, int) and isinstance(i, int) and 0 <= i < j <= n):
        raise UsageError(f"need 0 <= i < j <= {n}, got j={j}, i={i}")
    if not 2 <= p <= n - 1:
        raise UsageError(f"need 2 <= p <= {n - 1}, got p={p}")
    indices = _backpath(d, q, 0, n, j, i, p)
    path = tuple(q[a] for a in indices)
    for a, b in zip(path, path[1:]):
        if not d.has_arc(a, b):
            raise StructuralViolation("lemma6", (a, b), f"j={j}, i={i}, p={p}")
    return path


def _backpath(d: Digraph, q: tuple[int, ...], lo: int, m: int, j: int, i: int, p: int) -> list[int]:
    """Indices into ``q`` for the window ``q[lo..lo+m]``."""
    hi = lo + m
    if m == 4:
        allowed = 0
        for a in range(lo, hi + 1):
            allowed |= 1 << q[a]
        rank = {q[a]: a for a in range(lo, hi + 1)}
        found = bounded_path_search(d, allowed, q[j], q[i], p, rank)
        if found is None:
            raise StructuralViolation("lemma6", None, f"no path of length {p} from x{j} to x{i} (n=4)")
        return [rank[v] for v in found]
    if j - i == m:
        return [hi, *range(lo + 2, lo + p + 1), lo]
    if p <= m - 2:
        if j <= hi - 1:
            return _backpath(d, q, lo, m - 1, j, i, p)
        return _backpath(d, q, lo + 1, m - 1, j, i, p)
    if j == hi:
        # the mirror image of the case j <= hi-1: reverse Q and every arc
        mirrored = _longest_backpath(lo, hi, lo + hi - i, lo + hi - j)
        return [lo + hi - a for a in reversed(mirrored)]
    return _longest_backpath(lo, hi, j, i)


def _longest_backpath(lo: int, hi: int, j: int, i: int) -> list[int]:
    """Indices of a path of length ``hi-lo-1`` from ``x_j`` back to ``x_i``, ``j <= hi-1``."""
    if j - i == 1:
        return [*range(j, hi), *range(lo, i + 1)]
    if j - i == 2:
        return [*range(j, hi + 1), *range(lo, i + 1)]
    return [*range(j, hi + 1), *range(i + 2, j), *range(lo, i + 1)]


def propagate_adjacency_check(d: Digraph, frame: ShortestPathFrame) -> Report:
    """With a semicomplete frame: ``x -> x_i`` forces adjacency to ``x_0..x_{i-1}``,
    ``x_i -> x`` forces adjacency to ``x_{i+1}..x_{k+2}``.

    The length ``k-1`` back-paths behind each forced adjacency are also
    constructed and validated.
    """
    _require_semicomplete(d, frame.path, "D[V(P)]")
    report = Report("lemma7")
    x = frame.x
    top = frame.top
    k = frame.k
    bad_cone = None
    bad_path = None
    built = 0
    for w in outside_vertices(d, frame):
        for idx in range(top + 1):
            if d.has_arc(w, x(idx)):
                for j in range(idx):
                    if bad_cone is None and not d.adj(w, x(j)):
                        bad_cone = f"{w}->x{idx}:x{j}"
                    back = semicomplete_backpath(d, frame.path, idx, j, k - 1)
                    built += 1
                    if bad_path is None and not validate_path(d, (w, *back)):
                        bad_path = fmt_path((w, *back))
            if d.has_arc(x(idx), w):
                for j in range(idx + 1, top + 1):
                    if bad_cone is None and not d.adj(w, x(j)):
                        bad_cone = f"x{idx}->{w}:x{j}"
                    back = semicomplete_backpath(d, frame.path, j, idx, k - 1)
                    built += 1
                    if bad_path is None and not validate_path(d, (*back, w)):
                        bad_path = fmt_path((*back, w))
    report.add("lemma7:adjacency-cone", bad_cone is None, bad_cone)
    report.add("lemma7:length-k-paths", bad_path is None, bad_path)
    report.notes["paths_built"] = built
    return report


# -- cycles -------------------------------------------------------------------------


def _check_cycle(d: Digraph, cycle: Sequence[int], k: int) -> None:
    if len(cycle) < k:
        raise UsageError(f"cycle length {len(cycle)} is below k={k}")
    if not validate_cycle(d, cycle):
        raise UsageError("not a cycle of the digraph")


def cycle_adjacency_check(d: Digraph, cycle: Sequence[int], k: int) -> Report:
    """Every vertex off a cycle of length at least ``k`` is adjacent to the cycle."""
    _check_cycle(d, cycle, k)
    report = Report("lemma8")
    on = 0
    for v in cycle:
        on |= 1 << v
    lonely = next((w for w in range(d.n) if not on >> w & 1 and not d.adj_row(w) & on), None)
    report.add("lemma8:adjacent-to-cycle", lonely is None, None if lonely is None else str(lonely))
    return report


def cycle_rotation_step(d: Digraph, cycle: Sequence[int], k: int, x: int, i: int, direction: str) -> int:
    """Index forced by rotating ``k-1`` positions along the cycle.

    ``direction="out"``: ``x -> C[i]`` and no arc from the cycle into
    ``x`` force ``x -> C[i+k-1]``.  ``direction="in"``: ``C[i] -> x`` and
    no arc from ``x`` to the cycle force ``C[i-(k-1)] -> x``.  Returns the
    new index after confirming the arc.
    """
    _check_cycle(d, cycle, k)
    length = len(cycle)
    if x in cycle:
        raise UsageError("x must lie off the cycle")
    if not 0 <= i < length:
        raise UsageError(f"cycle index {i} out of range")
    on = 0
    for v in cycle:
        on |= 1 << v
    if direction == "out":
        if not d.has_arc(x, cycle[i]) or d.inn[x] & on:
            raise UsageError("need x -> C[i] and no arc from the cycle to x")
        j = (i + k - 1) % length
        if not d.has_arc(x, cycle[j]):
            raise StructuralViolation("lemma9", (x, cycle[j]))
    elif direction == "in":
        if not d.has_arc(cycle[i], x) or d.out[x] & on:
            raise UsageError("need C[i] -> x and no arc from x to the cycle")
        j = (i - (k - 1)) % length
        if not d.has_arc(cycle[j], x):
            raise StructuralViolation("lemma9", (cycle[j], x))
    else:
        raise UsageError(f"direction must be 'in' or 'out', got {direction!r}")
    return j


def rotation_orbit(cycle_length: int, k: int, start: int = 0) -> list[int]:
    """Indices reached from ``start`` by repeated steps of ``k-1`` modulo ``cycle_length``."""
    orbit = [start % cycle_length]
    nxt = (orbit[0] + k - 1) % cycle_length
    while nxt != orbit[0]:
        orbit.append(nxt)
        nxt = (nxt + k - 1) % cycle_length
    return orbit
