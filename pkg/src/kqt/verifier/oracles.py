"""Definition-literal checkers used to cross-examine the fast implementations.

Nothing here imports the engine or the structure code; only the
:class:`Digraph` container is shared, and only its ``n`` and ``arcs()``
are read.
"""

from __future__ import annotations

from collections.abc import Iterable
from itertools import permutations

from ..digraph import Digraph
from ..errors import UsageError
from ..structure.classify import BIPARTITE, EMPTY, FN, OTHER, SEMICOMPLETE, StructureClass

ORACLE_MAX_ORDER = 12


def oracle_is_kqt(d: Digraph, k: int) -> bool:
    """Every simple path with exactly ``k`` arcs has adjacent end vertices."""
    if k < 2:
        raise UsageError("k must be at least 2")
    arcs = d.arcs()
    arc_set = set(arcs)

    def extend(path: list[int]) -> bool:
        if len(path) == k + 1:
            a, b = path[0], path[-1]
            return (a, b) in arc_set or (b, a) in arc_set
        for tail, head in arcs:
            if tail == path[-1] and head not in path:
                if not extend(path + [head]):
                    return False
        return True

    return all(extend([v]) for v in range(d.n))


def _fn_arc_set(n: int) -> set[tuple[int, int]]:
    arcs = {(0, 1), (1, 2), (2, 0)}
    for i in range(3, n + 1):
        arcs.add((i, 1))
        arcs.add((0, i))
    return arcs


def oracle_classify(d: Digraph, vertices: Iterable[int]) -> StructureClass:
    """Classify ``D[S]`` straight from the definitions, same precedence as the fast classifier."""
    verts = sorted(set(vertices))
    if any(not 0 <= v < d.n for v in verts):
        raise UsageError("vertex out of range")
    if len(verts) > ORACLE_MAX_ORDER:
        raise UsageError(f"oracle_classify handles at most {ORACLE_MAX_ORDER} vertices")
    inside = set(verts)
    arcs = {(a, b) for a, b in d.arcs() if a in inside and b in inside}

    def adjacent(a: int, b: int) -> bool:
        return (a, b) in arcs or (b, a) in arcs

    pairs = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1 :]]
    if all(adjacent(a, b) for a, b in pairs):
        return StructureClass(SEMICOMPLETE)
    if not arcs:
        return StructureClass(EMPTY)

    first, rest = verts[0], verts[1:]
    for bits in range(1 << len(rest)):
        part_a = [first] + [v for j, v in enumerate(rest) if bits >> j & 1]
        part_b = [v for j, v in enumerate(rest) if not bits >> j & 1]
        if not part_b:
            continue
        independent = not any(
            adjacent(a, b) for part in (part_a, part_b) for i, a in enumerate(part) for b in part[i + 1 :]
        )
        complete = all(adjacent(a, b) for a in part_a for b in part_b)
        if independent and complete:
            return StructureClass(BIPARTITE, parts=(frozenset(part_a), frozenset(part_b)))

    m = len(verts) - 1
    if m >= 3 and len(arcs) == 2 * m - 1:
        target = _fn_arc_set(m)
        # vertices x_3..x_n of F_n are interchangeable, so only x_0, x_1, x_2 need placing
        for x0, x1, x2 in permutations(verts, 3):
            others = [v for v in verts if v not in (x0, x1, x2)]
            label = {x0: 0, x1: 1, x2: 2}
            label.update({v: 3 + i for i, v in enumerate(others)})
            if {(label[a], label[b]) for a, b in arcs} == target:
                return StructureClass(FN, fn_map=label)
    return StructureClass(OTHER)
