"""Classification of induced subdigraphs.

Verdicts, in precedence order: semicomplete, empty, semicomplete
bipartite, ``F_n``, other.  A vertex set of size at most one is
semicomplete.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from ..digraph import Digraph, iter_bits
from ..errors import UsageError
from .frame import ShortestPathFrame, outside_vertices
from .report import Report

SEMICOMPLETE = "semicomplete"
EMPTY = "empty"
BIPARTITE = "semicomplete-bipartite"
FN = "Fn"
OTHER = "other"


@dataclass(frozen=True)
class StructureClass:
    """Classifier verdict.

    ``parts`` is set for the bipartite verdict (part containing the
    smallest vertex first), ``fn_map`` maps host vertices to ``F_n``
    indices for the ``Fn`` verdict and ``witness`` explains ``other``.
    """

    kind: str
    parts: tuple[frozenset[int], frozenset[int]] | None = None
    witness: str | None = None
    fn_map: dict[int, int] | None = None

    def __str__(self) -> str:
        if self.kind == BIPARTITE:
            a, b = self.parts
            return f"{BIPARTITE} ({_fmt_set(a)}|{_fmt_set(b)})"
        if self.kind == OTHER and self.witness:
            return f"{OTHER} ({self.witness})"
        return self.kind

    def same_bipartition(self, a: Iterable[int], b: Iterable[int]) -> bool:
        if self.parts is None:
            return False
        return {frozenset(a), frozenset(b)} == set(self.parts)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.parts is not None:
            out["parts"] = [sorted(p) for p in self.parts]
        if self.witness is not None:
            out["witness"] = self.witness
        if self.fn_map is not None:
            out["fn_map"] = {str(v): i for v, i in sorted(self.fn_map.items())}
        return out


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def _subset_mask(d: Digraph, vertices: Iterable[int]) -> tuple[list[int], int]:
    verts = sorted(set(vertices))
    mask = 0
    for v in verts:
        if not (isinstance(v, int) and 0 <= v < d.n):
            raise UsageError(f"vertex {v!r} is not in the digraph")
        mask |= 1 << v
    return verts, mask


def classify_induced(d: Digraph, vertices: Iterable[int]) -> StructureClass:
    """Classify ``D[S]``.

    Bipartiteness is read off the non-adjacency graph on ``S``: a
    semicomplete bipartite digraph is exactly one whose non-adjacency
    graph has two components, each an independent set of ``D``.
    """
    verts, mask = _subset_mask(d, vertices)
    if len(verts) <= 1:
        return StructureClass(SEMICOMPLETE)
    adj = {v: (d.out[v] | d.inn[v]) & mask for v in verts}
    non_adj = {v: mask & ~adj[v] & ~(1 << v) for v in verts}
    if not any(non_adj.values()):
        return StructureClass(SEMICOMPLETE)
    if not any(d.out[v] & mask for v in verts):
        return StructureClass(EMPTY)

    components: list[int] = []
    seen = 0
    for v in verts:
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for w in iter_bits(frontier):
                nxt |= non_adj[w]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        components.append(comp)
    if len(components) == 2 and all(_independent(adj, c) for c in components):
        a, b = components
        return StructureClass(BIPARTITE, parts=(frozenset(iter_bits(a)), frozenset(iter_bits(b))))

    if len(verts) >= 4:
        sub_arcs = [(u, w) for u in verts for w in iter_bits(d.out[u] & mask)]
        fn_map = _match_fn(verts, sub_arcs)
        if fn_map is not None:
            return StructureClass(FN, fn_map=fn_map)

    return StructureClass(OTHER, witness=_other_witness(verts, adj, non_adj, components))


def _independent(adj: dict[int, int], comp: int) -> bool:
    return all(not adj[v] & comp for v in iter_bits(comp))


def _other_witness(verts: list[int], adj: dict[int, int], non_adj: dict[int, int], components: list[int]) -> str:
    for comp in components:
        for v in iter_bits(comp):
            inner = adj[v] & comp
            if inner:
                w = (inner & -inner).bit_length() - 1
                return f"adjacent pair {v},{w} inside a non-adjacency component"
    v = next(v for v in verts if non_adj[v])
    w = (non_adj[v] & -non_adj[v]).bit_length() - 1
    return f"{len(components)} non-adjacency components; non-adjacent pair {v},{w}"


def fn_arcs(n: int) -> list[tuple[int, int]]:
    """Arc set of ``F_n`` on vertices ``0..n``."""
    if n < 3:
        raise UsageError("F_n is defined for n >= 3")
    return [(0, 1), (1, 2), (2, 0)] + [(i, 1) for i in range(3, n + 1)] + [(0, i) for i in range(3, n + 1)]


def fn_digraph(n: int) -> Digraph:
    return Digraph(n + 1, fn_arcs(n))


def _match_fn(verts: list[int], arcs: list[tuple[int, int]]) -> dict[int, int] | None:
    m = len(verts)
    n = m - 1
    if n < 3 or len(arcs) != 2 * n - 1:
        return None
    out_deg = dict.fromkeys(verts, 0)
    in_deg = dict.fromkeys(verts, 0)
    succ: dict[int, list[int]] = {v: [] for v in verts}
    for a, b in arcs:
        out_deg[a] += 1
        in_deg[b] += 1
        succ[a].append(b)
    hubs = [v for v in verts if out_deg[v] == n - 1]
    sinks = [v for v in verts if in_deg[v] == n - 1]
    if len(hubs) != 1 or len(sinks) != 1 or hubs[0] == sinks[0]:
        return None
    x0, x1 = hubs[0], sinks[0]
    if len(succ[x1]) != 1:
        return None
    x2 = succ[x1][0]
    if x2 in (x0, x1):
        return None
    mapping = {x0: 0, x1: 1, x2: 2}
    for i, v in enumerate(w for w in verts if w not in mapping):
        mapping[v] = i + 3
    expected = set(fn_arcs(n))
    if {(mapping[a], mapping[b]) for a, b in arcs} != expected:
        return None
    return mapping


def is_Fn(d: Digraph) -> tuple[bool, dict[int, int] | None]:
    """Is ``d`` isomorphic to ``F_{|V|-1}``?  Returns the map host vertex -> ``F_n`` index."""
    fn_map = _match_fn(list(range(d.n)), d.arcs())
    return fn_map is not None, fn_map


def classify_frame(d: Digraph, frame: ShortestPathFrame) -> tuple[StructureClass, Report]:
    """Classify ``D[V(P)]`` and check it is semicomplete or bipartite on ``(O(P), E(P))``."""
    verdict = classify_induced(d, frame.path)
    report = Report("frame_class")
    if verdict.kind == BIPARTITE:
        ok = verdict.same_bipartition(frame.odd_class, frame.even_class)
        report.add("theorem5:frame", ok, f"bipartition {verdict} is not (O(P),E(P))")
    else:
        report.add("theorem5:frame", verdict.kind == SEMICOMPLETE, str(verdict))
    return verdict, report


def classify_outside(
    d: Digraph, frame: ShortestPathFrame, frame_class: StructureClass | None = None
) -> tuple[StructureClass, Report]:
    """Classify ``D[V(D) - V(P)]``; with a semicomplete frame it must be semicomplete."""
    outside = outside_vertices(d, frame)
    # the digraph on no vertices has no arcs: report it as empty here
    verdict = classify_induced(d, outside) if outside else StructureClass(EMPTY)
    report = Report("outside_class")
    report.add(
        "theorem12:outside",
        verdict.kind in (SEMICOMPLETE, BIPARTITE, EMPTY),
        str(verdict),
    )
    if frame_class is None:
        frame_class = classify_induced(d, frame.path)
    if frame_class.kind == SEMICOMPLETE:
        ok = not outside or verdict.kind == SEMICOMPLETE
        report.add("lemma13:outside-semicomplete", ok, str(verdict))
    return verdict, report
