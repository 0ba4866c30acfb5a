"""Finite loop-free digraphs on vertices ``0..n-1``.

Adjacency is kept as one Python ``int`` bitmask per vertex (``out[v]`` has
bit ``w`` set iff ``v -> w``), so neighbourhood tests and BFS frontiers are
bit-parallel.  Digraph values are immutable; every operation returns a new
value.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

from .errors import ParseError, UsageError

Arc = tuple[int, int]
Path = tuple[int, ...]
Cycle = tuple[int, ...]


class _Infinity:
    """Distance to an unreachable vertex.

    Orders above every integer so ``max`` works, but supports no
    arithmetic: ``INFINITY + 1`` raises ``TypeError``.
    """

    __slots__ = ()
    _instance: _Infinity | None = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = __repr__

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("kqt.INFINITY")

    def __lt__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    def __reduce__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Digraph:
    """Loop-free digraph without multiple arcs on vertices ``0..n-1``."""

    __slots__ = ("n", "out", "inn")

    n: int
    out: tuple[int, ...]
    inn: tuple[int, ...]

    def __init__(self, n: int, arcs: Iterable[Arc] = ()) -> None:
        if n < 0:
            raise UsageError(f"vertex count must be non-negative, got {n}")
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise UsageError(f"loop arc ({u},{v})")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "out", tuple(out))
        object.__setattr__(self, "inn", tuple(inn))

    @classmethod
    def from_rows(cls, out_rows: Sequence[int]) -> Digraph:
        """Build from out-neighbourhood bitmasks (no validation beyond loops)."""
        n = len(out_rows)
        full = (1 << n) - 1
        inn = [0] * n
        for u, row in enumerate(out_rows):
            if row >> u & 1 or row & ~full:
                raise UsageError(f"invalid adjacency row for vertex {u}")
            for v in iter_bits(row):
                inn[v] |= 1 << u
        g = cls.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "out", tuple(out_rows))
        object.__setattr__(g, "inn", tuple(inn))
        return g

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Digraph is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arcs()})"

    def __reduce__(self):
        return (Digraph.from_rows, (self.out,))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def arcs(self) -> list[Arc]:
        """All arcs, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out[u])]

    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def adj(self, u: int, v: int) -> bool:
        """Unchecked adjacency test; see :func:`adjacent` for the checked one."""
        return bool((self.out[u] | self.inn[u]) >> v & 1)

    def adj_row(self, v: int) -> int:
        return self.out[v] | self.inn[v]

    def out_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.out[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.inn[v]))

    def with_arcs(self, arcs: Iterable[Arc]) -> Digraph:
        """Return a copy with ``arcs`` added (already-present arcs are ignored)."""
        rows = list(self.out)
        for u, v in arcs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise UsageError(f"cannot add arc ({u},{v})")
            rows[u] |= 1 << v
        return Digraph.from_rows(rows)

    def without_arcs(self, arcs: Iterable[Arc]) -> Digraph:
        rows = list(self.out)
        for u, v in arcs:
            rows[u] &= ~(1 << v)
        return Digraph.from_rows(rows)


# -- constructors -------------------------------------------------------------


def directed_path(num_vertices: int) -> Digraph:
    """The directed path ``0 -> 1 -> ... -> num_vertices-1``."""
    return Digraph(num_vertices, ((i, i + 1) for i in range(num_vertices - 1)))


def directed_cycle(num_vertices: int) -> Digraph:
    arcs = [(i, (i + 1) % num_vertices) for i in range(num_vertices)]
    return Digraph(num_vertices, arcs if num_vertices > 1 else [])


def complete_digraph(num_vertices: int) -> Digraph:
    return Digraph(num_vertices, ((u, v) for u in range(num_vertices) for v in range(num_vertices) if u != v))


# -- I/O ----------------------------------------------------------------------


def from_edge_list(text: str) -> Digraph:
    """Parse the edge-list format.

    Comment lines start with ``#``; blank lines are ignored.  The first
    content line must be ``n <N>``; every following line is ``<u> <v>``.
    """
    n: int | None = None
    arcs: list[Arc] = []
    seen: set[Arc] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ParseError("expected header 'n <N>'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[1]!r}", lineno) from None
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"malformed arc line {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"malformed arc line {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range in {line!r} (n={n})", lineno)
        if u == v:
            raise ParseError("loop arc", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc {u} {v}", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    if n is None:
        raise ParseError("missing header 'n <N>'")
    return Digraph(n, arcs)


def to_edge_list(d: Digraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n {d.n}")
    lines.extend(f"{u} {v}" for u, v in d.arcs())
    return "\n".join(lines) + "\n"


def to_dot(d: Digraph, name: str = "D", highlight: Sequence[int] = ()) -> str:
    """Render as DOT; vertices in ``highlight`` are drawn as boxes."""
    lines = [f"digraph {name} {{"]
    for v in highlight:
        lines.append(f"  {v} [shape=box];")
    lines.extend(f"  {u} -> {v};" for u, v in d.arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- basic queries --------------------------------------------------------------


def _check_vertex(d: Digraph, v: int) -> None:
    if not (isinstance(v, int) and 0 <= v < d.n):
        raise UsageError(f"vertex {v!r} out of range for n={d.n}")


def adjacent(d: Digraph, u: int, v: int) -> bool:
    """True iff ``u -> v`` or ``v -> u``."""
    _check_vertex(d, u)
    _check_vertex(d, v)
    if u == v:
        raise UsageError("adjacency is only defined for distinct vertices")
    return d.adj(u, v)


def converse(d: Digraph) -> Digraph:
    """Reverse every arc."""
    return Digraph.from_rows(d.inn)


def bfs_distances(d: Digraph, source: int) -> list:
    """Distances from ``source`` to every vertex (``INFINITY`` if unreachable)."""
    dist: list = [INFINITY] * d.n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    level = 0
    out = d.out
    while frontier:
        level += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= out[v]
        nxt &= ~seen
        for v in iter_bits(nxt):
            dist[v] = level
        seen |= nxt
        frontier = nxt
    return dist


def distance(d: Digraph, u: int, v: int):
    """Length of a shortest ``(u, v)``-path, or ``INFINITY``."""
    _check_vertex(d, u)
    _check_vertex(d, v)
    return bfs_distances(d, u)[v]


def _reach_mask(rows: Sequence[int], source: int) -> int:
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_strong(d: Digraph) -> bool:
    """Every vertex reaches every other vertex."""
    if d.n <= 1:
        return True
    full = (1 << d.n) - 1
    return _reach_mask(d.out, 0) == full and _reach_mask(d.inn, 0) == full


def diameter(d: Digraph):
    """Maximum distance over ordered vertex pairs (``INFINITY`` unless strong)."""
    if d.n < 1:
        raise UsageError("diameter of the empty digraph is undefined")
    if not is_strong(d):
        return INFINITY
    return max(max(bfs_distances(d, u)) for u in range(d.n))


def induced(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Subdigraph induced by ``vertices``, relabelled ``0..|S|-1`` in sorted order.

    Returns the subdigraph and the old-to-new vertex mapping.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not (isinstance(v, int) and 0 <= v < d.n):
            raise UsageError(f"vertex {v!r} is not in the digraph")
    mapping = {old: new for new, old in enumerate(keep)}
    arcs = [(mapping[u], mapping[v]) for u in keep for v in iter_bits(d.out[u]) if v in mapping]
    return Digraph(len(keep), arcs), mapping


# -- paths ----------------------------------------------------------------------


def enumerate_simple_paths(
    d: Digraph,
    start: int,
    exact_len: int,
    stop_at_first: bool = False,
    forbidden: Iterable[int] = (),
) -> list[Path]:
    """Simple paths from ``start`` with exactly ``exact_len`` arcs.

    Paths avoid ``forbidden`` and come out in lexicographic order of their
    vertex sequences.  With ``stop_at_first`` at most one path is returned.
    """
    _check_vertex(d, start)
    if exact_len < 0:
        raise UsageError("exact_len must be non-negative")
    blocked = bits_of(forbidden)
    if blocked >> start & 1:
        raise UsageError("start vertex is forbidden")
    out = d.out
    found: list[Path] = []
    path = [start]

    def extend(v: int, on_path: int, remaining: int) -> bool:
        if remaining == 0:
            found.append(tuple(path))
            return stop_at_first
        for w in iter_bits(out[v] & ~on_path):
            path.append(w)
            if extend(w, on_path | 1 << w, remaining - 1):
                return True
            path.pop()
        return False

    extend(start, blocked | 1 << start, exact_len)
    return found


def validate_path(d: Digraph, p: Sequence[int]) -> bool:
    """Vertices distinct, in range, and consecutive pairs are arcs."""
    if not p:
        return False
    if any(not (isinstance(v, int) and 0 <= v < d.n) for v in p):
        return False
    if len(set(p)) != len(p):
        return False
    return all(d.has_arc(a, b) for a, b in zip(p, p[1:]))


def validate_cycle(d: Digraph, c: Sequence[int]) -> bool:
    if len(c) < 2 or not validate_path(d, c):
        return False
    return d.has_arc(c[-1], c[0])


def first_missing_arc(d: Digraph, p: Sequence[int]) -> Arc | None:
    for a, b in zip(p, p[1:]):
        if not d.has_arc(a, b):
            return (a, b)
    return None
