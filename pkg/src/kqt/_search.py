"""Exact-length simple-path search for k-quasi-transitivity.

A violation is a simple path with exactly ``k`` arcs whose endpoints are
non-adjacent.  The search runs a depth-first enumeration from each start
in increasing vertex order, taking neighbours in increasing order, so
violations are produced lexicographically.

Each explored state ``(vertex set on the path, last vertex)`` that yields
no violation is remembered and never re-entered.  Targets for a start
(its non-neighbours) can only shrink while a search is running, so a
state that was exhausted once stays exhausted.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence


def iter_violations_from(
    out: Sequence[int],
    adj: Sequence[int],
    start: int,
    k: int,
) -> Iterator[tuple[int, ...]]:
    """Yield violating paths starting at ``start`` in lexicographic order.

    ``out`` gives the arcs that paths may use.  ``adj`` holds adjacency rows
    (``out | in``) and is read live: callers may add adjacencies between
    yields, which removes the corresponding endpoints from the target set.
    """
    n = len(out)
    sbit = 1 << start
    full = (1 << n) - 1

    if not full & ~adj[start] & ~sbit:
        return
    dead: set[int] = set()
    path = [start]
    masks = [sbit]
    cands = [out[start] & ~sbit]
    while cands:
        targets = full & ~adj[start] & ~sbit
        if not targets:
            return
        depth = len(path) - 1
        mask = masks[-1]
        if k - depth == 1:
            v = path[-1]
            above = 0
            while True:
                hits = out[v] & ~mask & (full & ~adj[start] & ~sbit) & ~above
                if not hits:
                    break
                low = hits & -hits
                yield (*path, low.bit_length() - 1)
                above |= (low << 1) - 1
            dead.add(mask << 8 | v)
            path.pop()
            masks.pop()
            cands.pop()
            continue
        c = cands[-1]
        if not c:
            if depth:
                dead.add(mask << 8 | path[-1])
            path.pop()
            masks.pop()
            cands.pop()
            continue
        low = c & -c
        cands[-1] = c ^ low
        w = low.bit_length() - 1
        nmask = mask | low
        if nmask << 8 | w in dead:
            continue
        path.append(w)
        masks.append(nmask)
        cands.append(out[w] & ~nmask)


def iter_violations(out: Sequence[int], adj: Sequence[int], k: int) -> Iterator[tuple[int, ...]]:
    for start in range(len(out)):
        yield from iter_violations_from(out, adj, start, k)


def first_violation(out: Sequence[int], inn: Sequence[int], k: int) -> tuple[int, ...] | None:
    adj = [o | i for o, i in zip(out, inn)]
    return next(iter_violations(out, adj, k), None)
