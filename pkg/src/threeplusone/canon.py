"""Canonical labelling of small vertex-coloured digraphs.

Individualization-refinement: colour refinement to an equitable ordered
partition, then branch on each vertex of the first non-singleton cell and keep
the lexicographically smallest relabelled adjacency.  Vertices of a cell that
are twins (swapping them is an automorphism) lead to identical leaves, so only
one per twin class is explored.
"""

from __future__ import annotations

from typing import Sequence

from .poset import Poset, members

Certificate = tuple


def _refine(n: int, out_nbrs: Sequence[tuple[int, ...]], in_nbrs: Sequence[tuple[int, ...]],
            colour: list[int]) -> list[int]:
    ncells = len(set(colour))
    while True:
        sigs = [
            (colour[v],
             tuple(sorted([colour[w] for w in out_nbrs[v]])),
             tuple(sorted([colour[w] for w in in_nbrs[v]])))
            for v in range(n)
        ]
        order = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colour = [order[s] for s in sigs]
        if len(order) == ncells:
            return colour
        ncells = len(order)


def _twins(u: int, v: int, out: Sequence[int], inn: Sequence[int]) -> bool:
    keep = ~((1 << u) | (1 << v))
    return (out[u] & keep == out[v] & keep and inn[u] & keep == inn[v] & keep
            and bool(out[u] >> v & 1) == bool(out[v] >> u & 1))


def canonical_labelling(n: int, out: Sequence[int], colours: Sequence[int] | None = None
                        ) -> tuple[list[int], Certificate]:
    """Return ``(order, certificate)``.

    ``out[v]`` is the bitmask of out-neighbours of ``v``.  ``order[k]`` is the
    original vertex placed at position ``k``; isomorphic inputs (preserving
    colours) give equal certificates.
    """
    inn = [0] * n
    for v in range(n):
        for w in members(out[v]):
            inn[w] |= 1 << v
    out_nbrs = [members(m) for m in out]
    in_nbrs = [members(m) for m in inn]
    base = list(colours) if colours is not None else [0] * n
    best: list = [None, None]

    def leaf(colour: list[int]) -> None:
        order = sorted(range(n), key=colour.__getitem__)
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        rows = []
        for v in order:
            row = 0
            for w in out_nbrs[v]:
                row |= 1 << pos[w]
            rows.append(row)
        cert = (tuple(base[v] for v in order), tuple(rows))
        if best[1] is None or cert < best[1]:
            best[0], best[1] = order, cert

    def search(colour: list[int]) -> None:
        colour = _refine(n, out_nbrs, in_nbrs, colour)
        counts: dict[int, list[int]] = {}
        for v in range(n):
            counts.setdefault(colour[v], []).append(v)
        target = None
        for c in sorted(counts):
            if len(counts[c]) > 1:
                target = counts[c]
                break
        if target is None:
            leaf(colour)
            return
        reps: list[int] = []
        for v in target:
            if not any(_twins(r, v, out, inn) for r in reps):
                reps.append(v)
        for v in reps:
            nxt = [2 * c + 1 for c in colour]
            nxt[v] = 2 * colour[v]
            search(nxt)

    if n:
        search(base)
    else:
        best[0], best[1] = [], ((), ())
    return best[0], best[1]


def poset_certificate(p: Poset) -> Certificate:
    """Isomorphism invariant of a poset: equal iff the posets are isomorphic."""
    return (p.n,) + canonical_labelling(p.n, p.up)[1]


def canonical_poset(p: Poset) -> Poset:
    order, _ = canonical_labelling(p.n, p.up)
    perm = [0] * p.n
    for k, v in enumerate(order):
        perm[v] = k
    return p.relabel(perm)
