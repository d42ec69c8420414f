"""Tangle decomposition of (3+1)-free posets into clone sets and tangles."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import factorial

from .bigraph import BicolouredGraph
from .poset import Poset, members


class DecompositionError(AssertionError):
    """An internal invariant of the decomposition failed (should be unreachable
    for (3+1)-free input)."""


def top_tie(p: Poset, a: int, b: int) -> bool:
    """``a`` and ``b`` have incomparable downsets."""
    da, db = p.down[a], p.down[b]
    return a != b and bool(da & ~db) and bool(db & ~da)


def bottom_tie(p: Poset, a: int, b: int) -> bool:
    """``a`` and ``b`` have incomparable upsets."""
    ua, ub = p.up[a], p.up[b]
    return a != b and bool(ua & ~ub) and bool(ub & ~ua)


def _components(n: int, adjacent) -> list[int]:
    nbr = [sum(1 << b for b in range(n) if adjacent(a, b)) for a in range(n)]
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1 or not nbr[s]:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= nbr[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def tangle_components(p: Poset) -> tuple[list[int], list[int]]:
    """Tops and bottoms of tangles: components of size >= 2 under the two ties."""
    p.require_3plus1_free()
    tops = _components(p.n, lambda a, b: top_tie(p, a, b))
    bottoms = _components(p.n, lambda a, b: bottom_tie(p, a, b))
    return tops, bottoms


@dataclass(frozen=True)
class CloneSet:
    mask: int
    level: int

    kind = "clone"

    @property
    def vertices(self) -> tuple[int, ...]:
        return members(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def levels(self) -> tuple[int, ...]:
        return (self.level,)

    @property
    def letter(self) -> tuple[str, int]:
        return ("c", self.level)

    def aut_order(self) -> int:
        return factorial(self.size)


@dataclass(frozen=True)
class Tangle:
    """Matched top ``A`` and bottom ``B``; ``level`` is the level of the bottom."""

    top: int
    bottom: int
    graph: BicolouredGraph = field(compare=False)
    level: int = 0

    kind = "tangle"

    @property
    def mask(self) -> int:
        return self.top | self.bottom

    @property
    def vertices(self) -> tuple[int, ...]:
        return members(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def levels(self) -> tuple[int, ...]:
        return (self.level, self.level + 1)

    @property
    def letter(self) -> tuple[str, int]:
        return ("t", self.level)

    def aut_order(self) -> int:
        return self.graph.aut_order()


def _tangle_graph(p: Poset, top: int, bottom: int) -> BicolouredGraph:
    tops, bots = members(top), members(bottom)
    rows = []
    for a in tops:
        rows.append(sum(1 << k for k, b in enumerate(bots) if p.less(b, a)))
    return BicolouredGraph(len(tops), len(bots), tuple(rows))


def match_tangles(p: Poset) -> list[Tangle]:
    """Pair each tangle top with the bottom sharing an induced (2+2) with it."""
    tops, bottoms = tangle_components(p)
    owner = {}
    for k, bmask in enumerate(bottoms):
        for v in members(bmask):
            owner[v] = k
    matched = []
    used = set()
    for amask in tops:
        found = set()
        for a in members(amask):
            for b in members(amask):
                if b <= a or not top_tie(p, a, b):
                    continue
                for c in members(p.down[a] & ~p.down[b]):
                    for d in members(p.down[b] & ~p.down[a]):
                        if c in owner:
                            found.add(owner[c])
                        if d in owner:
                            found.add(owner[d])
        if len(found) != 1:
            raise DecompositionError(f"top {members(amask)} matched to {len(found)} bottoms")
        k = found.pop()
        if k in used:
            raise DecompositionError(f"bottom {members(bottoms[k])} matched twice")
        used.add(k)
        matched.append((amask, bottoms[k]))
    if len(used) != len(bottoms):
        raise DecompositionError("matching between tops and bottoms is not perfect")
    return [Tangle(a, b, _tangle_graph(p, a, b)) for a, b in matched]


@dataclass(frozen=True)
class TangleDecomposition:
    """Parts in a compatible listing, with the level of every vertex."""

    poset: Poset
    parts: tuple
    level_of: tuple[int, ...]

    @property
    def clone_sets(self) -> list[CloneSet]:
        return [x for x in self.parts if isinstance(x, CloneSet)]

    @property
    def tangles(self) -> list[Tangle]:
        return [x for x in self.parts if isinstance(x, Tangle)]

    def word(self) -> list[tuple[str, int]]:
        return [x.letter for x in self.parts]

    def aut_order(self) -> int:
        total = 1
        for x in self.parts:
            total *= x.aut_order()
        return total

    def to_json(self) -> dict:
        p = self.poset
        parts = []
        for index, x in enumerate(self.parts):
            entry = {"index": index, "kind": x.kind, "levels": list(x.levels)}
            if isinstance(x, CloneSet):
                entry["vertices"] = [p.name(v) for v in x.vertices]
            else:
                entry["top"] = [p.name(v) for v in members(x.top)]
                entry["bottom"] = [p.name(v) for v in members(x.bottom)]
                entry["edges"] = [[p.name(b), p.name(a)]
                                  for a in members(x.top) for b in members(x.bottom)
                                  if p.less(b, a)]
            parts.append(entry)
        return {"n": p.n, "parts": parts, "aut_order": str(self.aut_order())}


def listing_law_violations(p: Poset, parts, level_of) -> list[tuple[int, int]]:
    """Cross-part pairs ``(a, b)`` that break the compatible-listing law."""
    where = {}
    for k, x in enumerate(parts):
        for v in x.vertices:
            where[v] = k
    bad = []
    for a in range(p.n):
        for b in range(p.n):
            i, j = where[a], where[b]
            if i == j:
                continue
            la, lb = level_of[a], level_of[b]
            expected = la <= lb - 2 or (la == lb - 1 and i < j)
            if p.less(a, b) != expected:
                bad.append((a, b))
    return bad


def _compatible_listing(p: Poset, parts: list, level_of: list[int]) -> list:
    """Order parts so that adjacent-level relations are decided by position.

    For parts X, Y holding vertices on levels l and l+1, the law forces X before
    Y exactly when the lower vertex is below the upper one.  These forced
    precedences are topologically sorted, breaking ties by lowest level then
    lowest vertex.
    """
    where = {}
    for k, x in enumerate(parts):
        for v in x.vertices:
            where[v] = k
    succ: list[set[int]] = [set() for _ in parts]
    for a in range(p.n):
        for b in range(p.n):
            if level_of[b] != level_of[a] + 1 or where[a] == where[b]:
                continue
            x, y = where[a], where[b]
            if p.less(a, b):
                succ[x].add(y)
            else:
                succ[y].add(x)
    indeg = [0] * len(parts)
    for x in range(len(parts)):
        for y in succ[x]:
            indeg[y] += 1
    key = [(min(parts[x].levels), min(parts[x].vertices)) for x in range(len(parts))]
    heap = [(key[x], x) for x in range(len(parts)) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, x = heapq.heappop(heap)
        order.append(parts[x])
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, (key[y], y))
    if len(order) != len(parts):
        raise DecompositionError("precedences between parts are cyclic")
    return order


def decompose(p: Poset) -> TangleDecomposition:
    """Split a (3+1)-free poset into clone sets and tangles, in a compatible listing."""
    tangles = match_tangles(p)
    level_of = p.level_of()
    placed = []
    covered = 0
    for tg in tangles:
        bottom_levels = {level_of[v] for v in members(tg.bottom)}
        top_levels = {level_of[v] for v in members(tg.top)}
        if len(bottom_levels) != 1 or top_levels != {min(bottom_levels) + 1}:
            raise DecompositionError(f"tangle {members(tg.mask)} does not span two adjacent levels")
        placed.append(Tangle(tg.top, tg.bottom, tg.graph, min(bottom_levels)))
        covered |= tg.mask
    classes: dict[tuple[int, int], int] = {}
    for v in members(p.full & ~covered):
        key = (p.down[v], p.up[v])
        classes[key] = classes.get(key, 0) | (1 << v)
    for mask in classes.values():
        placed.append(CloneSet(mask, level_of[members(mask)[0]]))
    parts = _compatible_listing(p, placed, level_of)
    bad = listing_law_violations(p, parts, level_of)
    if bad:
        raise DecompositionError(f"listing breaks the compatibility law at pairs {bad[:3]}")
    return TangleDecomposition(p, tuple(parts), tuple(level_of))


def aut_order(p: Poset) -> int:
    """Order of Aut(P): product of part automorphism group orders."""
    return decompose(p).aut_order()
