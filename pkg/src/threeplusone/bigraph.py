"""Bicoloured graphs: bipartite graphs with an ordered (top, bottom) bipartition."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .canon import canonical_labelling
from .poset import Poset, members


@dataclass(frozen=True, order=True)
class BicolouredGraph:
    """``rows[r]`` is the bitmask of bottoms adjacent to top ``r``."""

    i: int
    j: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.i or any(r >> self.j for r in self.rows):
            raise ValueError(f"adjacency does not fit a {self.i}x{self.j} graph")

    @classmethod
    def from_edges(cls, i: int, j: int, edges) -> "BicolouredGraph":
        rows = [0] * i
        for top, bottom in edges:
            rows[top] |= 1 << bottom
        return cls(i, j, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "BicolouredGraph":
        matrix = [list(r) for r in matrix]
        j = len(matrix[0]) if matrix else 0
        return cls(len(matrix), j, tuple(sum(1 << c for c, x in enumerate(r) if x) for r in matrix))

    @property
    def n(self) -> int:
        return self.i + self.j

    def has_edge(self, top: int, bottom: int) -> bool:
        return bool(self.rows[top] >> bottom & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(t, b) for t in range(self.i) for b in members(self.rows[t])]

    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.j
        for t, row in enumerate(self.rows):
            for b in members(row):
                cols[b] |= 1 << t
        return tuple(cols)

    def transpose(self) -> "BicolouredGraph":
        return BicolouredGraph(self.j, self.i, self.columns())

    def matrix(self) -> list[list[int]]:
        return [[int(self.has_edge(t, b)) for b in range(self.j)] for t in range(self.i)]

    def to_poset(self) -> Poset:
        """Two-level poset: bottoms are ``0..j-1``, tops ``j..j+i-1``, edges give b < t."""
        return Poset.from_relations(self.n, [(b, self.j + t) for t, b in self.edges()])

    def _digraph(self) -> tuple[list[int], list[int]]:
        # bottoms first, colour 0; tops colour 1; arcs bottom -> top
        out = [0] * self.n
        for t, b in self.edges():
            out[b] |= 1 << (self.j + t)
        return out, [0] * self.j + [1] * self.i

    def canonical(self) -> "BicolouredGraph":
        """Representative shared by exactly the colour-preserving isomorphism class."""
        out, colours = self._digraph()
        order, _ = canonical_labelling(self.n, out, colours)
        bottom_pos = {v: k for k, v in enumerate(order[: self.j])}
        rows = []
        for v in order[self.j:]:
            t = v - self.j
            rows.append(sum(1 << bottom_pos[b] for b in members(self.rows[t])))
        return BicolouredGraph(self.i, self.j, tuple(rows))

    def aut_order(self) -> int:
        return aut_order_bicoloured(self)

    def __str__(self) -> str:
        body = "/".join("".join(str(x) for x in r) for r in self.matrix())
        return f"{self.i}x{self.j}:{body}"


def aut_order_bicoloured(g: BicolouredGraph) -> int:
    """Number of (top permutation, bottom permutation) pairs preserving adjacency.

    Backtracks over images of tops; for a fixed top map the admissible bottom
    maps are counted directly, since bottoms with equal column are
    interchangeable and any other bijection must send each column to an equal one.
    """
    if g.i == 0:
        return factorial(g.j)
    degree = [r.bit_count() for r in g.rows]
    cols = g.columns()
    total = 0
    image = [-1] * g.i
    used = [False] * g.i

    def count_bottom_maps() -> int:
        # column of bottom b under the top map must equal an existing column
        moved: dict[int, int] = {}
        for c in cols:
            mc = 0
            for t in members(c):
                mc |= 1 << image[t]
            moved[mc] = moved.get(mc, 0) + 1
        have: dict[int, int] = {}
        for c in cols:
            have[c] = have.get(c, 0) + 1
        if moved != have:
            return 0
        result = 1
        for k in have.values():
            result *= factorial(k)
        return result

    def extend(t: int) -> None:
        nonlocal total
        if t == g.i:
            total += count_bottom_maps()
            return
        for s in range(g.i):
            if not used[s] and degree[s] == degree[t]:
                used[s] = True
                image[t] = s
                extend(t + 1)
                used[s] = False
        image[t] = -1

    extend(0)
    return total


def aut_order_bruteforce(g: BicolouredGraph) -> int:
    """Reference count over all top and bottom permutations (tiny graphs only)."""
    edges = set(g.edges())
    count = 0
    for pt in permutations(range(g.i)):
        for pb in permutations(range(g.j)):
            if all((pt[t], pb[b]) in edges for t, b in edges):
                count += 1
    return count
