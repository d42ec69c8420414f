"""Finite posets stored as transitively closed bitmask relations.

Vertices are the integers ``0..n-1``.  A vertex set is an ``int`` used as a
bitmask; :func:`members` turns one back into a sorted tuple.  Names exist only
for reading and writing files.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class PosetError(ValueError):
    """Raised for malformed poset input."""


class CycleError(PosetError):
    def __init__(self, cycle: Sequence[int]):
        self.cycle = tuple(cycle)
        path = " < ".join(str(v) for v in self.cycle + self.cycle[:1])
        super().__init__(f"relation contains a cycle: {path}")


class PosetParseError(PosetError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class NotThreePlusOneFree(PosetError):
    """The poset contains an induced (3+1); ``witness`` is ``(a, b, c, d)``."""

    def __init__(self, witness: tuple[int, int, int, int]):
        self.witness = witness
        a, b, c, d = witness
        super().__init__(f"poset is not (3+1)-free: {a} < {b} < {c} with {d} incomparable")


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class View(NamedTuple):
    """``down`` is the strict downset, ``co_up`` the complement of the strict upset."""

    down: int
    co_up: int


@dataclass(frozen=True, eq=False)
class Poset:
    n: int
    down: tuple[int, ...]
    up: tuple[int, ...]
    names: tuple[str, ...] | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]],
                       names: Sequence[str] | None = None) -> "Poset":
        """Build the transitive closure of ``pairs`` (each ``(a, b)`` means a < b)."""
        pred = [0] * n
        edges = []
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise PosetError(f"relation {a}<{b} out of range for n={n}")
            pred[b] |= 1 << a
            edges.append((a, b))
        for k in range(n):
            bit = 1 << k
            pk = pred[k]
            for i in range(n):
                if pred[i] & bit:
                    pred[i] |= pk
        for v in range(n):
            if pred[v] >> v & 1:
                raise CycleError(_find_cycle(n, edges, v))
        return cls._from_down(pred, names)

    @classmethod
    def _from_down(cls, down: Sequence[int], names: Sequence[str] | None = None) -> "Poset":
        n = len(down)
        up = [0] * n
        for b in range(n):
            for a in members(down[b]):
                up[a] |= 1 << b
        return cls(n, tuple(down), tuple(up), tuple(names) if names is not None else None)

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_relations(n, [])

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_relations(n, [(k, k + 1) for k in range(n - 1)])

    # -- basic queries ------------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def less(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or bool((self.down[b] | self.up[b]) >> a & 1)

    def incomparable_to(self, a: int) -> int:
        """Vertices incomparable to ``a`` (``a`` itself excluded)."""
        return self.full & ~(self.down[a] | self.up[a] | (1 << a))

    def downset(self, a: int) -> int:
        return self.down[a]

    def upset(self, a: int) -> int:
        return self.up[a]

    def view(self, a: int) -> View:
        return View(self.down[a], self.full & ~self.up[a])

    def is_clone(self, a: int, b: int) -> bool:
        return self.down[a] == self.down[b] and self.up[a] == self.up[b]

    def altitude(self, a: int) -> int:
        return self.down[a].bit_count() - self.up[a].bit_count()

    def relations(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(self.n) for a in members(self.down[b])]

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for b in range(self.n):
            below = self.down[b]
            inner = 0
            for a in members(below):
                inner |= self.down[a]
            out.extend((a, b) for a in members(below & ~inner))
        return out

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset in which old vertex ``v`` becomes ``perm[v]``."""
        return Poset.from_relations(self.n, [(perm[a], perm[b]) for a, b in self.relations()])

    def induced(self, vertices: Sequence[int]) -> "Poset":
        index = {v: k for k, v in enumerate(vertices)}
        pairs = [(index[a], index[b]) for a, b in self.relations() if a in index and b in index]
        names = [self.name(v) for v in vertices] if self.names is not None else None
        return Poset.from_relations(len(vertices), pairs, names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.down == other.down

    def __hash__(self) -> int:
        return hash((self.n, self.down))

    def __repr__(self) -> str:
        rels = ", ".join(f"{self.name(a)}<{self.name(b)}" for a, b in self.covers())
        return f"Poset(n={self.n}, covers=[{rels}])"

    # -- structure ----------------------------------------------------------

    def levels(self) -> list[int]:
        """Levels as vertex masks, found by repeatedly removing minimal vertices."""
        remaining = self.full
        out = []
        while remaining:
            layer = 0
            for v in members(remaining):
                if not self.down[v] & remaining:
                    layer |= 1 << v
            out.append(layer)
            remaining &= ~layer
        return out

    def level_of(self) -> list[int]:
        """1-based level of each vertex."""
        lev = [0] * self.n
        for k, layer in enumerate(self.levels(), start=1):
            for v in members(layer):
                lev[v] = k
        return lev

    def contains_3plus1(self) -> tuple[int, int, int, int] | None:
        for b in range(self.n):
            for a in members(self.down[b]):
                for c in members(self.up[b]):
                    free = (self.incomparable_to(a) & self.incomparable_to(b)
                            & self.incomparable_to(c))
                    if free:
                        return a, b, c, (free & -free).bit_length() - 1
        return None

    def contains_2plus2(self) -> tuple[int, int, int, int] | None:
        """Return ``(a, b, c, d)`` with c < a, d < b and all other pairs incomparable."""
        for a in range(self.n):
            for b in members(self.incomparable_to(a)):
                if b < a:
                    continue
                only_a = self.down[a] & self.incomparable_to(b)
                only_b = self.down[b] & self.incomparable_to(a)
                for c in members(only_a):
                    d_choices = only_b & self.incomparable_to(c)
                    if d_choices:
                        return a, b, c, (d_choices & -d_choices).bit_length() - 1
        return None

    def is_3plus1_free(self) -> bool:
        return self.contains_3plus1() is None

    def require_3plus1_free(self) -> None:
        witness = self.contains_3plus1()
        if witness is not None:
            raise NotThreePlusOneFree(witness)

    def view_poset(self) -> tuple["Poset", list[int]]:
        """Poset of distinct views and the map vertex -> index of its view.

        Views are indexed in order of first occurrence.  ``v(a) <= v(b)`` iff
        ``D_a`` is contained in ``D_b`` and ``U_a`` contains ``U_b``.
        """
        keys: dict[tuple[int, int], int] = {}
        fiber = []
        reps = []
        for v in range(self.n):
            key = (self.down[v], self.up[v])
            if key not in keys:
                keys[key] = len(reps)
                reps.append(key)
            fiber.append(keys[key])
        pairs = []
        for x, (dx, ux) in enumerate(reps):
            for y, (dy, uy) in enumerate(reps):
                if x != y and dx & ~dy == 0 and uy & ~ux == 0:
                    pairs.append((x, y))
        return Poset.from_relations(len(reps), pairs), fiber


def co_connected_components(q: Poset) -> list[int]:
    """Components of the incomparability graph, listed bottom to top.

    Distinct components are totally ordered: every vertex of an earlier block is
    below every vertex of a later one.
    """
    seen = 0
    comps = []
    for start in range(q.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= q.incomparable_to(v)
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    comps.sort(key=lambda m: min(q.down[v].bit_count() for v in members(m)))
    return comps


# -- text and JSON formats ----------------------------------------------------

_REL = re.compile(r"^\s*(\S+?)\s*<\s*(\S+)\s*$")


def parse_poset(text: str) -> Poset:
    """Read the ``poset v1`` text format.

    Without a ``names=`` line and with only integer tokens, tokens are vertex
    indices.  Otherwise every token is a name: either fixed up front by
    ``names=a,b,c`` or assigned to the next unused index on first appearance.
    """
    lines = [(k, raw.split("#", 1)[0].strip()) for k, raw in enumerate(text.splitlines(), 1)]
    lines = [(k, s) for k, s in lines if s]
    if not lines or lines[0][1] != "poset v1":
        raise PosetParseError(lines[0][0] if lines else 1, "expected header 'poset v1'")
    if len(lines) < 2 or not re.fullmatch(r"n\s*=\s*\d+", lines[1][1]):
        raise PosetParseError(lines[1][0] if len(lines) > 1 else 2, "expected 'n=<count>'")
    n = int(lines[1][1].split("=")[1])
    names: list[str | None] = [None] * n
    index: dict[str, int] = {}
    names_fixed = False
    body = lines[2:]
    if body and body[0][1].startswith("names="):
        k, s = body[0]
        given = [t.strip() for t in s[len("names="):].split(",") if t.strip()]
        if len(given) != n or len(set(given)) != n:
            raise PosetParseError(k, f"names= must list {n} distinct names")
        names = list(given)
        index = {t: v for v, t in enumerate(given)}
        names_fixed = True
        body = body[1:]

    rels = []
    for k, s in body:
        m = _REL.match(s)
        if not m:
            raise PosetParseError(k, f"expected 'a<b', got {s!r}")
        rels.append((k, m.group(1), m.group(2)))
    by_index = not index and all(a.isdigit() and b.isdigit() for _, a, b in rels)

    def resolve(tok: str, k: int) -> int:
        if by_index:
            v = int(tok)
            if v >= n:
                raise PosetParseError(k, f"vertex {v} out of range for n={n}")
            return v
        if tok in index:
            return index[tok]
        if names_fixed:
            raise PosetParseError(k, f"unknown vertex name {tok!r}")
        try:
            v = names.index(None)
        except ValueError:
            raise PosetParseError(k, f"too many distinct vertex names (n={n})") from None
        names[v] = tok
        index[tok] = v
        return v

    pairs = []
    line_of: dict[tuple[int, int], int] = {}
    for k, left, right in rels:
        a, b = resolve(left, k), resolve(right, k)
        if a == b:
            raise PosetParseError(k, f"reflexive relation {left}<{right}")
        pairs.append((a, b))
        line_of.setdefault((a, b), k)
    final_names = None
    if not by_index:
        final_names = [nm if nm is not None else str(v) for v, nm in enumerate(names)]
    try:
        return Poset.from_relations(n, pairs, final_names)
    except CycleError as err:
        cyc = err.cycle
        steps = [(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))]
        label = final_names or [str(v) for v in range(n)]
        path = " < ".join(label[v] for v in cyc + cyc[:1])
        raise PosetParseError(max(line_of[e] for e in steps),
                              f"relations form a cycle: {path}") from err


def format_poset(p: Poset) -> str:
    out = ["poset v1", f"n={p.n}"]
    if p.names is not None:
        out.append("names=" + ",".join(p.names))
    out.extend(f"{p.name(a)}<{p.name(b)}" for a, b in p.covers())
    return "\n".join(out) + "\n"


def poset_to_json(p: Poset) -> dict:
    return {
        "format": "poset v1",
        "n": p.n,
        "names": [p.name(v) for v in range(p.n)],
        "relations": [[p.name(a), p.name(b)] for a, b in p.covers()],
    }


def poset_from_json(data: dict | str) -> Poset:
    if isinstance(data, str):
        data = json.loads(data)
    names = list(data.get("names") or [str(v) for v in range(data["n"])])
    index = {nm: v for v, nm in enumerate(names)}
    pairs = [(index[str(a)], index[str(b)]) for a, b in data.get("relations", [])]
    return Poset.from_relations(int(data["n"]), pairs, names)


def _find_cycle(n: int, edges: list[tuple[int, int]], start: int) -> list[int]:
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    parent = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w == start:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if w not in parent:
                parent[w] = v
                stack.append(w)
    return [start]
