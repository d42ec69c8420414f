"""Building (3+1)-free posets from skeleta and parts, plus brute-force oracles.

A poset is fixed up to isomorphism by its skeleton word together with a clone
set size for every ``c`` letter and an unlabelled tangle for every ``t``
letter.  Running over all such data once gives every isomorphism class once.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, NamedTuple, Sequence, Union

from .bicoloured import is_single_tangle, tangle_catalog
from .bigraph import BicolouredGraph
from .poset import Poset, members
from .skeleton import Letter, Word, enumerate_skeleta, format_word, is_valid_skeleton

PartDatum = Union[int, BicolouredGraph]

ORACLE_UNLABELLED_MAX = 7
ORACLE_LABELLED_MAX = 6


class AssemblyError(ValueError):
    pass


class Generated(NamedTuple):
    word: Word
    data: tuple  # clone size or tangle graph per letter
    poset: Poset


def assemble(word: Sequence[Letter], data: Sequence[PartDatum], check: bool = True) -> Poset:
    """Poset whose compatible listing is ``word`` with the given parts.

    Clone letter ``c_i`` with size ``k`` gives ``k`` vertices on level ``i``;
    tangle letter ``t_i`` with graph ``G`` puts G's bottoms on level ``i`` and
    its tops on level ``i+1``.  Vertices are numbered part by part, bottoms
    before tops.
    """
    word = tuple(word)
    if len(word) != len(data):
        raise AssemblyError(f"{len(word)} letters but {len(data)} parts")
    if check and not is_valid_skeleton(word):
        raise AssemblyError(f"{format_word(word)} is not a valid skeleton")
    level: list[int] = []
    part: list[int] = []
    pairs: list[tuple[int, int]] = []
    for k, (x, d) in enumerate(zip(word, data)):
        base = len(level)
        if x.kind == "c":
            if not isinstance(d, int) or d < 1:
                raise AssemblyError(f"clone letter {x} needs a positive size, got {d!r}")
            level.extend([x.index] * d)
            part.extend([k] * d)
        else:
            if not isinstance(d, BicolouredGraph):
                raise AssemblyError(f"tangle letter {x} needs a bicoloured graph")
            if check and not is_single_tangle(d):
                raise AssemblyError(f"graph {d} for letter {x} is not a single tangle")
            level.extend([x.index] * d.j + [x.index + 1] * d.i)
            part.extend([k] * d.n)
            pairs.extend((base + b, base + d.j + t) for t, b in d.edges())
    n = len(level)
    down = [0] * n
    for a, b in pairs:
        down[b] |= 1 << a
    for b in range(n):
        lb, pb = level[b], part[b]
        for a in range(n):
            if part[a] != pb and (level[a] <= lb - 2 or (level[a] == lb - 1 and part[a] < pb)):
                down[b] |= 1 << a
    if check:
        p = Poset.from_relations(n, [(a, b) for b in range(n) for a in members(down[b])])
        if p.down != tuple(down):
            raise AssemblyError("assembled relation is not transitive")
        return p
    return Poset._from_down(down)


def _fillings(word: Word, budget: int) -> Iterator[tuple[PartDatum, ...]]:
    """Per-letter data using exactly ``budget`` vertices."""
    minimum = [0] * (len(word) + 1)
    for k in range(len(word) - 1, -1, -1):
        minimum[k] = minimum[k + 1] + word[k].weight
    chosen: list[PartDatum] = []

    def fill(k: int, left: int) -> Iterator[tuple[PartDatum, ...]]:
        if k == len(word):
            if left == 0:
                yield tuple(chosen)
            return
        spare = left - minimum[k + 1]
        if word[k].kind == "c":
            sizes = range(1, spare + 1)
            options: Iterator[PartDatum] = iter(sizes)
        else:
            options = (g for m in range(4, spare + 1) for g in tangle_catalog(m))
        for d in options:
            chosen.append(d)
            yield from fill(k + 1, left - (d if isinstance(d, int) else d.n))
            chosen.pop()

    yield from fill(0, budget)


def generate_with_data(n: int) -> Iterator[Generated]:
    """Every isomorphism class of (3+1)-free posets on ``n`` vertices, once each."""
    for word in enumerate_skeleta(n):
        for data in _fillings(word, n):
            yield Generated(word, data, assemble(word, data, check=False))


def generate_all(n: int) -> Iterator[Poset]:
    for item in generate_with_data(n):
        yield item.poset


def count_generated(n: int) -> int:
    """Number of classes ``generate_all(n)`` yields, without assembling them."""
    return sum(1 for w in enumerate_skeleta(n) for _ in _fillings(w, n))


def counts_by_skeleton(n: int) -> dict[str, int]:
    return {format_word(w): k for w in enumerate_skeleta(n)
            if (k := sum(1 for _ in _fillings(w, n)))}


# -- brute-force oracles ------------------------------------------------------------

def oracle_canonical_form(p: Poset) -> tuple:
    """Smallest relation matrix over relabellings that keep (level, in, out) cells in order."""
    lev = p.level_of()
    inv = [(lev[v], p.down[v].bit_count(), p.up[v].bit_count()) for v in range(p.n)]
    cells: dict[tuple, list[int]] = {}
    for v in range(p.n):
        cells.setdefault(inv[v], []).append(v)
    keys = sorted(cells)
    best = None

    def rec(k: int, order: list[int]) -> None:
        nonlocal best
        if k == len(keys):
            pos = {v: x for x, v in enumerate(order)}
            rows = tuple(sum(1 << pos[w] for w in members(p.up[v])) for v in order)
            if best is None or rows < best:
                best = rows
            return
        for perm in permutations(cells[keys[k]]):
            rec(k + 1, order + list(perm))

    rec(0, [])
    return (p.n, tuple(inv[v] for k in keys for v in cells[k]), best)


def _ideals(p: Poset) -> Iterator[int]:
    for s in range(1 << p.n):
        if all(p.down[v] & ~s == 0 for v in members(s)):
            yield s


def _filters(p: Poset) -> list[int]:
    return [s for s in range(1 << p.n) if all(p.up[v] & ~s == 0 for v in members(s))]


def _add_vertex(p: Poset, below: int, above: int) -> Poset:
    n = p.n
    down = list(p.down)
    for u in members(above):
        down[u] |= below | (1 << n)
    down.append(below)
    return Poset._from_down(down)


def oracle_all_posets(n: int) -> list[Poset]:
    """All posets on ``n`` vertices up to isomorphism, by adding a maximal vertex."""
    if n > ORACLE_UNLABELLED_MAX:
        raise ValueError(f"oracle is limited to n <= {ORACLE_UNLABELLED_MAX}")
    level = {oracle_canonical_form(Poset.antichain(0)): Poset.antichain(0)}
    for _ in range(n):
        nxt: dict[tuple, Poset] = {}
        for p in level.values():
            for ideal in _ideals(p):
                q = _add_vertex(p, ideal, 0)
                nxt.setdefault(oracle_canonical_form(q), q)
        level = nxt
    return list(level.values())


def oracle_count_unlabelled(n: int) -> int:
    return sum(1 for p in oracle_all_posets(n) if p.is_3plus1_free())


def oracle_count_labelled(n: int) -> int:
    """Labelled (3+1)-free posets on ``n`` vertices.

    Vertex ``k`` is inserted into each poset on ``0..k-1`` with every
    consistent (downset, upset) pair; (3+1)-freeness is inherited by induced
    subposets, so only free posets are extended.
    """
    if n > ORACLE_LABELLED_MAX:
        raise ValueError(f"oracle is limited to n <= {ORACLE_LABELLED_MAX}")
    layer = [Poset.antichain(0)]
    for _ in range(n):
        nxt = []
        for p in layer:
            ups = _filters(p)
            for below in _ideals(p):
                allowed = p.full
                for d in members(below):
                    allowed &= p.up[d]
                for above in ups:
                    if above & ~allowed == 0:
                        q = _add_vertex(p, below, above)
                        if q.is_3plus1_free():
                            nxt.append(q)
        layer = nxt
    return len(layer)
