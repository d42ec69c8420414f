"""Counting and listing bicoloured graphs, and recognising tangles among them.

Unlabelled counts use Burnside's lemma over ``S_i x S_j``: a pair of cycle
types (lambda, mu) fixes ``2^(sum gcd(p, q))`` adjacency matrices, the sum
running over cycles p of lambda and q of mu.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from pathlib import Path
from typing import Iterator

from .bigraph import BicolouredGraph, aut_order_bicoloured
from .series import TruncatedSeries
from .tangles import Tangle, decompose

CACHE_ENV = "THREEPLUSONE_CACHE"
CACHE_VERSION = 1

__all__ = [
    "BicolouredGraph", "aut_order_bicoloured", "count_labelled", "count_unlabelled",
    "enumerate_unlabelled", "is_single_tangle", "tangle_catalog", "tangles_of_shape",
    "tangle_series_unlabelled", "tangle_series_labelled", "partitions",
]


def count_labelled(i: int, j: int) -> int:
    return 2 ** (i * j)


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` with parts in descending order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _cycle_types(n: int) -> tuple[tuple[tuple[tuple[int, int], ...], int], ...]:
    """Each cycle type of S_n as ((part, multiplicity), ...) with its class size."""
    out = []
    for lam in partitions(n):
        mult = Counter(lam)
        z = 1
        for part, m in mult.items():
            z *= part ** m * factorial(m)
        out.append((tuple(sorted(mult.items())), factorial(n) // z))
    return tuple(out)


@lru_cache(maxsize=None)
def count_unlabelled(i: int, j: int) -> int:
    """Bicoloured graphs with ``i`` tops and ``j`` bottoms up to colour-preserving isomorphism."""
    if i < 0 or j < 0:
        raise ValueError("sizes must be nonnegative")
    total = 0
    for lam, size_l in _cycle_types(i):
        for mu, size_m in _cycle_types(j):
            exponent = sum(ml * mm * gcd(p, q) for p, ml in lam for q, mm in mu)
            total += size_l * size_m << exponent
    return total // (factorial(i) * factorial(j))


def count_unlabelled_total(n: int) -> int:
    return sum(count_unlabelled(i, n - i) for i in range(n + 1))


def count_labelled_total(n: int) -> int:
    return sum(comb(n, i) * count_labelled(i, n - i) for i in range(n + 1))


# -- enumeration ------------------------------------------------------------------

def _extensions(i: int, j: int) -> Iterator[BicolouredGraph]:
    """Graphs of shape (i, j) obtained by adding a bottom to each (i, j-1) class."""
    for g in enumerate_unlabelled(i, j - 1):
        for col in range(1 << i):
            rows = tuple(r | ((col >> t & 1) << (j - 1)) for t, r in enumerate(g.rows))
            yield BicolouredGraph(i, j, rows)


@lru_cache(maxsize=None)
def enumerate_unlabelled(i: int, j: int) -> tuple[BicolouredGraph, ...]:
    """One canonical representative per isomorphism class, sorted."""
    if i == 0 or j == 0:
        return (BicolouredGraph(i, j, (0,) * i),)
    if i > j:
        seen = {g.transpose().canonical() for g in enumerate_unlabelled(j, i)}
    else:
        seen = {g.canonical() for g in _extensions(i, j)}
    return tuple(sorted(seen))


def _may_be_tangle(g: BicolouredGraph) -> bool:
    # every vertex of a tangle sits in an induced (2+2), so no row or column is empty or full
    full_row, full_col = (1 << g.j) - 1, (1 << g.i) - 1
    return (all(0 < r < full_row for r in g.rows)
            and all(0 < col < full_col for col in g.columns()))


def is_single_tangle(g: BicolouredGraph) -> bool:
    """True iff the two-level poset of ``g`` decomposes into one tangle covering it."""
    if g.i < 2 or g.j < 2:
        return False
    parts = decompose(g.to_poset()).parts
    if len(parts) != 1 or not isinstance(parts[0], Tangle):
        return False
    bottoms = (1 << g.j) - 1
    return parts[0].bottom == bottoms and parts[0].top == ((1 << g.n) - 1) & ~bottoms


def _compute_tangles(i: int, j: int) -> tuple[BicolouredGraph, ...]:
    if i < 2 or j < 2:
        return ()
    if i > j:
        # the dual of a tangle is a tangle with tops and bottoms exchanged
        return tuple(sorted(g.transpose().canonical() for g in tangles_of_shape(j, i)))
    seen = set()
    for g in _extensions(i, j):
        if _may_be_tangle(g):
            seen.add(g.canonical())
    return tuple(sorted(g for g in seen if is_single_tangle(g)))


def cache_dir() -> Path:
    root = os.environ.get(CACHE_ENV)
    if root:
        return Path(root)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "threeplusone"


def _cache_path(i: int, j: int) -> Path:
    return cache_dir() / f"tangles-v{CACHE_VERSION}-{i}x{j}.json"


def _read_cache(i: int, j: int) -> tuple[BicolouredGraph, ...] | None:
    path = _cache_path(i, j)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != CACHE_VERSION or data.get("i") != i or data.get("j") != j:
        return None
    return tuple(BicolouredGraph(i, j, tuple(rows)) for rows in data["graphs"])


def _write_cache(i: int, j: int, graphs: tuple[BicolouredGraph, ...]) -> None:
    path = _cache_path(i, j)
    payload = {"version": CACHE_VERSION, "kind": "tangles", "i": i, "j": j,
               "count": len(graphs), "graphs": [list(g.rows) for g in graphs]}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except OSError:
        pass


@lru_cache(maxsize=None)
def tangles_of_shape(i: int, j: int) -> tuple[BicolouredGraph, ...]:
    """Unlabelled tangles with ``i`` tops and ``j`` bottoms (disk cached)."""
    cached = _read_cache(i, j)
    if cached is not None:
        return cached
    graphs = _compute_tangles(i, j)
    _write_cache(i, j, graphs)
    return graphs


def tangle_catalog(n_total: int) -> list[BicolouredGraph]:
    """All unlabelled tangles on ``n_total`` vertices, over every top/bottom split."""
    out: list[BicolouredGraph] = []
    for i in range(2, n_total - 1):
        out.extend(tangles_of_shape(i, n_total - i))
    return out


# -- generating functions ---------------------------------------------------------

def bicoloured_series_unlabelled(order: int) -> TruncatedSeries:
    return TruncatedSeries(2, order, {(i, d - i): count_unlabelled(i, d - i)
                                      for d in range(order + 1) for i in range(d + 1)})


def bicoloured_series_labelled(order: int) -> TruncatedSeries:
    return TruncatedSeries(2, order, {
        (i, d - i): Fraction(count_labelled(i, d - i), factorial(i) * factorial(d - i))
        for d in range(order + 1) for i in range(d + 1)})


def tangle_series_unlabelled(order: int) -> TruncatedSeries:
    """``1 - x - y - 1/B(x, y)`` with B the unlabelled bicoloured OGF."""
    x = TruncatedSeries.variable(0, 2, order)
    y = TruncatedSeries.variable(1, 2, order)
    return 1 - x - y - bicoloured_series_unlabelled(order).reciprocal()


def tangle_series_labelled(order: int) -> TruncatedSeries:
    """``e^-x + e^-y - 1 - 1/B(x, y)`` with B the labelled bicoloured EGF."""
    ex = TruncatedSeries.exp(0, 2, order, scale=-1)
    ey = TruncatedSeries.exp(1, 2, order, scale=-1)
    return ex + ey - 1 - bicoloured_series_labelled(order).reciprocal()
