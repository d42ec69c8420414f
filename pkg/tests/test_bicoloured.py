import json
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest

from threeplusone import bicoloured
from threeplusone.bicoloured import (
    count_labelled, count_labelled_total, count_unlabelled, count_unlabelled_total,
    enumerate_unlabelled, is_single_tangle, partitions, tangle_catalog, tangle_series_labelled,
    tangle_series_unlabelled, tangles_of_shape,
)
from threeplusone.bigraph import BicolouredGraph, aut_order_bicoloured, aut_order_bruteforce
from threeplusone.series import TruncatedSeries, bicoloured_skeleton_series

from oracles import bicoloured_classes_bruteforce

MATCHING = BicolouredGraph.from_edges(2, 2, [(0, 0), (1, 1)])
COMPLETE22 = BicolouredGraph.from_matrix([[1, 1], [1, 1]])


def class_key(g):
    """Same invariant as the brute-force oracle: min over column perms of sorted rows."""
    m = g.matrix()
    return min(tuple(sorted(tuple(r[c] for c in cp) for r in m)) for cp in permutations(range(g.j)))


# -- counting ---------------------------------------------------------------------

def test_labelled_counts():
    assert count_labelled(2, 2) == 16
    assert count_labelled(0, 5) == 1
    assert [count_labelled_total(n) for n in range(4)] == [1, 2, 6, 26]


def test_labelled_total_is_binomial_sum():
    for n in range(10):
        assert count_labelled_total(n) == sum(comb(n, i) * 2 ** (i * (n - i)) for i in range(n + 1))


def test_unlabelled_counts():
    assert [count_unlabelled_total(n) for n in range(5)] == [1, 2, 4, 8, 17]
    assert count_unlabelled_total(2) == 4
    assert count_unlabelled(2, 2) == 7
    assert count_unlabelled(2, 1) == 3


@pytest.mark.parametrize("i,j", [(i, j) for i in range(4) for j in range(4) if i * j <= 9])
def test_unlabelled_count_matches_brute_force(i, j):
    assert count_unlabelled(i, j) == len(bicoloured_classes_bruteforce(i, j))


def test_symmetry():
    for i in range(7):
        for j in range(7):
            assert count_unlabelled(i, j) == count_unlabelled(j, i)


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(0)) == [()]


# -- enumeration -----------------------------------------------------------------------

def test_enumeration_examples():
    assert len(enumerate_unlabelled(1, 1)) == 2
    assert len(enumerate_unlabelled(2, 1)) == 3
    assert len(enumerate_unlabelled(2, 2)) == 7


@pytest.mark.parametrize("n", range(0, 9))
def test_enumeration_matches_burnside(n):
    for i in range(n + 1):
        assert len(enumerate_unlabelled(i, n - i)) == count_unlabelled(i, n - i)


@pytest.mark.parametrize("i,j", [(1, 3), (2, 2), (3, 2), (2, 4), (3, 3)])
def test_enumeration_matches_brute_force_classes(i, j):
    graphs = enumerate_unlabelled(i, j)
    assert {class_key(g) for g in graphs} == bicoloured_classes_bruteforce(i, j)


@pytest.mark.parametrize("n", range(0, 9))
def test_orbit_counting(n):
    for i in range(n + 1):
        j = n - i
        total = sum(Fraction(factorial(i) * factorial(j), g.aut_order())
                    for g in enumerate_unlabelled(i, j))
        assert total == count_labelled(i, j)


def test_canonical_form_is_a_class_invariant():
    g = BicolouredGraph.from_matrix([[1, 0, 1], [0, 1, 1]])
    h = BicolouredGraph.from_matrix([[1, 1, 0], [1, 0, 1]])
    assert g.canonical() == h.canonical()
    other = BicolouredGraph.from_matrix([[1, 1, 1], [0, 0, 1]])
    assert other.canonical() != g.canonical()


# -- automorphisms -------------------------------------------------------------------

def test_aut_examples():
    assert BicolouredGraph(2, 2, (0, 0)).aut_order() == 4
    assert MATCHING.aut_order() == 2
    for i in range(1, 4):
        for j in range(1, 4):
            full = BicolouredGraph(i, j, ((1 << j) - 1,) * i)
            assert full.aut_order() == factorial(i) * factorial(j)


@pytest.mark.parametrize("i,j", [(2, 3), (3, 3), (2, 4), (4, 2)])
def test_aut_matches_brute_force(i, j):
    for g in enumerate_unlabelled(i, j):
        assert aut_order_bicoloured(g) == aut_order_bruteforce(g)


# -- tangles ---------------------------------------------------------------------------

def test_single_tangle_examples():
    assert is_single_tangle(MATCHING)
    assert not is_single_tangle(COMPLETE22)
    # tops a1 a2 a3 b, bottoms c1 c2 d
    three_top = BicolouredGraph.from_matrix([[1, 1, 0], [1, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert is_single_tangle(three_top)


def test_labelled_two_by_two_tangles():
    graphs = [BicolouredGraph(2, 2, (bits & 3, bits >> 2)) for bits in range(16)]
    assert sum(is_single_tangle(g) for g in graphs) == 2
    t = tangle_series_labelled(4)
    assert t[(2, 2)] * 2 * 2 == 2


def test_catalog_small():
    assert tangle_catalog(4) == [MATCHING.canonical()]
    assert all(tangle_catalog(n) == [] for n in range(4))


def test_tangle_series_low_degrees():
    for t in (tangle_series_unlabelled(5), tangle_series_labelled(5)):
        assert all(sum(m) >= 4 for m in t.coeffs)
    assert tangle_series_unlabelled(4)[(2, 2)] == 1


def test_catalog_matches_tangle_series():
    t = tangle_series_unlabelled(9)
    tl = tangle_series_labelled(9)
    for n in range(10):
        for i in range(n + 1):
            j = n - i
            graphs = tangles_of_shape(i, j) if i >= 2 and j >= 2 else ()
            assert t[(i, j)] == len(graphs), (i, j)
            labelled = sum(Fraction(factorial(i) * factorial(j), g.aut_order()) for g in graphs)
            assert tl[(i, j)] * factorial(i) * factorial(j) == labelled, (i, j)


def test_catalog_entries_are_tangles_and_distinct():
    for n in range(4, 9):
        graphs = tangle_catalog(n)
        assert len(set(graphs)) == len(graphs)
        for g in graphs:
            assert is_single_tangle(g) and g.canonical() == g


def test_catalog_is_transpose_closed():
    for i, j in [(2, 3), (3, 4), (2, 5)]:
        assert {g.transpose().canonical() for g in tangles_of_shape(i, j)} == set(tangles_of_shape(j, i))


def test_skeleton_substitution_recovers_bicoloured_series():
    # clone sets of bottoms and of tops, plus tangles, rebuild every bicoloured graph
    order = 8
    x = TruncatedSeries.variable(0, 2, order)
    y = TruncatedSeries.variable(1, 2, order)
    subs = [x * (1 - x).reciprocal(), y * (1 - y).reciprocal(), tangle_series_unlabelled(order)]
    got = bicoloured_skeleton_series(order).compose(subs)
    assert got == bicoloured.bicoloured_series_unlabelled(order)


# -- disk cache -----------------------------------------------------------------------

@pytest.fixture
def tmp_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(bicoloured.CACHE_ENV, str(tmp_path))
    return tmp_path


def test_cache_round_trip(tmp_cache):
    graphs = bicoloured._compute_tangles(3, 3)
    bicoloured._write_cache(3, 3, graphs)
    path = tmp_cache / "tangles-v1-3x3.json"
    data = json.loads(path.read_text())
    assert data["version"] == 1 and data["count"] == len(graphs) == 6
    assert bicoloured._read_cache(3, 3) == graphs
    assert [p.name for p in tmp_cache.iterdir()] == [path.name]


def test_cache_rejects_stale_or_corrupt_files(tmp_cache):
    path = tmp_cache / "tangles-v1-2x2.json"
    path.write_text("{not json")
    assert bicoloured._read_cache(2, 2) is None
    path.write_text(json.dumps({"version": 0, "i": 2, "j": 2, "graphs": []}))
    assert bicoloured._read_cache(2, 2) is None
    path.write_text(json.dumps({"version": 1, "i": 2, "j": 3, "graphs": []}))
    assert bicoloured._read_cache(2, 2) is None


def test_cache_dir_default(monkeypatch, tmp_path):
    monkeypatch.delenv(bicoloured.CACHE_ENV, raising=False)
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
    assert bicoloured.cache_dir() == tmp_path / "threeplusone"
