import json
import random
from itertools import permutations, product
from math import factorial

import pytest

from threeplusone.bigraph import BicolouredGraph
from threeplusone.poset import NotThreePlusOneFree, Poset, co_connected_components, members
from threeplusone.tangles import (
    CloneSet, aut_order, bottom_tie, decompose, listing_law_violations, match_tangles,
    tangle_components, top_tie,
)

from conftest import free_posets, shuffled
from oracles import count_automorphisms


def names(p, mask):
    return {p.name(v) for v in members(mask)}


def two_plus_two():
    return Poset.from_relations(4, [(0, 2), (1, 3)])


def three_top_example():
    # a1 a2 a3 above c1 c2, b above d; every a_i incomparable to d, b incomparable to the c_j
    labels = ["c1", "c2", "d", "a1", "a2", "a3", "b"]
    ix = {s: k for k, s in enumerate(labels)}
    pairs = [(ix[c], ix[a]) for a in ("a1", "a2", "a3") for c in ("c1", "c2")]
    pairs.append((ix["d"], ix["b"]))
    return Poset.from_relations(7, pairs, labels)


def test_ties_on_sample(sample, V):
    assert top_tie(sample, V["f"], V["g"])
    assert bottom_tie(sample, V["b"], V["c"])
    assert not bottom_tie(sample, V["a"], V["b"])
    assert not top_tie(sample, V["f"], V["f"])


def test_tangle_components_sample(sample):
    tops, bottoms = tangle_components(sample)
    assert [names(sample, m) for m in tops] == [{"f", "g"}]
    assert [names(sample, m) for m in bottoms] == [{"b", "c"}]


def test_tangle_components_two_level_example():
    p = three_top_example()
    tops, bottoms = tangle_components(p)
    assert [names(p, m) for m in tops] == [{"a1", "a2", "a3", "b"}]
    assert [names(p, m) for m in bottoms] == [{"c1", "c2", "d"}]
    (tg,) = match_tangles(p)
    assert names(p, tg.top) == {"a1", "a2", "a3", "b"}


@pytest.mark.parametrize("n", range(1, 7))
def test_no_tangles_without_2plus2(n):
    for p in free_posets(n):
        if p.contains_2plus2() is None:
            assert tangle_components(p) == ([], [])
            assert match_tangles(p) == []


def test_rejects_non_3plus1_free():
    p = Poset.from_relations(4, [(0, 1), (1, 2)])
    with pytest.raises(NotThreePlusOneFree) as err:
        tangle_components(p)
    assert len(err.value.witness) == 4
    with pytest.raises(NotThreePlusOneFree):
        decompose(p)


def test_match_tangles_examples(sample):
    (tg,) = match_tangles(sample)
    assert names(sample, tg.top) == {"f", "g"} and names(sample, tg.bottom) == {"b", "c"}
    (tg,) = match_tangles(two_plus_two())
    assert tg.mask == 0b1111


def test_sample_listing(sample):
    d = decompose(sample)
    shown = []
    for x in d.parts:
        if isinstance(x, CloneSet):
            shown.append(("c", x.level, names(sample, x.mask)))
        else:
            shown.append(("t", x.level, names(sample, x.top), names(sample, x.bottom)))
    assert shown == [
        ("c", 1, {"a"}),
        ("c", 2, {"d", "e"}),
        ("c", 3, {"h"}),
        ("t", 1, {"f", "g"}, {"b", "c"}),
        ("c", 4, {"j"}),
        ("c", 3, {"i"}),
    ]
    assert d.word() == [("c", 1), ("c", 2), ("c", 3), ("t", 1), ("c", 4), ("c", 3)]
    tg = d.tangles[0]
    assert tg.graph == BicolouredGraph(2, 2, tg.graph.rows)
    assert sorted(tg.graph.rows) == [1, 2]


def test_small_listings():
    d = decompose(Poset.antichain(4))
    assert len(d.parts) == 1 and d.parts[0].size == 4 and d.parts[0].level == 1
    d = decompose(Poset.chain(3))
    assert [(x.vertices, x.level) for x in d.parts] == [((0,), 1), ((1,), 2), ((2,), 3)]
    assert decompose(Poset.antichain(0)).parts == ()


def test_aut_order_examples(sample):
    for n in range(6):
        assert aut_order(Poset.antichain(n)) == factorial(n)
    assert aut_order(two_plus_two()) == 2 == count_automorphisms(two_plus_two())
    assert aut_order(sample) == 4


def test_sample_aut_order_by_brute_force(sample):
    # brute force over level-preserving bijections, and a plain backtracking search
    levels = [members(m) for m in sample.levels()]
    rel = set(sample.relations())
    count = 0
    for choice in product(*(permutations(L) for L in levels)):
        perm = {}
        for L, image in zip(levels, choice):
            perm.update(zip(L, image))
        if {(perm[a], perm[b]) for a, b in rel} == rel:
            count += 1
    assert count == 4
    assert count_automorphisms(sample) == 4


def test_decompose_json(sample):
    data = json.loads(json.dumps(decompose(sample).to_json()))
    assert data["n"] == 10 and data["aut_order"] == "4"
    assert [p["index"] for p in data["parts"]] == list(range(6))
    tangle = data["parts"][3]
    assert tangle["kind"] == "tangle" and tangle["levels"] == [1, 2]
    assert sorted(tangle["top"]) == ["f", "g"] and sorted(tangle["bottom"]) == ["b", "c"]
    assert sorted(map(tuple, tangle["edges"])) == [("b", "f"), ("c", "g")]
    assert data["parts"][0] == {"index": 0, "kind": "clone", "levels": [1], "vertices": ["a"]}


# -- exhaustive properties ----------------------------------------------------------

def check_decomposition(p):
    d = decompose(p)
    lev = p.level_of()
    covered = 0
    for x in d.parts:
        assert not covered & x.mask
        covered |= x.mask
        if isinstance(x, CloneSet):
            assert len({lev[v] for v in x.vertices}) == 1
            assert all(p.is_clone(x.vertices[0], v) for v in x.vertices)
        else:
            assert {lev[v] for v in members(x.bottom)} == {x.level}
            assert {lev[v] for v in members(x.top)} == {x.level + 1}
            assert x.top.bit_count() >= 2 and x.bottom.bit_count() >= 2
            assert not x.top & x.bottom
    assert covered == p.full
    assert listing_law_violations(p, d.parts, lev) == []
    tops, bottoms = tangle_components(p)
    assert len(tops) == len(bottoms) == len(d.tangles)
    assert sorted(t.top for t in d.tangles) == sorted(tops)
    assert sorted(t.bottom for t in d.tangles) == sorted(bottoms)
    return d


@pytest.mark.parametrize("n", range(1, 10))
def test_decomposition_properties(n):
    rng = random.Random(n)
    for p in free_posets(n):
        q, _ = shuffled(p, rng)
        check_decomposition(q)


@pytest.mark.parametrize("n", range(1, 10))
def test_level_gap_law(n):
    for p in free_posets(n):
        lev = p.level_of()
        for a in range(n):
            for b in range(n):
                if lev[a] <= lev[b] - 2:
                    assert p.less(a, b)


@pytest.mark.parametrize("n", range(1, 8))
def test_aut_order_matches_brute_force(n):
    rng = random.Random(100 + n)
    for p in free_posets(n):
        q, _ = shuffled(p, rng)
        assert aut_order(q) == count_automorphisms(q)


@pytest.mark.parametrize("n", range(1, 9))
def test_co_connected_preimages_are_parts(n):
    # each co-connected block of the view poset pulls back to a clone set, or to
    # the top or bottom of one tangle
    for p in free_posets(n):
        q, fiber = p.view_poset()
        pieces = set()
        for x in decompose(p).parts:
            if isinstance(x, CloneSet):
                pieces.add(x.mask)
            else:
                pieces.update((x.top, x.bottom))
        for block in co_connected_components(q):
            pre = sum(1 << v for v in range(p.n) if block >> fiber[v] & 1)
            assert pre in pieces
