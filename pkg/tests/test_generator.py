import random
from math import factorial

import pytest

from threeplusone.bigraph import BicolouredGraph
from threeplusone.canon import poset_certificate
from threeplusone.counting import p_unl
from threeplusone.generator import (
    AssemblyError, assemble, count_generated, counts_by_skeleton, generate_all,
    generate_with_data, oracle_all_posets, oracle_canonical_form, oracle_count_labelled,
    oracle_count_unlabelled,
)
from threeplusone.poset import Poset
from threeplusone.skeleton import Letter, format_word, lex_max, parse_word, skeleton_of
from threeplusone.tangles import CloneSet, aut_order, decompose

from conftest import free_posets, shuffled

MATCHING = BicolouredGraph.from_edges(2, 2, [(0, 0), (1, 1)])


# -- assemble -----------------------------------------------------------------------

def test_single_clone_set_is_an_antichain():
    assert assemble(parse_word("c1"), [5]) == Poset.antichain(5)


def test_clone_chain():
    assert assemble(parse_word("c1.c2.c3.c4"), [1, 1, 1, 1]) == Poset.chain(4)


def test_listing_data_rebuilds_sample(sample):
    p = assemble(parse_word("c1.c2.c3.t12.c4.c3"), [1, 2, 1, MATCHING, 1, 1])
    assert poset_certificate(p) == poset_certificate(sample)
    assert format_word(skeleton_of(p)) == "c1.c2.c3.c4.t12.c3"


def test_assemble_errors():
    with pytest.raises(AssemblyError, match="skeleton"):
        assemble(parse_word("c1.c1"), [1, 1])
    with pytest.raises(AssemblyError, match="letters"):
        assemble(parse_word("c1.c2"), [1])
    with pytest.raises(AssemblyError, match="tangle"):
        assemble(parse_word("t12"), [BicolouredGraph.from_matrix([[1, 1], [1, 1]])])
    with pytest.raises(AssemblyError):
        assemble(parse_word("c1"), [0])
    with pytest.raises(AssemblyError):
        assemble(parse_word("t12"), [3])


def test_assembled_levels_follow_letters():
    p = assemble(parse_word("c1.t12.c3"), [2, MATCHING, 1])
    assert [m.bit_count() for m in p.levels()] == [4, 2, 1]


# -- generate_all ----------------------------------------------------------------------

def test_small_generation():
    assert list(generate_all(0)) == [Poset.antichain(0)]
    assert len(list(generate_all(3))) == 5


@pytest.mark.parametrize("n", range(0, 10))
def test_counts_match_series(n):
    expected = p_unl(9)[n]
    assert count_generated(n) == expected
    assert len(free_posets(n)) == expected
    assert sum(counts_by_skeleton(n).values()) == expected


@pytest.mark.parametrize("n", range(1, 10))
def test_round_trip(n):
    rng = random.Random(n)
    for word, data, p in generate_with_data(n):
        q, _ = shuffled(p, rng)
        assert skeleton_of(q) == word
        d = decompose(q)
        # occurrences of one letter keep their relative order in every representative
        listed = [Letter(*x.letter) for x in d.parts]
        assert lex_max(listed) == word
        seen: dict = {}
        mine = {}
        for k, x in enumerate(word):
            mine[(x, seen.get(x, 0))] = data[k]
            seen[x] = seen.get(x, 0) + 1
        seen = {}
        for x, part in zip(listed, d.parts):
            expect = mine[(x, seen.get(x, 0))]
            seen[x] = seen.get(x, 0) + 1
            if isinstance(part, CloneSet):
                assert part.size == expect
            else:
                assert part.graph.canonical() == expect


@pytest.mark.parametrize("n", range(0, 10))
def test_injective(n):
    certs = {poset_certificate(p) for p in free_posets(n)}
    assert len(certs) == len(free_posets(n))


@pytest.mark.parametrize("n", range(0, 8))
def test_complete(n):
    generated = {oracle_canonical_form(p) for p in free_posets(n)}
    for p in oracle_all_posets(n):
        if p.is_3plus1_free():
            assert oracle_canonical_form(p) in generated


@pytest.mark.parametrize("n", range(1, 10))
def test_assembled_posets_obey_level_laws(n):
    for p in free_posets(n):
        assert p.is_3plus1_free()
        lev = p.level_of()
        for a in range(n):
            for b in range(n):
                if lev[a] <= lev[b] - 2:
                    assert p.less(a, b)
                if lev[a] == lev[b]:
                    assert p.up[a] & ~p.up[b] == 0 or p.down[a] & ~p.down[b] == 0


@pytest.mark.parametrize("n", range(0, 7))
def test_orbit_counting_bridge(n):
    total = sum(factorial(n) // aut_order(p) for p in free_posets(n))
    assert total == oracle_count_labelled(n)


# -- oracles ------------------------------------------------------------------------

def test_oracle_examples():
    assert oracle_count_unlabelled(1) == 1
    assert oracle_count_unlabelled(4) == 15
    assert oracle_count_labelled(0) == 1
    assert oracle_count_labelled(2) == 3


def test_oracle_seven():
    assert oracle_count_unlabelled(7) == 639


def test_oracle_counts_all_posets():
    assert [len(oracle_all_posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_oracle_bounds():
    with pytest.raises(ValueError, match="n <= 7"):
        oracle_all_posets(8)
    with pytest.raises(ValueError, match="n <= 6"):
        oracle_count_labelled(7)


def test_oracle_form_distinguishes_non_isomorphic():
    a = Poset.from_relations(3, [(0, 1)])
    b = Poset.from_relations(3, [(0, 1), (0, 2)])
    assert oracle_canonical_form(a) != oracle_canonical_form(b)
    assert oracle_canonical_form(a) == oracle_canonical_form(a.relabel([2, 0, 1]))


def test_generated_parts_are_consistent():
    for word, data, p in generate_with_data(6):
        assert p.n == sum(d if isinstance(d, int) else d.n for d in data)
        assert len(decompose(p).parts) == len(word)
