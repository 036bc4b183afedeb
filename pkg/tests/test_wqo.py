import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from heyting.catalog import prohibited, zn
from heyting.errors import HeadNotZ4, NotProjectiveShape, TrivialAlgebra
from heyting.kernel import ordinal_sum
from heyting.morphisms import embeds
from heyting.wqo import (
    Signature,
    block,
    block_signature,
    dominates,
    embedding_order,
    fast_embeds,
    from_word,
    max_antichain,
    p_prime_words,
    projective_shape,
    word_size,
)


def test_projective_shape_examples():
    assert projective_shape(zn(5)) == ["Z4", "Z2"]
    assert projective_shape(zn(2)) == ["Z2"]
    assert projective_shape(zn(6)) is None
    assert projective_shape(zn(4)) is None  # not s.i.
    with pytest.raises(TrivialAlgebra):
        projective_shape(zn(1))


def test_block_signature_examples():
    z4, z2 = zn(4), zn(2)
    assert block_signature(ordinal_sum(zn(5), zn(5))) == Signature(1, (1, 1))
    assert block_signature(ordinal_sum(z4, z4, z2)) == Signature(2, (2,))
    assert block_signature(ordinal_sum(z4, z2, z2)) == Signature(1, (1, 0))
    with pytest.raises(HeadNotZ4):
        block_signature(zn(3))
    with pytest.raises(NotProjectiveShape):
        block_signature(prohibited(1))
    assert str(Signature(1, (1, 0))) == "(1; 1 0)"


def test_dominates_examples():
    assert dominates(Signature(1, (1,)), Signature(1, (1, 1)))
    assert not dominates(Signature(2, (2,)), Signature(1, (1, 1)))
    assert dominates(Signature(1, (1, 0)), Signature(2, (2, 1)))


def _exhaustive(u, v):
    return any(all(a <= v[j] for a, j in zip(u, idx)) for idx in itertools.combinations(range(len(v)), len(u)))


words = st.lists(st.integers(0, 3), min_size=1, max_size=6)


@given(words, words)
def test_greedy_matches_exhaustive_domination(u, v):
    assert dominates(Signature(0, tuple(u)), Signature(0, tuple(v))) == _exhaustive(u, v)


@given(st.lists(st.integers(0, 3), min_size=0, max_size=4), st.integers(1, 3))
def test_from_word_round_trip(rest, head):
    word = (head, *rest)
    alg = from_word(word)
    assert alg.size == word_size(word)
    assert block_signature(alg) == Signature(head, word)


def test_block_sizes():
    assert [block(n).size for n in range(4)] == [2, 5, 8, 11]


def test_fast_embeds_is_sound_and_never_negative():
    a1, a2 = block(1), block(2)
    assert fast_embeds(a1, a2) is True
    assert embeds(a1, a2) is not None
    assert fast_embeds(a2, a1) is None
    assert fast_embeds(zn(6), zn(7)) is None


def test_p_prime_words_are_complete():
    ws = p_prime_words(10, 3)
    assert all(w[0] > 0 and word_size(w) <= 10 for w in ws)
    expected = set()
    for k in range(1, 10):
        for w in itertools.product(range(4), repeat=k):
            if w[0] > 0 and word_size(w) <= 10:
                expected.add(w)
    assert set(ws) == expected


def _brute_width(n, rel):
    comparable = {(i, j) for i, j in rel} | {(j, i) for i, j in rel}
    for k in range(n, 0, -1):
        for s in itertools.combinations(range(n), k):
            if all((i, j) not in comparable for i, j in itertools.combinations(s, 2)):
                return k
    return 0


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=14))
def test_max_antichain_matches_brute_force(edges):
    n = 8
    # transitive closure of an acyclic relation (edges go from smaller to larger index)
    rel = {(min(i, j), max(i, j)) for i, j in edges if i != j}
    changed = True
    while changed:
        extra = {(i, l) for i, j in rel for k, l in rel if j == k} - rel
        rel |= extra
        changed = bool(extra)
    anti, chains = max_antichain(n, rel)
    assert len(anti) == len(chains) == _brute_width(n, rel)
    assert sorted(x for c in chains for x in c) == list(range(n))
    for c in chains:
        assert all((c[i], c[i + 1]) in rel for i in range(len(c) - 1))
    assert all((i, j) not in rel and (j, i) not in rel for i, j in itertools.combinations(anti, 2))


def test_embedding_order_small_matches_brute_force():
    words = p_prime_words(10, 2)
    algs = [from_word(w) for w in words]
    rel = embedding_order(algs)
    for i, j in itertools.permutations(range(len(algs)), 2):
        assert ((i, j) in rel) == oracles.brute_embeds(algs[i], algs[j])


def test_antichain_golden_up_to_18_elements():
    words = p_prime_words(18, 10)
    assert len(words) == 276
    algs = [from_word(w) for w in words]
    rel = embedding_order(algs)
    assert len(rel) == 7969
    anti, chains = max_antichain(len(algs), rel)
    assert len(anti) == len(chains) == 88
