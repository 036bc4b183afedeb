import pytest

from heyting.catalog import (
    NAMES,
    boolean_cube,
    corpus,
    corpus_list,
    entry,
    is_catalog_name,
    lookup,
    p5_prime,
    prohibited,
    star,
    star_partner,
    z5_prime,
    zn,
)
from heyting.errors import InvalidInput, OutOfRange, SizeLimitExceeded
from heyting.kernel import closure, is_isomorphic, ordinal_sum, product, restrict
from heyting.morphisms import embeds
from heyting.structure import classify, ideal_algebra, is_si


@pytest.mark.parametrize("name", NAMES)
def test_every_entry_verifies(name):
    assert entry(name).verify()


def test_sizes():
    assert [zn(n).size for n in range(1, 11)] == list(range(1, 11))
    assert [prohibited(i).size for i in range(1, 6)] == [7, 8, 9, 10, 14]
    assert boolean_cube().size == 8
    assert z5_prime().size == 6
    assert lookup("2").size == 2


def test_range_errors():
    for bad in (0, 11):
        with pytest.raises(OutOfRange):
            zn(bad)
    for bad in (0, 6):
        with pytest.raises(OutOfRange):
            prohibited(bad)
        with pytest.raises(OutOfRange):
            star(bad)
    with pytest.raises(InvalidInput):
        lookup("Q7")
    assert is_catalog_name("P3*") and not is_catalog_name("P9")


def test_z6_generator_and_z10_label():
    z6 = zn(6)
    g = z6.index("g")
    assert classify(z6).members("ordinary") == [g]
    assert z6.join[z6.neg[g]][z6.neg[z6.neg[g]]] == z6.top
    assert is_isomorphic(ideal_algebra(zn(10), zn(10).index("a")), zn(7))


def test_prohibited_closed_forms():
    two, b3 = zn(2), boolean_cube()
    assert is_isomorphic(prohibited(3), ordinal_sum(b3, two))
    assert is_isomorphic(prohibited(4), ordinal_sum(two, b3, two))
    assert is_isomorphic(prohibited(2), ordinal_sum(two, zn(7)))
    assert all(is_si(prohibited(i)) for i in range(1, 6))
    assert sum(classify(prohibited(5)).regular) == 8
    assert is_isomorphic(p5_prime(), prohibited(5))


def test_star_partners():
    assert [star_partner(i).name for i in range(1, 6)] == ["Z5", "Z5'", "Z5", "Z5'", "Z5"]
    for i in range(1, 6):
        assert embeds(prohibited(i), star(i)) is None


def _find_in_product(i, max_gens):
    """Some subalgebra of P_i x partner generated by at most ``max_gens`` elements is P_i*."""
    from itertools import combinations

    target = star(i)
    prod = product(prohibited(i), star_partner(i))
    seen = set()
    for k in range(1, max_gens + 1):
        for seed in combinations(prod.elements, k):
            members = tuple(closure(prod, list(seed)))
            if len(members) != target.size or members in seen:
                continue
            seen.add(members)
            if is_isomorphic(restrict(prod, members), target):
                return True
    return False


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
def test_transcription_fallback_oracle(i):
    assert _find_in_product(i, 2) or _find_in_product(i, 3)


def test_corpus_small_cases():
    c1 = list(corpus(1))
    assert [a.size for a in c1] == [1, 2]
    c3 = corpus_list(3)
    assert sorted(a.size for a in c3) == [1, 2, 3, 4, 4, 5, 5, 6, 8]
    assert any(is_isomorphic(a, boolean_cube()) for a in c3)
    assert len(corpus_list(4)) == 25 and len(corpus_list(5)) == 88
    with pytest.raises(SizeLimitExceeded):
        next(corpus(9))


def test_corpus_nested_and_duplicate_free():
    small, big = corpus_list(3), corpus_list(4)
    for a in small:
        assert any(is_isomorphic(a, b) for b in big)
    for i, a in enumerate(big):
        for b in big[i + 1 :]:
            assert a.size != b.size or is_isomorphic(a, b) is None
