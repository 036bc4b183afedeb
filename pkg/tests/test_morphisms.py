import itertools
import warnings

import pytest

import oracles
from heyting.catalog import corpus_list, lookup, prohibited, star, z5_prime, zn
from heyting.errors import InvalidInput, NotSubdirectlyIrreducible
from heyting.kernel import is_isomorphic, ordinal_sum
from heyting.morphisms import (
    embeds,
    homomorphic_images,
    in_generated_variety,
    in_hs,
    in_sh,
    quotient_at,
    subalgebras,
    subdirect_witness,
    totally_nonprojective_certificate,
)
from heyting.structure import is_si

SMALL = [a for a in corpus_list(4) if a.size <= 8]


def test_embeds_matches_brute_force():
    for a, b in itertools.product(SMALL, repeat=2):
        if a.size <= b.size:
            assert (embeds(a, b) is not None) == oracles.brute_embeds(a, b), (a.name, b.name)


def test_embedding_witness_is_verified():
    f = embeds(zn(5), prohibited(1))
    assert f is not None and f.kind == "embedding"
    assert oracles.is_homomorphism(zn(5), prohibited(1), f.assign)
    assert embeds(prohibited(1), star(1)) is None


def test_quotients_match_congruence_classes():
    for b in [zn(6), prohibited(3), zn(5)]:
        for q in homomorphic_images(b):
            assert is_isomorphic(q.quotient, oracles.brute_quotient(b, q.generator))
            assert q.projection.kind == "surjection"


def test_quotient_at_top_is_identity():
    alg = zn(7)
    assert is_isomorphic(quotient_at(alg, alg.top).quotient, alg)
    assert quotient_at(alg, alg.bottom).quotient.size == 1


def test_in_hs_matches_brute_force():
    si = [a for a in SMALL if a.size > 1 and is_si(a)]
    for a in si:
        for b in SMALL:
            assert in_hs(a, b) == oracles.brute_in_hs(a, b), (a.name, b.name)


def test_hs_and_sh_agree_on_corpus4():
    algs = corpus_list(4)
    si = [a for a in algs if a.size > 1 and is_si(a)]
    for a in si:
        for b in algs:
            assert in_hs(a, b) == in_sh(a, b), (a.name, b.name)


def test_in_hs_warns_for_non_si():
    with pytest.warns(UserWarning):
        assert in_hs(zn(4), zn(4))


def test_subalgebras_of_z3_and_z4():
    assert subalgebras(zn(3)) == [[0, 2], [0, 1, 2]]
    assert len(subalgebras(zn(4))) == 2


def test_subdirect_witness():
    z4 = zn(4)
    a, b = z4.lower_covers(z4.top)
    assert subdirect_witness(z4, a, b)
    z5 = zn(5)
    # s.i.: any two filter congruences meet nontrivially
    assert not subdirect_witness(z5, z5.index("a"), z5.index("b"))
    with pytest.raises(InvalidInput):
        subdirect_witness(z4, a, z4.top)


def test_generated_variety():
    assert in_generated_variety(zn(5), zn(5))
    assert in_generated_variety(zn(4), zn(3))
    assert not in_generated_variety(zn(5), zn(4))
    for i in range(1, 6):
        assert in_generated_variety(star(i), prohibited(i))
    assert in_generated_variety(z5_prime(), prohibited(2))


def test_certificate_requires_si():
    with pytest.raises(NotSubdirectlyIrreducible):
        totally_nonprojective_certificate(zn(4), zn(4))
    # Z5 is a quotient of itself and embeds into itself: no certificate
    assert not totally_nonprojective_certificate(zn(5), zn(5))


def test_prohibited_are_pairwise_incomparable():
    ps = [prohibited(i) for i in range(1, 6)]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for i, j in itertools.permutations(range(5), 2):
            assert not in_hs(ps[i], ps[j]), (i + 1, j + 1)
