import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eaqmds import cyclic
from eaqmds.zmod import (
    DefiningSet,
    InvalidModulusError,
    SkewAsymmetricPair,
    SkewSymmetric,
    all_cosets,
    classify_coset,
    cyclotomic_coset,
    decompose,
    neg_q_image,
)

# (q, n) with n = (q^2 + 1)/a from both families
FAMILY_LENGTHS = [(13, 17), (17, 29), (23, 53), (31, 37), (27, 73), (47, 65)]


def brute_orbit(s, n, q):
    out, x = set(), s % n
    for _ in range(n + 1):
        out.add(x)
        x = x * q * q % n
    return out


@pytest.mark.parametrize(
    "s, n, q, expected",
    [(9, 17, 13, (8, 9)), (0, 17, 13, (0,)), (1, 17, 13, (1, 16)), (0, 29, 17, (0,))],
)
def test_cyclotomic_coset_examples(s, n, q, expected):
    c = cyclotomic_coset(s, n, q)
    assert c.elements == expected
    assert c.representative == expected[0]


def test_coset_rejects_shared_factor():
    with pytest.raises(InvalidModulusError):
        cyclotomic_coset(1, 26, 13)


def test_all_cosets_17():
    cosets = all_cosets(17, 13)
    assert len(cosets) == 9
    assert cosets[0].elements == (0,)
    assert [c.elements for c in cosets[1:]] == [(x, 17 - x) for x in range(1, 9)]


def test_all_cosets_29():
    cosets = all_cosets(29, 17)
    assert len(cosets) == 15
    assert all(c.elements == (x, 29 - x) for x, c in zip(range(1, 15), cosets[1:]))


def test_all_cosets_small():
    # q^2 = 4 mod 5: {0}, {1,4}, {2,3}
    assert [c.elements for c in all_cosets(5, 2)] == [(0,), (1, 4), (2, 3)]


@pytest.mark.parametrize("q, n", FAMILY_LENGTHS)
def test_partition_and_pairing(q, n):
    cosets = all_cosets(n, q)
    seen = [x for c in cosets for x in c.elements]
    assert sorted(seen) == list(range(n))
    assert len(cosets) == 1 + (n - 1) // 2
    for c in cosets[1:]:
        assert c.elements == (c.representative, n - c.representative)
        assert set(c.elements) == brute_orbit(c.representative, n, q)


@pytest.mark.parametrize("q, n", FAMILY_LENGTHS)
def test_only_zero_coset_is_skew_symmetric(q, n):
    sym = [c for c in all_cosets(n, q) if isinstance(classify_coset(c, q), SkewSymmetric)]
    assert [c.elements for c in sym] == [(0,)]


def test_neg_q_image_examples():
    assert neg_q_image({10, 7}, 13, 17) == {6, 11}
    assert neg_q_image(set(), 13, 17) == set()
    assert neg_q_image({0}, 13, 17) == {0}


def test_classify_examples():
    assert isinstance(classify_coset(cyclotomic_coset(0, 17, 13), 13), SkewSymmetric)
    w = classify_coset(cyclotomic_coset(7, 17, 13), 13)
    assert w == SkewAsymmetricPair(7, 6)
    w = classify_coset(cyclotomic_coset(8, 17, 13), 13)
    assert isinstance(w, SkewAsymmetricPair)
    assert cyclotomic_coset(w.partner, 17, 13).elements == (2, 15)


def T_run(q, n, k):
    return cyclic.build_T(cyclic.ConsecutiveSpec(q, n, k))


def test_decompose_examples():
    dec = decompose(T_run(13, 17, 4))
    assert dec.tss.elements == {6, 7, 10, 11}
    assert len(dec.tss) == 4
    assert sorted(c.elements for c in dec.tss.cosets) == [(6, 11), (7, 10)]
    assert SkewAsymmetricPair(6, 7) in dec.witnesses

    assert decompose(T_run(13, 17, 1)).tss.elements == frozenset()

    empty = DefiningSet.from_reps(17, 13, [])
    dec = decompose(empty)
    assert not dec.tss.elements and not dec.tsas.elements and dec.witnesses == []


def test_decompose_pairs_at_17_29():
    dec = decompose(T_run(17, 29, 6))
    pairs = {(w.rep, w.partner) for w in dec.witnesses}
    assert pairs == {(11, 13), (8, 9)}
    assert len(dec.tss) == 8


@st.composite
def coset_unions(draw):
    q, n = draw(st.sampled_from(FAMILY_LENGTHS))
    reps = draw(st.lists(st.integers(0, n - 1), max_size=8))
    return DefiningSet.from_reps(n, q, reps)


@settings(max_examples=200, deadline=None)
@given(coset_unions())
def test_decomposition_invariants(T):
    n, q = T.n, T.q
    dec = decompose(T)
    assert dec.tss.elements | dec.tsas.elements == T.elements
    assert not dec.tss.elements & dec.tsas.elements
    assert dec.tss.elements == T.elements & neg_q_image(T.elements, q, n)
    # T_ss is a union of cosets fixed by the neg-q map
    assert DefiningSet.from_elements(n, q, dec.tss.elements).elements == dec.tss.elements
    assert neg_q_image(dec.tss.elements, q, n) == dec.tss.elements
    # no skew-symmetric coset other than {0}, so |T_ss| is even once 0 is removed
    assert (len(dec.tss) - (0 in dec.tss.elements)) % 2 == 0
    # involution on unions of cosets
    assert neg_q_image(neg_q_image(T.elements, q, n), q, n) == T.elements
    assert len(T) == sum(len(c) for c in T.cosets)


@pytest.mark.parametrize("q, n", FAMILY_LENGTHS)
def test_tss_monotone_in_run_index(q, n):
    sizes = [len(decompose(T_run(q, n, k)).tss) for k in range((n + 1) // 2 - 1)]
    assert sizes == sorted(sizes)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 60), st.integers(1, 300))
def test_cosets_partition_any_modulus(q, n):
    if math.gcd(n, q) != 1:
        with pytest.raises(InvalidModulusError):
            all_cosets(n, q)
        return
    cosets = all_cosets(n, q)
    assert sorted(x for c in cosets for x in c.elements) == list(range(n))
    for c in cosets:
        assert {x * q * q % n for x in c.elements} == set(c.elements)
