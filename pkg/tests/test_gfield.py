import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eaqmds import gfield
from eaqmds.gfield import (
    FieldError,
    NotPrimePowerError,
    PrimePower,
    conjugate,
    factor_prime_power,
    make_field,
    make_tower,
    nth_root_of_unity,
    project_to_subfield,
)
from oracles import smallest_irreducible_by_roots


@pytest.mark.parametrize("q, pe", [(13, (13, 1)), (27, (3, 3)), (2, (2, 1)), (1024, (2, 10)), (289, (17, 2))])
def test_factor_prime_power(q, pe):
    assert factor_prime_power(q) == PrimePower(*pe)
    assert PrimePower(*pe).q == q


@pytest.mark.parametrize("q", [12, 33, 57, 1, 0, 100])
def test_factor_prime_power_rejects(q):
    with pytest.raises(NotPrimePowerError):
        factor_prime_power(q)


@pytest.mark.parametrize("p, e", [(13, 2), (3, 2), (17, 2), (5, 3), (2, 3), (7, 2), (31, 2)])
def test_make_field_matches_root_search(p, e):
    assert make_field(p, e).modulus == smallest_irreducible_by_roots(p, e)


def test_make_field_examples():
    assert make_field(13, 2).modulus == (2, 0, 1)  # x^2 + 2
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    F = make_field(7, 1)
    assert F.order == 7 and F.e == 1


def test_make_field_deterministic():
    make_field.cache_clear()
    a = make_field(3, 6).modulus
    make_field.cache_clear()
    assert make_field(3, 6).modulus == a
    assert gfield.is_irreducible(a, 3)


def test_arith_examples():
    F = make_field(13, 2)
    x = F([0, 1])
    assert (x * x).value == 11 and (x * x).coeffs == (11, 0)
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    assert (x ** -1) * x == F(1)
    assert x**0 == F(1)


FIELDS = [(13, 2), (17, 2), (3, 6), (5, 3), (2, 4)]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pe, data):
    F = make_field(*pe)
    a, b, c = (F(data.draw(st.integers(0, F.order - 1))) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F(0) and a + (-a) == F(0)
    assert a * 1 == a
    if a:
        assert a * a.inverse() == F(1)
        assert (b / a) * a == b


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_table_and_polynomial_paths_agree(pe, data):
    F = make_field(*pe)
    a = data.draw(st.integers(0, F.order - 1))
    b = data.draw(st.integers(0, F.order - 1))
    assert F.mul(a, b) == F._poly_mul(a, b) if a and b else F.mul(a, b) == 0
    arr_a, arr_b = np.array([a]), np.array([b])
    assert F.add_arr(arr_a, arr_b)[0] == F.add(a, b)
    assert F.mul_arr(arr_a, arr_b)[0] == F.mul(a, b)
    assert F._add_sparse(arr_a, arr_b)[0] == F.add(a, b)
    assert F._mul_sparse(arr_a, arr_b)[0] == F.mul(a, b)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([13, 17, 9, 27]), st.data())
def test_conjugation_is_involutive_automorphism(q, data):
    F = gfield.quadratic_field(q)
    a = F(data.draw(st.integers(0, F.order - 1)))
    b = F(data.draw(st.integers(0, F.order - 1)))
    assert conjugate(conjugate(a)) == a
    assert conjugate(a + b) == conjugate(a) + conjugate(b)
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    # fixed exactly by GF(q): a^q = a iff a^(q-1) = 1 or a = 0
    assert (conjugate(a) == a) == (a.value == 0 or a ** (q - 1) == F(1))
    p = F.p
    assert (a + b) ** p == a**p + b**p


def test_conjugation_fixed_field_size():
    for q in (13, 9):
        F = gfield.quadratic_field(q)
        fixed = [v for v in range(F.order) if conjugate(F(v)) == F(v)]
        assert len(fixed) == q


def test_conjugate_examples():
    F = make_field(3, 2)
    x = F([0, 1])
    assert conjugate(x) == F([0, 2])
    G = make_field(13, 2)
    assert conjugate(G(5)) == G(5)
    with pytest.raises(FieldError):
        conjugate(make_field(5, 3)(7))


@pytest.mark.parametrize("q, n", [(13, 17), (17, 29), (31, 37), (47, 65), (27, 73), (13, 7), (13, 1)])
def test_nth_root_has_exact_order(q, n):
    tw = make_tower(q)
    top = tw.top
    g = nth_root_of_unity(n, tw)
    assert top.pow(g, n) == 1
    for r in gfield.factorize(n) if n > 1 else {}:
        assert top.pow(g, n // r) != 1
    if n == 1:
        assert g == 1


def test_nth_root_rejects_non_divisor(tower13):
    with pytest.raises(FieldError):
        nth_root_of_unity(11, tower13)


@pytest.mark.parametrize("q", [13, 17, 27])
def test_tower_embedding_is_homomorphism(q):
    tw = make_tower(q)
    base, top = tw.base, tw.top
    rng = np.random.default_rng(q)
    for _ in range(200):
        a, b = (int(x) for x in rng.integers(0, base.order, 2))
        assert tw.embed(base.add(a, b)) == top.add(tw.embed(a), tw.embed(b))
        assert tw.embed(base.mul(a, b)) == top.mul(tw.embed(a), tw.embed(b))
        assert tw.pullback(tw.embed(a)) == a
        assert project_to_subfield(tw.embed(a), tw) == (a, 0)


def test_projection_round_trip(tower13):
    tw = tower13
    assert tw.project(tw.theta) == (0, 1)
    rng = np.random.default_rng(1)
    for v in rng.integers(0, tw.top.order, 300):
        u, w = tw.project(int(v))
        assert tw.assemble(u, w) == int(v)
        assert (w == 0) == tw.in_subfield(int(v))


def test_pullback_rejects_outside(tower13):
    with pytest.raises(FieldError):
        tower13.pullback(tower13.theta)


def test_big_field_without_tables():
    tw = make_tower(23)  # 23^4 exceeds the table limit
    assert tw.top.order > gfield.TABLE_LIMIT
    g = nth_root_of_unity(53, tw)
    assert tw.top.pow(g, 53) == 1 and tw.top.pow(g, 1) != 1
