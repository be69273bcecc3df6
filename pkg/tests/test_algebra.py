import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codiff.algebra import (
    Multiplication,
    center,
    fingerprint,
    from_multiplication,
    is_commutative,
    is_nilpotent,
    left_annihilator,
    opposite,
    right_annihilator,
    to_multiplication,
    unit,
)
from codiff.catalog import entries, get
from codiff.equivalence import find_isomorphism, transport
from codiff.graded import SPACE_1_2, Coderivation, is_codifferential
from codiff.hochschild import cohomology
from strategies import automorphisms, coderivations

PAIRS = [(3, 4), (10, 11), (12, 13), (14, 15), (16, 17), (18, 19), (21, 22)]


def test_d1_is_unital_and_associative():
    m = to_multiplication(get(1).d)
    assert m.is_associative()
    assert unit(m) is not None


def test_zero_multiplication():
    m = to_multiplication(Coderivation.zero())
    assert m.table == ()
    assert center(m).dims == (2, 1)
    assert unit(m) is None


def test_d26_associative():
    assert to_multiplication(get(26).d).is_associative()


def test_centers():
    assert center(to_multiplication(get(1).d)).same_span([{2: 1}, {3: 1}], 3)
    assert center(to_multiplication(get(3).d)).same_span([{3: 1}], 3)


def test_units_and_nilpotency():
    assert unit(to_multiplication(get(24).d)) is not None
    assert unit(to_multiplication(get(7).d)) is None
    assert is_nilpotent(to_multiplication(get(26).d))
    assert is_nilpotent(to_multiplication(get(28).d))
    assert not is_nilpotent(to_multiplication(get(1).d))
    assert is_commutative(to_multiplication(get(28).d))


def test_round_trip_through_multiplication():
    for e in entries():
        assert from_multiplication(to_multiplication(e.d)) == e.d


@settings(max_examples=150)
@given(coderivations(parity=1, arities=(2,), max_terms=5))
def test_associativity_iff_codifferential(d):
    assert to_multiplication(d).is_associative() == is_codifferential(d)


@pytest.mark.parametrize("k", range(1, 29))
def test_center_dimension_is_h0(k):
    d = get(k).d
    z = center(to_multiplication(d))
    h = cohomology(d, 0)
    assert z.w_dims == (h.even_dim, h.odd_dim)


@pytest.mark.parametrize("k", range(1, 29))
def test_opposite_is_involution(k):
    d = get(k).d
    assert opposite(opposite(d)) == d


@pytest.mark.parametrize("k", range(1, 29))
def test_opposite_swaps_annihilators(k):
    d = get(k).d
    a, b = fingerprint(d), fingerprint(opposite(d))
    assert (a.left_annihilator, a.right_annihilator) == (b.right_annihilator, b.left_annihilator)
    assert (a.cohomology, a.center, a.unital, a.commutative, a.nilpotent) == (
        b.cohomology, b.center, b.unital, b.commutative, b.nilpotent)


@pytest.mark.parametrize("a,b", PAIRS)
def test_opposite_pairs(a, b):
    res = find_isomorphism(opposite(get(a).d), get(b).d)
    assert res.witness is not None
    assert transport(res.witness, opposite(get(a).d)) == get(b).d


def test_d5_self_opposite():
    assert find_isomorphism(opposite(get(5).d), get(5).d).witness is not None


@pytest.mark.parametrize("k", range(1, 29))
def test_commutative_entries_are_self_opposite(k):
    d = get(k).d
    if is_commutative(to_multiplication(d)):
        assert opposite(d) == d


def test_fingerprints_separate_catalog():
    fps = [fingerprint(e.d) for e in entries()]
    assert len(set(fps)) == 28
    assert fingerprint(get(1).d) != fingerprint(get(2).d)


@settings(max_examples=40)
@given(st.integers(1, 28), automorphisms())
def test_fingerprint_invariance(k, g):
    d = get(k).d
    assert fingerprint(transport(g, d)) == fingerprint(d)


def test_annihilators_of_d10():
    m = to_multiplication(get(10).d)
    assert left_annihilator(m).dims != right_annihilator(m).dims


def test_multiplication_product_bilinear():
    m = Multiplication.from_dict(SPACE_1_2, {(1, 1): {1: 1}})
    assert m.product({1: 2}, {1: 3}) == {1: 6}
