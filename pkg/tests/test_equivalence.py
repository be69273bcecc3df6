import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codiff.algebra import opposite
from codiff.catalog import data_path, get, parse_expression
from codiff.equivalence import GradedAutomorphism, SingularAutomorphism, find_isomorphism, transport, verify
from strategies import automorphisms


def test_identity_transport():
    d = get(24).d
    assert transport(GradedAutomorphism.identity(), d) == d


@settings(max_examples=50)
@given(st.integers(1, 28), automorphisms())
def test_inverse_transport(k, g):
    d = get(k).d
    assert transport(g, transport(g.inverse(), d)) == d


@settings(max_examples=50)
@given(st.integers(1, 28), automorphisms(), automorphisms())
def test_right_action(k, g, h):
    # g*(d) = g^-1 d (g x g) composes contravariantly
    d = get(k).d
    assert transport(g, transport(h, d)) == transport(h @ g, d)


def test_jump_witness_d2_to_d1():
    d = get(2).d + parse_expression("+2:22")
    res = find_isomorphism(d, get(1).d)
    assert res.witness is not None
    assert transport(res.witness, d) == get(1).d


def test_d3_d4_distinct():
    res = find_isomorphism(get(3).d, get(4).d)
    assert res.witness is None
    assert "annihilator" in res.reason


def test_d5_isomorphic_to_opposite():
    res = find_isomorphism(opposite(get(5).d), get(5).d)
    assert res.witness is not None and verify(res.witness, opposite(get(5).d), get(5).d)


def test_verify_examples():
    assert not verify(GradedAutomorphism.identity(), get(1).d, get(2).d)
    assert verify(GradedAutomorphism.from_blocks([[1]], [[1, 0], [0, 1]]), get(25).d, get(25).d)
    assert verify(GradedAutomorphism.from_blocks([[5]], [[3, 0], [0, 1]]), get(25).d, get(25).d)
    assert not verify(GradedAutomorphism.from_blocks([[1]], [[1, 0], [0, 2]]), get(25).d, get(25).d)


def test_singular_rejected():
    with pytest.raises((SingularAutomorphism, ValueError)):
        GradedAutomorphism.from_blocks([[1]], [[1, 1], [1, 1]])


def test_json_round_trip():
    g = GradedAutomorphism.from_blocks([[2]], [[1, -1], [3, 4]])
    assert GradedAutomorphism.from_json(json.loads(json.dumps(g.to_json()))) == g


def test_golden_witnesses():
    """Every checked-in extension witness still carries its class onto the catalog entry."""
    doc = json.loads(data_path("witnesses.json").read_text())
    from codiff.graded import Coderivation

    n = 0
    for case, rows in doc.items():
        for row in rows:
            d = Coderivation.from_json(row["d"])
            g = GradedAutomorphism.from_json(row["witness"])
            target = Coderivation.zero() if row["catalog"] == 0 else get(row["catalog"]).d
            assert transport(g, d) == target, (case, row["catalog"])
            n += 1
    assert n == 33


def test_budget_exhaustion_reports_none():
    res = find_isomorphism(get(10).d, get(12).d, budget=10, screen=False, algebraic=False)
    assert res.witness is None
    assert res.spent <= 10 + 1
