from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from codiff.polynomial import ParamPolynomial, evaluate_expression, monomials_of_degree, parse_polynomial

SYMS = sympy.symbols("t1 t2 t3")


def polys(nvars=3):
    mono = st.tuples(*[st.integers(0, 2)] * nvars)
    return st.dictionaries(mono, st.integers(-4, 4), max_size=4).map(lambda d: ParamPolynomial(nvars, d))


def test_parse_and_print():
    p = parse_polynomial("t1*(t2 - t1)", 2)
    assert str(p) == "-t1^2 + t1*t2"
    assert parse_polynomial("t3**2 - t3*t4 + t1*t2", 4).degree() == 2


def test_parse_rejects_unknown_variable():
    with pytest.raises(ValueError):
        parse_polynomial("t3", 2)
    with pytest.raises(ValueError):
        parse_polynomial("x + 1", 2)


def test_monomials_of_degree():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(4, 2)) == 10
    assert monomials_of_degree(0, 1) == []


def test_expression_language():
    env = {"a": Fraction(2), "b": Fraction(-3)}
    assert evaluate_expression("(a*a - a*b)/b", env) == Fraction(-10, 3)
    assert evaluate_expression("a**3", env) == 8
    with pytest.raises(ValueError):
        evaluate_expression("__import__('os')", env)
    with pytest.raises(ValueError):
        evaluate_expression("a / 0.5", env)
    with pytest.raises(ValueError):
        evaluate_expression("c", env)


def test_truncate_and_parts():
    p = parse_polynomial("t1 + t1*t2 + t2**3", 2)
    assert p.truncate(2) == parse_polynomial("t1 + t1*t2", 2)
    assert p.homogeneous_part(3) == parse_polynomial("t2**3", 2)
    assert p.min_degree() == 1


def test_substitute():
    p = parse_polynomial("t1*t2", 2)
    q = p.substitute([parse_polynomial("t1 + t2", 2), parse_polynomial("t1 - t2", 2)])
    assert q == parse_polynomial("t1**2 - t2**2", 2)


@given(polys(), polys())
def test_ring_ops_match_sympy(p, q):
    assert sympy.expand((p * q).to_sympy(SYMS) - p.to_sympy(SYMS) * q.to_sympy(SYMS)) == 0
    assert sympy.expand((p - q).to_sympy(SYMS) - p.to_sympy(SYMS) + q.to_sympy(SYMS)) == 0


@given(polys(), st.tuples(*[st.integers(-3, 3)] * 3))
def test_evaluate_matches_sympy(p, vals):
    expect = p.to_sympy(SYMS).subs(dict(zip(SYMS, vals)))
    assert p.evaluate(vals) == int(expect)
