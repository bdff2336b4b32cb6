from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.errors import DomainError
from artifact.free_algebra import (
    NCPolynomial,
    commutator,
    dsw_map,
    expand_tree,
    format_tree,
    is_lie_element,
    parse_poly,
    parse_tree,
    truncated_exp,
    truncated_log,
)

words = st.lists(st.integers(1, 3), min_size=0, max_size=3).map(tuple)
coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=6)
polys = st.dictionaries(words, coeffs, max_size=4).map(NCPolynomial)
nonconst = st.dictionaries(words.filter(len), coeffs, max_size=4).map(NCPolynomial)


def test_basic_arithmetic():
    X, Y = NCPolynomial.var(1), NCPolynomial.var(2)
    assert (X * Y - Y * X).coeff((1, 2)) == 1
    assert commutator(X, Y) == X * Y - Y * X
    assert (X + Y) ** 2 == X * X + X * Y + Y * X + Y * Y
    assert NCPolynomial.one().constant_term() == 1


def test_degree_cap_truncates():
    X = NCPolynomial.var(1, degree_cap=2)
    assert (X * X * X).is_zero()
    assert (X * X).coeff((1, 1)) == 1


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p


@given(nonconst)
def test_exp_log_inverse(p):
    assert truncated_log(truncated_exp(p, 4), 4) == p.truncate(4)


@given(nonconst, nonconst, nonconst)
def test_commutator_is_lie(p, q, r):
    p, q, r = p.homogeneous_part(1), q.homogeneous_part(1), r.homogeneous_part(1)
    c = commutator(p, commutator(q, r))
    assert is_lie_element(c)
    if not c.is_zero():
        assert dsw_map(c) == c.scale(3)


def test_non_lie_detected():
    X, Y = NCPolynomial.var(1), NCPolynomial.var(2)
    assert not is_lie_element(X * Y)


@given(polys)
def test_str_parse_round_trip(p):
    assert parse_poly(str(p)) == p


def test_json_round_trip():
    p = parse_poly("X1*X2 - 1/2 X2*X1 + 3")
    assert NCPolynomial.from_json(p.to_json()) == p


def test_tree_expansion():
    t = parse_tree("[[1,2],3]")
    assert format_tree(t) == "[[1,2],3]"
    X = [NCPolynomial.var(i) for i in range(4)]
    assert expand_tree(t) == commutator(commutator(X[1], X[2]), X[3])


def test_bad_input():
    with pytest.raises(DomainError):
        dsw_map(NCPolynomial.var(1) + NCPolynomial.var(1) * NCPolynomial.var(2))
    assert Fraction(1, 2) == parse_poly("1/2").constant_term()
