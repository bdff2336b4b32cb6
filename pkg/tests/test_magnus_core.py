from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from artifact import magnus_core as mc
from artifact.errors import DomainError, ResourceCapError
from artifact.free_algebra import NCPolynomial, is_lie_element


def test_bernoulli_and_eulerian():
    assert [mc.bernoulli(j) for j in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0,
                                                  Fraction(-1, 30), 0, Fraction(1, 42)]
    assert [mc.eulerian(4, m) for m in range(4)] == [1, 11, 11, 1]


@given(st.integers(1, 8))
def test_eulerian_row_sums(n):
    assert sum(mc.eulerian(n, m) for m in range(n)) == factorial(n)


@given(st.integers(2, 6))
def test_mu_is_lie_with_zero_sum(k):
    mu = mc.magnus_commutator_direct(k)
    assert is_lie_element(mu)
    assert sum(c for _, c in mu.items()) == 0


def test_mu_small():
    assert mc.magnus_commutator_direct(2).to_json_dict() == {"X1X2": "1/2", "X2X1": "-1/2"}
    assert mc.magnus_commutator_recursive(3).expand() == mc.magnus_commutator_direct(3)


def test_caps_and_domain():
    with pytest.raises(ResourceCapError):
        mc.magnus_commutator_direct(10)
    with pytest.raises(DomainError):
        mc.magnus_commutator_direct(0)
    with pytest.raises(DomainError):
        mc.goldberg_coefficient("XZ")


@given(st.integers(1, 5))
def test_bch_matches_oracle(n):
    assert mc.bch_term(n) == mc.bch_oracle(n)


@given(st.lists(st.sampled_from("XY"), min_size=1, max_size=6).map("".join))
def test_goldberg_matches_oracle(word):
    w = tuple(1 if ch == "X" else 2 for ch in word)
    assert mc.goldberg_coefficient(word) == mc.bch_oracle(len(w)).coeff(w)


def test_goldberg_runs():
    assert mc.goldberg_from_runs("X", [2, 1]) == mc.goldberg_coefficient("XXY") == Fraction(1, 12)


def test_theta_series():
    assert mc.theta_series(5).coefficients == [0, 1, Fraction(1, 2), Fraction(2, 9),
                                              Fraction(7, 72), Fraction(13, 300)]


@given(st.integers(1, 5))
def test_resolvent_integrates_to_mu(k):
    lp = mc.resolvent_poly(k)
    assert lp.integrate() == mc.magnus_commutator_direct(k)


@given(st.integers(1, 5))
def test_ppod(k):
    assert mc.ppod_check(k)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("last", [False, True])
def test_schur_identity(n, last):
    lhs, rhs = mc.schur_identity_sides(n, last)
    assert lhs == rhs


@pytest.mark.parametrize("k,h1,h2", [(3, 1, 0), (3, 0, 1), (4, 1, 1), (4, 2, 0), (5, 1, 2)])
def test_generalized_recursion(k, h1, h2):
    assert mc.generalized_recursion_rhs(k, h1, h2) == mc.magnus_commutator_direct(k)


@given(st.integers(1, 5))
def test_solomon_projection_is_mu(k):
    assert mc.solomon_projection(k) == mc.magnus_commutator_direct(k)


def test_mu_apply_two_args():
    X, Y = NCPolynomial.var(1), NCPolynomial.var(2)
    assert mc.mu_apply([X, Y]) == (X * Y - Y * X).scale(Fraction(1, 2))
