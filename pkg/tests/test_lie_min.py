import os
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from artifact import lie_min
from artifact.errors import DomainError
from artifact.magnus_core import magnus_commutator_direct

EXPECTED = {2: Fraction(1, 2), 3: Fraction(1, 3), 4: Fraction(1, 3), 5: Fraction(2, 5)}


def test_catalan():
    assert [lie_min.catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_theta_lie_exact(k):
    res = lie_min.theta_lie(k)
    assert res.objective == EXPECTED[k]
    assert res.theta_lie == EXPECTED[k] / factorial(k)
    assert res.certified


@pytest.mark.parametrize("k", [4, 5])
def test_reference_presentations(k):
    rep = lie_min.verify_presentation(lie_min.reference_presentation(k), k)
    assert rep.valid and rep.cost == EXPECTED[k]


@given(st.lists(st.integers(0, 8), min_size=5, max_size=5).filter(any))
def test_k4_family_always_presents(weights):
    lam = [Fraction(w, sum(weights)) for w in weights]
    rep = lie_min.verify_presentation(lie_min.k4_family(lam), 4)
    assert rep.valid
    assert rep.cost == EXPECTED[4]


def test_parse_presentation_round_trip():
    pres = lie_min.parse_presentation("[1,2]:1/2\n")
    rep = lie_min.verify_presentation(pres, 2)
    assert rep.valid and rep.cost == Fraction(1, 2)


def test_wrong_presentation_rejected():
    rep = lie_min.verify_presentation(lie_min.parse_presentation("[1,2]:1"), 2)
    assert not rep.valid


@pytest.mark.parametrize("k", [2, 3, 4])
def test_first_canonical_projection_fixes_mu(k):
    mu = magnus_commutator_direct(k)
    assert lie_min.first_canonical_projection(mu, k) == mu


def test_bad_k():
    with pytest.raises(DomainError):
        lie_min.theta_lie(1)


@pytest.mark.skipif(not os.environ.get("ARTIFACT_K6"), reason="set ARTIFACT_K6=1 for the k=6 LP")
def test_k6():
    assert lie_min.theta_lie(6).objective == Fraction(37, 60)
    rep = lie_min.verify_presentation(lie_min.reference_presentation(6), 6)
    assert rep.valid and rep.cost == Fraction(37, 60)
