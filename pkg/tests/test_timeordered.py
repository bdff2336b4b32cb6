import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm

from artifact import timeordered as to
from artifact.errors import DomainError, ResourceCapError
from artifact.free_algebra import NCPolynomial, truncated_log
from artifact.magnus_core import bch_term
from artifact.reproduce import random_step_measure

X, Y, Z = (NCPolynomial.var(i) for i in (1, 2, 3))
seeds = st.integers(0, 2 ** 32 - 1)


def test_single_step():
    M = np.array([[0.1, 0.4], [-0.3, 0.2]])
    phi = to.StepMeasure.matrices([(M, 0.7)])
    assert np.allclose(to.rexp(phi), expm(0.7 * M))
    assert np.allclose(to.magnus_term(phi, 1), 0.7 * M)
    for k in (2, 3, 5):
        assert np.abs(to.magnus_term(phi, k)).max() < 1e-14


def test_two_steps_rexp_order():
    A, B = np.array([[0, 1.0], [0, 0]]), np.array([[0, 0], [1.0, 0]])
    phi = to.StepMeasure.matrices([(A, 1), (B, 1)])
    assert np.allclose(to.rexp(phi), expm(A) @ expm(B))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_two_unit_steps_give_bch(n):
    phi = to.StepMeasure.exact([(X, 1), (Y, 1)], cap=6)
    assert to.magnus_term(phi, n) == bch_term(n)


@given(seeds)
def test_inverse_path(seed):
    phi = random_step_measure(np.random.default_rng(seed), 1.5)
    assert np.abs(to.lexp(phi) @ to.lexp(phi.inverse()) - np.eye(2)).max() < 1e-12


@given(seeds, seeds)
def test_concatenation_homomorphism(s1, s2):
    p1 = random_step_measure(np.random.default_rng(s1), 1.0)
    p2 = random_step_measure(np.random.default_rng(s2), 1.0)
    assert np.allclose(to.rexp(p1.then(p2)), to.rexp(p1) @ to.rexp(p2), atol=1e-12)


def test_concatenation_exact():
    p1 = to.StepMeasure.exact([(X, 1), (Y, Fraction(1, 2))], 5)
    p2 = to.StepMeasure.exact([(Z, 2)], 5)
    assert to.rexp(p1.then(p2)) == to.rexp(p1) * to.rexp(p2)


@given(seeds, st.integers(1, 4))
def test_split_invariance(seed, k):
    phi = random_step_measure(np.random.default_rng(seed), 0.8)
    split = phi.split(0)
    assert np.abs(to.magnus_term(phi, k) - to.magnus_term(split, k)).max() < 1e-12
    assert np.abs(to.rexp(phi) - to.rexp(split)).max() < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_split_invariance_exact(k):
    phi = to.StepMeasure.exact([(X, 1), (Y + Z, Fraction(2, 3))], 5)
    assert to.magnus_term(phi, k) == to.magnus_term(phi.split(1, 3), k)


@given(seeds)
def test_magnus_reconstruction(seed):
    phi = random_step_measure(np.random.default_rng(seed), 0.5)
    S = to.magnus_partial_sum(phi, 8).total
    assert np.abs(expm(S) - to.rexp(phi)).max() < 1e-6


@given(seeds)
def test_adjoint_corollary(seed):
    rng = np.random.default_rng(seed)
    phi = random_step_measure(rng, 0.5)
    S = to.magnus_partial_sum(phi, 8).total
    Yr = rng.normal(size=(2, 2))
    # exp(ad S) Y via the Kronecker form of ad
    ad = np.kron(S, np.eye(2)) - np.kron(np.eye(2), S.T)
    lhs = (expm(ad) @ Yr.reshape(-1)).reshape(2, 2)
    R = to.rexp(phi)
    assert np.abs(lhs - R @ Yr @ np.linalg.inv(R)).max() < 1e-6


def test_nilpotent_partial_sum():
    phi = to.StepMeasure.exact([(X, 1), (Y, Fraction(1, 2)), (X + Z, 1)], 5)
    assert to.magnus_partial_sum(phi, 5).total == truncated_log(to.rexp(phi), 5)


def test_moan_second_term():
    prev = None
    for steps in (64, 256):
        v = np.linalg.norm(to.magnus_term(to.moan_measure(steps), 2), 2)
        err = abs(v - math.pi / 2)
        assert err < 0.05
        if prev is not None:
            assert err <= prev + 1e-12
        prev = err


def test_resolvent_k2_expansion():
    lam = Fraction(1, 3)
    phi = to.StepMeasure.exact([(X, 1), (Y, 1)], 4)
    R2 = to.resolvent_term(phi, lam, 2)
    # cross terms lam XY - (1-lam) YX, plus each step paired with itself at weight 1/2!
    expected = (X * Y).scale(lam) - (Y * X).scale(1 - lam) + (X * X + Y * Y).scale((2 * lam - 1) / 2)
    assert R2 == expected
    assert to.resolvent_term(phi, lam, 1) == X + Y
    # the lambda integral of the k-th resolvent term is the k-th Magnus term
    nodes, weights = np.polynomial.legendre.leggauss(4)
    for k in (2, 3, 4):
        total = NCPolynomial.zero(4)
        for x, w in zip(nodes, weights):
            total = total + to.resolvent_term(phi, Fraction((x + 1) / 2), k).scale(Fraction(w / 2))
        diff = total - to.magnus_term(phi, k)
        assert float(diff.l1_norm()) < 1e-10


@given(seeds, st.integers(1, 5))
def test_lambda_integral_matrix(seed, k):
    phi = random_step_measure(np.random.default_rng(seed), 1.0)
    nodes, weights = np.polynomial.legendre.leggauss(k + 1)
    total = sum(w / 2 * to.resolvent_term(phi, (x + 1) / 2, k) for x, w in zip(nodes, weights))
    assert np.abs(total - to.magnus_term(phi, k)).max() < 1e-8


def test_resolvent_identity_exact_truncation():
    phi = to.StepMeasure.exact([(X, 1), (Y, Fraction(1, 2))], 5)
    assert to.resolvent_identity_check(phi, Fraction(1, 2), 5) == 0


@given(seeds)
def test_resolvent_identity_matrix(seed):
    phi = random_step_measure(np.random.default_rng(seed), 1.0)
    assert to.resolvent_identity_check(phi, 0.5, 20, cap=20) < 1e-8


def test_contraction_cases():
    empty = to.StepMeasure.exact([], 5)
    p1 = to.StepMeasure.exact([(X, 1)], 5)
    p3 = to.StepMeasure.exact([(Y, 1)], 5)
    assert to.contraction_identity_check(p1, empty, p3, 5) == 0
    single = [to.StepMeasure.exact([(X, Fraction(j, 2))], 4) for j in (1, 2, 3)]
    assert to.contraction_identity_check(*single, 4) == 0
    three = [to.StepMeasure.exact([(v, 1)], 5) for v in (X, Y, Z)]
    assert to.contraction_identity_check(*three, 5) == 0


def test_errors():
    phi = to.StepMeasure.matrices([(np.eye(2), 1.0)])
    with pytest.raises(ResourceCapError):
        to.magnus_term(phi, 13)
    with pytest.raises(DomainError):
        to.magnus_term(phi, 0)
    with pytest.raises(DomainError):
        to.StepMeasure.matrices([(np.eye(2), -1.0)])
    with pytest.raises(DomainError):
        to.parse_measure("1,0,0,1")


def test_parse_measure():
    phi = to.parse_measure("0,1,0,0;0.5\n# comment\n0,0,1,0;1\n")
    assert len(phi) == 2
    ex = to.parse_measure("X1;1/2\nX2 - X1;1", exact=True, cap=4)
    assert ex.steps[0][1] == Fraction(1, 2)
