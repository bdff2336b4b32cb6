import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.linalg import expm, logm

from artifact import gl2
from artifact.errors import DomainError
from artifact.gl2 import I_T, ID, J_T, K_T, Mat2

entries = st.floats(-2, 2, allow_nan=False)
mats = st.builds(Mat2, entries, entries, entries, entries)


def test_norms():
    assert math.isclose(gl2.norm2(ID), 1)
    assert math.isclose(gl2.norm2(J_T), 1)
    assert math.isclose(gl2.norm2(Mat2(3, 0, 0, 1)), 3)


@given(mats)
def test_norm_matches_svd(A):
    s = np.linalg.svd(A.array(), compute_uv=False)
    assert abs(gl2.norm2(A) - s[0]) < 1e-12 * max(1, s[0])
    assert abs(gl2.conorm_signed(A) - np.sign(A.det) * s[1]) < 1e-12 * max(1, s[0])


@given(mats)
def test_det_from_disk(A):
    D = gl2.chiral_disk(A)
    a, b = D.center.real, D.center.imag
    assert math.isclose(A.det, a * a + b * b - D.radius ** 2, abs_tol=1e-12)


def test_disks():
    assert gl2.chiral_disk(gl2.rotation(0.4)).radius == 0
    D = gl2.chiral_disk(K_T)
    assert D.center == 0 and math.isclose(D.radius, 1)


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0, 1), st.floats(-3, 3))
def test_matrix_from_disk_inverse(a, b, r, beta):
    D = gl2.chiral_disk(gl2.matrix_from_disk(complex(a, b), r, beta))
    assert abs(D.center - complex(a, b)) < 1e-12 and abs(D.radius - r) < 1e-12


def test_ac_values():
    assert math.isclose(gl2.ac(1.0), 1.0)
    assert math.isclose(gl2.ac(0.0), math.pi / 2)


@pytest.mark.parametrize("x", [-0.7, -0.2, 0.3, 0.9, 0.99999, 1.5, 4.0])
def test_ac_prime(x):
    h = 1e-6
    fd = (gl2.ac(x + h) - gl2.ac(x - h)) / (2 * h)
    assert abs(fd - gl2.ac_prime(x)) < 1e-5
    if abs(x) != 1:
        assert abs(gl2.ac_prime(x) - (x * gl2.ac(x) - 1) / (1 - x * x)) < 1e-8


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_expm2_matches_scipy(a, b, c, d):
    X = Mat2(a, b, c, d)
    assert np.max(np.abs(gl2.expm2(X).array() - expm(X.array()))) < 1e-10


@given(st.floats(-1.2, 1.2), st.floats(-1.2, 1.2), st.floats(-1.2, 1.2), st.floats(-1.2, 1.2))
def test_log_exp_round_trip(a, b, c, d):
    X = Mat2(a, b, c, d)
    # the principal log recovers X when its eigenvalues lie in |Im| < pi
    assume(gl2.norm2(X) < 2.5)
    assert gl2.log2x2(gl2.expm2(X)).dist(X) < 1e-9


def test_log_examples():
    assert gl2.log2x2(gl2.rotation(1.0)).dist(I_T * 1.0) < 1e-12
    assert gl2.log2x2(Mat2(math.e, 0, 0, 1 / math.e)).dist(J_T) < 1e-12
    L = gl2.log2x2(Mat2(2, 1, 0.3, 1.5))
    assert np.max(np.abs(L.array() - logm(np.array([[2, 1], [0.3, 1.5]])).real)) < 1e-10
    c = math.cosh(1.0)
    with pytest.raises(DomainError):
        gl2.log2x2(Mat2(-c, 0, 0, -c))


def test_w_examples():
    p = 0.7
    assert gl2.W(p, 0.0).dist(Mat2(math.cosh(p), math.sinh(p), math.sinh(p), math.cosh(p))) < 1e-12
    c, s_ = math.cos(p), math.sin(p)
    assert gl2.W(p, p).dist(Mat2(c, 2 * p * c - s_, s_, 2 * p * s_ + c)) < 1e-12


@given(st.floats(0.05, 2.5), st.floats(-0.99, 0.99))
def test_w_has_unit_determinant(p, s_):
    assert abs(gl2.W(p, p * s_).det - 1) < 1e-10


def test_maximal_disk_special_points():
    D = gl2.maximal_disk(1.0, 0.0)
    assert math.isclose(D.radius, math.sinh(1.0))
    D = gl2.maximal_disk(1.0, math.pi / 2)
    assert math.isclose(D.radius, 1.0)
    with pytest.raises(DomainError):
        gl2.maximal_disk(3.5, 0.0)


@given(st.floats(0.05, 3.0), st.floats(-1.5, 1.5))
def test_tangency(p, t):
    assert gl2.tangency_residual(p, t) < 1e-8


@given(st.floats(0.05, 2.5))
def test_mp_examples(p):
    assert abs(gl2.magnus_exponent(gl2.expm2(K_T * p)) - p) < 1e-7
    assert abs(gl2.magnus_exponent(gl2.rotation(p)) - p) < 1e-7


@pytest.mark.parametrize("p", [1e-2, 5e-3, 1e-3])
@pytest.mark.parametrize("t", [0.0, 0.5, -1.0])
def test_hyperbolic_estimate(p, t):
    A = gl2.W(p, p * math.sin(t))
    mp2 = gl2.magnus_exponent(A) ** 2
    a = gl2.chiral_disk(A).center.real - 1
    assert abs(mp2 - 2 * a) <= 5 * mp2 ** 2


def test_classify_examples():
    assert gl2.classify(ID) == "identity"
    assert gl2.classify(gl2.rotation(1.0)) == "quasicomplex"
    assert gl2.classify(gl2.W(1.0, 1.0)) == "parabolic"
    assert gl2.classify(gl2.W(1.0, 0.4)) == "hyperbolic"
    assert gl2.classify(gl2.expm2(K_T * 0.5) * 2.0) == "loxodromic"


def test_classify_normal_form_consistency():
    assert gl2.classify(gl2.nw_build(gl2.NormalForm(0.8, 0.0, 0.3))) == "quasicomplex"
    A = gl2.nw_build(gl2.NormalForm(0.0, 1.0, math.pi / 2))
    assert gl2.classify(A) in ("parabolic", "elliptic")


@given(st.floats(0.0, 1.2), st.floats(0.05, 1.5), st.floats(-1.4, 1.4), st.floats(-3, 3))
def test_normal_form_round_trip(p1, p2, t, beta):
    nf = gl2.NormalForm(p1, p2, t, beta)
    A = gl2.nw_build(nf)
    back = gl2.nw_build(gl2.normal_form(A))
    assert back.dist(A) < 1e-7
    assert gl2.classify(A) in gl2.CLASSES


def test_critical_examples():
    assert math.pi * gl2.critical_coefficient(2) == math.pi / 2
    assert abs(math.pi * gl2.critical_coefficient(400) * math.sqrt(400 / (2 * math.pi)) - 1) < 0.02
    eps = 1e-8
    assert abs(gl2.critical_norm(math.pi - eps) * math.sqrt(eps) / gl2.SQRT2_PI32 - 1) < 0.01


@given(st.integers(1, 40))
def test_critical_coefficients_match_series(n):
    coeffs = gl2.critical_series_coefficients(20)
    expected = coeffs[n // 2] if n > 1 else 0
    assert gl2.critical_coefficient(n) == expected


@pytest.mark.parametrize("name", gl2.EXAMPLES)
def test_example_asymptotics(name):
    for fit in gl2.example_asymptotics(name):
        assert abs(fit.exponent - fit.expected_exponent) < 0.02


seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds)
def test_log_monotone_on_nested_disks(seed):
    from artifact.reproduce import nested_pair
    A1, A2 = nested_pair(np.random.default_rng(seed))
    L1, L2 = gl2.log2x2(A1), gl2.log2x2(A2)
    assert gl2.norm2(L1) <= gl2.norm2(L2) + 1e-12
    assert gl2.conorm_signed(L1) >= gl2.conorm_signed(L2) - 1e-12
    assert gl2.principal_disk(L2).contains_disk(gl2.principal_disk(L1), 1e-10)


@given(seeds, st.floats(0.05, math.pi - 0.05))
def test_step_measure_range_containment(seed, p):
    from artifact.reproduce import random_step_measure
    from artifact.timeordered import lexp
    A = Mat2.from_array(lexp(random_step_measure(np.random.default_rng(seed), p)))
    assert gl2.magnus_exponent(A) <= p + 1e-9


def test_mp_of_z_needs_lift():
    from artifact.reproduce import gl2_z_matrix
    Z = gl2_z_matrix()
    with pytest.raises(DomainError):
        gl2.magnus_exponent(Z)
    assert abs(gl2.magnus_exponent(Z, lift=True) - 4.493) < 1e-3
