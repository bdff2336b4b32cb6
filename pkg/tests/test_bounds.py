import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact import bounds


def test_beta_tilde_series():
    s = bounds.beta_tilde_series(6).coefficients
    assert s[0] == 1 and s[1] == Fraction(1, 2)


@given(st.floats(0.01, 3.0))
def test_beta_tilde_closed_form(x):
    assert math.isclose(bounds.beta_tilde(x), 2 + x / 2 - (x / 2) / math.tan(x / 2), rel_tol=1e-9)


def test_psi_coefficients():
    s = bounds.psi_series(6).coefficients
    assert s[2:7] == [Fraction(1, 4), Fraction(5, 72), Fraction(11, 576),
                      Fraction(479, 86400), Fraction(1769, 1036800)]


def test_delta():
    assert abs(bounds.delta_standard() - 2.1737374) < 1e-6


@pytest.mark.parametrize("name", ["delta", "c1"])
def test_constant_lookup(name):
    value, tol = bounds.constant(name)
    assert math.isfinite(value)


@given(st.floats(0.01, 0.5))
def test_h_series_close(p):
    assert abs(bounds.h_estimate(p) - bounds.h_series(p)) < 5 * p ** 6


@given(st.floats(0.05, 3.0))
def test_h_crude_bound(p):
    assert bounds.h_estimate(p) <= 1.05 * p * math.sqrt((math.pi + p) / (math.pi - p))


def test_h_pi():
    assert abs(bounds.h_pi() + 2.513) < 1e-2


def test_theta_numeric_matches_partial_sum():
    assert math.isclose(bounds.theta_numeric(0.5), bounds.theta_partial_sum(0.5), rel_tol=1e-8)
