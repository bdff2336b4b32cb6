from fractions import Fraction

import pytest

from artifact.config import load_config, parse_config
from artifact.series import RationalSeries
from artifact.simplex import simplex, solve_exact


def test_series_ops():
    s = RationalSeries([1, 1, 0, 0])
    assert (s * s).coefficients == [1, 2, 1, 0]
    assert s.derivative().coefficients[:1] == [1]


def test_config(tmp_path):
    assert parse_config("a = 1\n# c\nb = 1e-3")["b"] == 1e-3
    f = tmp_path / "t.cfg"
    f.write_text("delta = 0.5\n")
    assert load_config(f)["delta"] == 0.5
    with pytest.raises(ValueError):
        parse_config("nonsense")


def test_solve_exact():
    assert solve_exact([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]


def test_simplex_small_lp():
    # min x + y s.t. x - y = 1, x, y >= 0
    res = simplex([1, 1], [[1, -1]], [1])
    assert res.objective == 1
