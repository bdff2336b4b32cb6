"""Truncated univariate power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Union

Scalar = Union[int, Fraction]


class RationalSeries:
    """Coefficients c_0..c_{N-1}; arithmetic truncates at the shorter length."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Scalar]):
        self.coefficients: List[Fraction] = [Fraction(c) for c in coefficients]

    @classmethod
    def zeros(cls, n: int) -> "RationalSeries":
        return cls([0] * n)

    @classmethod
    def x(cls, n: int) -> "RationalSeries":
        return cls([0, 1] + [0] * (n - 2))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if k < len(self.coefficients) else Fraction(0)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(len(self), len(other))
        return RationalSeries(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(len(self), len(other))
        return RationalSeries(self[k] - other[k] for k in range(n))

    def scale(self, s: Scalar) -> "RationalSeries":
        return RationalSeries(c * s for c in self.coefficients)

    def __mul__(self, other) -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            return self.scale(other)
        n = min(len(self), len(other))
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coefficients[:n]):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other[j]
        return RationalSeries(out)

    __rmul__ = __mul__

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """self(inner(x)); needs inner[0] == 0."""
        if inner[0] != 0:
            raise ValueError("composition needs an inner series without constant term")
        n = min(len(self), len(inner))
        out = RationalSeries.zeros(n)
        power = RationalSeries([1] + [0] * (n - 1))
        for k in range(n):
            if self[k]:
                out = out + power.scale(self[k])
            power = power * inner
        return out

    def derivative(self) -> "RationalSeries":
        return RationalSeries(k * self[k] for k in range(1, len(self)))

    def evaluate(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + float(c)
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalSeries):
            return self.coefficients == other.coefficients
        if isinstance(other, Sequence):
            return self.coefficients == [Fraction(c) for c in other]
        return NotImplemented

    def __repr__(self) -> str:
        return "RationalSeries([" + ", ".join(str(c) for c in self.coefficients) + "])"
