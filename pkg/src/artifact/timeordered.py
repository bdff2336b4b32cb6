"""Time-ordered exponentials and Magnus / resolvent terms of step measures.

A step measure is a list of (element, duration) pairs in time order.  The
right time-ordered exponential is exp(s1 X1) exp(s2 X2) ..., first step on the
left; the left one reverses the product.

The degree-k Magnus term is computed by a transfer-matrix recursion instead of
enumerating weak compositions.  For a fixed scalar t let

    S_k(t) = sum over words w in the steps of length k of
             t^asc(w) (t-1)^des(w) prod_runs d^r G_r(t-1, t) X^r

where runs are maximal blocks of a repeated step, asc/des count run
boundaries where the step index goes up/down, and G_r is the Eulerian
polynomial.  Then the degree-k resolvent term is S_k(lambda) and the Magnus
term is the integral of S_k over [0, 1], a polynomial of degree k-1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.linalg import expm

from .config import DEFAULTS
from .errors import DomainError, ResourceCapError
from .free_algebra import NCPolynomial, parse_poly, truncated_exp
from .magnus_core import eulerian

EXACT_CAP = int(DEFAULTS["timeordered_exact_cap"])
MATRIX_CAP = int(DEFAULTS["timeordered_mat2_cap"])


# ---------------------------------------------------------------------------
# carriers

class MatrixCarrier:
    """Square float matrices with the operator 2-norm and scipy's expm."""

    exact = False

    def __init__(self, n: int = 2, cap: int = MATRIX_CAP):
        self.n = n
        self.cap = cap

    def coerce(self, x) -> np.ndarray:
        if hasattr(x, "array"):
            x = x.array()
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n, self.n):
            raise DomainError(f"expected a {self.n}x{self.n} matrix")
        return x

    def zero(self) -> np.ndarray:
        return np.zeros((self.n, self.n))

    def one(self) -> np.ndarray:
        return np.eye(self.n)

    def mul(self, x, y):
        return x @ y

    def exp(self, x):
        return expm(x)

    def norm(self, x) -> float:
        return float(np.linalg.norm(x, 2))

    def scalar(self, s) -> float:
        return float(s)


class ExactCarrier:
    """Noncommutative polynomials over Q truncated above ``cap``."""

    exact = True

    def __init__(self, cap: int = EXACT_CAP):
        self.cap = cap

    def coerce(self, x) -> NCPolynomial:
        if isinstance(x, str):
            x = parse_poly(x)
        if not isinstance(x, NCPolynomial):
            raise DomainError("exact carrier elements must be NCPolynomial")
        if x.constant_term() != 0:
            raise DomainError("step elements must have zero constant term")
        return x.with_cap(self.cap)

    def zero(self) -> NCPolynomial:
        return NCPolynomial.zero(self.cap)

    def one(self) -> NCPolynomial:
        return NCPolynomial.one(self.cap)

    def mul(self, x, y):
        return x * y

    def exp(self, x):
        return truncated_exp(x, self.cap)

    def norm(self, x) -> Fraction:
        return x.l1_norm()

    def scalar(self, s) -> Fraction:
        return Fraction(s)


Carrier = Union[MatrixCarrier, ExactCarrier]


@dataclass
class StepMeasure:
    steps: List[Tuple[Any, Any]]
    carrier: Carrier = field(default_factory=MatrixCarrier)

    def __post_init__(self):
        out = []
        for elem, dur in self.steps:
            dur = self.carrier.scalar(dur)
            if not dur > 0:
                raise DomainError("step durations must be positive")
            out.append((self.carrier.coerce(elem), dur))
        self.steps = out

    @classmethod
    def matrices(cls, steps: Iterable[Tuple[Any, float]], n: int = 2) -> "StepMeasure":
        return cls(list(steps), MatrixCarrier(n))

    @classmethod
    def exact(cls, steps: Iterable[Tuple[Any, Any]], cap: int = EXACT_CAP) -> "StepMeasure":
        return cls(list(steps), ExactCarrier(cap))

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, other: "StepMeasure") -> "StepMeasure":
        """Concatenation: self first, then other."""
        return StepMeasure(self.steps + other.steps, self.carrier)

    def total_variation(self):
        return sum((d * self.carrier.norm(x) for x, d in self.steps), self.carrier.scalar(0))

    def scaled(self, s) -> "StepMeasure":
        return StepMeasure([(x * s if not self.carrier.exact else x.scale(s), d)
                            for x, d in self.steps], self.carrier)

    def reversed(self) -> "StepMeasure":
        return StepMeasure(self.steps[::-1], self.carrier)

    def inverse(self) -> "StepMeasure":
        """Reversed with negated elements, so that the exponentials invert."""
        neg = [(-x, d) for x, d in self.steps[::-1]]
        return StepMeasure(neg, self.carrier)

    def split(self, index: int, parts: int = 2) -> "StepMeasure":
        x, d = self.steps[index]
        piece = [(x, d / parts)] * parts
        return StepMeasure(self.steps[:index] + piece + self.steps[index + 1:], self.carrier)


def rexp(phi: StepMeasure):
    c = phi.carrier
    out = c.one()
    for x, d in phi.steps:
        out = c.mul(out, c.exp(x * d if not c.exact else x.scale(d)))
    return out


def lexp(phi: StepMeasure):
    return rexp(phi.reversed())


# ---------------------------------------------------------------------------
# the transfer-matrix recursion

def _G(r: int, t):
    # G_r(t-1, t)
    u, v = t - 1, t
    total = sum(eulerian(r, m) * u ** m * v ** (r - 1 - m) for m in range(r))
    return total / math.factorial(r) if isinstance(t, float) else Fraction(total, math.factorial(r))


def _check_cap(phi: StepMeasure, k: int, cap: Optional[int]) -> None:
    cap = phi.carrier.cap if cap is None else cap
    if k < 1:
        raise DomainError("term degree must be at least 1")
    if k > cap:
        raise ResourceCapError(f"degree {k} exceeds the cap {cap}")


def _s_matrix(phi: StepMeasure, k: int, t: float) -> np.ndarray:
    m = len(phi)
    n = phi.carrier.n
    X = np.array([x for x, _ in phi.steps])
    d = np.array([float(s) for _, s in phi.steps])
    # P[r][i] = d_i^r G_r X_i^r
    P = [None]
    cur = np.broadcast_to(np.eye(n), (m, n, n)).copy()
    for r in range(1, k + 1):
        cur = cur @ X
        P.append(cur * (d ** r * _G(r, t))[:, None, None])
    V = [None] + [P[r].copy() for r in range(1, k + 1)]
    zero = np.zeros((1, n, n))
    for L in range(1, k):
        cs = np.cumsum(V[L], axis=0)
        pre = np.concatenate([zero, cs[:-1]])
        suf = cs[-1][None] - cs
        B = t * pre + (t - 1) * suf
        for r in range(1, k - L + 1):
            V[L + r] = V[L + r] + B @ P[r]
    return V[k].sum(axis=0)


def _s_generic(phi: StepMeasure, k: int, t):
    c = phi.carrier
    m = len(phi)
    P: List[List[Any]] = [[] for _ in range(k + 1)]
    for x, d in phi.steps:
        cur = c.one()
        for r in range(1, k + 1):
            cur = c.mul(cur, x)
            P[r].append(cur.scale(d ** r * _G(r, t)))
    V = [None] + [list(P[r]) for r in range(1, k + 1)]
    for L in range(1, k):
        prefix = [c.zero()]
        for i in range(m):
            prefix.append(prefix[-1] + V[L][i])
        total = prefix[-1]
        for i in range(m):
            B = prefix[i].scale(t) + (total - prefix[i + 1]).scale(t - 1)
            if B.is_zero():
                continue
            for r in range(1, k - L + 1):
                V[L + r][i] = V[L + r][i] + c.mul(B, P[r][i])
    out = c.zero()
    for v in V[k]:
        out = out + v
    return out


def _s_k(phi: StepMeasure, k: int, t):
    if not phi.steps:
        return phi.carrier.zero()
    if phi.carrier.exact:
        return _s_generic(phi, k, Fraction(t))
    return _s_matrix(phi, k, float(t))


@lru_cache(maxsize=None)
def _newton_cotes(k: int) -> Tuple[Tuple[Fraction, Fraction], ...]:
    # k rational nodes integrating polynomials of degree < k exactly on [0, 1]
    nodes = [Fraction(j + 1, k + 1) for j in range(k)]
    n = k
    M = [[x ** i for x in nodes] + [Fraction(1, i + 1)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    w = [M[i][n] / M[i][i] for i in range(n)]
    return tuple(zip(nodes, w))


def _gauss_nodes(k: int) -> List[Tuple[float, float]]:
    x, w = np.polynomial.legendre.leggauss(k // 2 + 1)
    return list(zip((x + 1) / 2, w / 2))


def magnus_term(phi: StepMeasure, k: int, cap: Optional[int] = None):
    """Degree-k term of the right Magnus expansion log rexp(phi)."""
    _check_cap(phi, k, cap)
    c = phi.carrier
    if c.exact:
        out = c.zero()
        for t, w in _newton_cotes(k):
            out = out + _s_k(phi, k, t).scale(w)
        return out
    return sum(w * _s_k(phi, k, t) for t, w in _gauss_nodes(k))


def resolvent_term(phi: StepMeasure, lam, k: int, cap: Optional[int] = None):
    """Degree-k term of the right resolvent expansion at lambda."""
    _check_cap(phi, k, cap)
    return _s_k(phi, k, lam)


@dataclass
class MagnusSeries:
    total: Any
    terms: List[Any]
    norms: List[float]

    @property
    def ratio_estimate(self) -> Optional[float]:
        """Root test estimate ||term_K||^(1/K) of the reciprocal convergence radius."""
        nz = [(k, n) for k, n in enumerate(self.norms, 1) if n > 0]
        if not nz:
            return None
        k, n = nz[-1]
        return float(n) ** (1 / k)


def magnus_partial_sum(phi: StepMeasure, K: int, cap: Optional[int] = None) -> MagnusSeries:
    c = phi.carrier
    terms = [magnus_term(phi, k, cap) for k in range(1, K + 1)]
    total = c.zero()
    for x in terms:
        total = total + x
    return MagnusSeries(total, terms, [c.norm(x) for x in terms])


def resolvent_partial_sum(phi: StepMeasure, lam, K: int, cap: Optional[int] = None):
    c = phi.carrier
    total = c.zero()
    for k in range(1, K + 1):
        total = total + resolvent_term(phi, lam, k, cap)
    return total


def resolvent_identity_check(phi: StepMeasure, lam, K: int, cap: Optional[int] = None) -> float:
    """||(lambda + (1-lambda) rexp) R - (rexp - 1)|| with R the resolvent partial sum to K.

    For exact carriers the residual is taken after truncation at the cap.
    """
    c = phi.carrier
    A = rexp(phi)
    R = resolvent_partial_sum(phi, lam, K, cap)
    one = c.one()
    if c.exact:
        lam = Fraction(lam)
        lhs = c.mul(one.scale(lam) + A.scale(1 - lam), R)
        return c.norm(lhs - (A - one))
    lhs = (lam * one + (1 - lam) * A) @ R
    return c.norm(lhs - (A - one))


def magnus_log(phi: StepMeasure, N: Optional[int] = None):
    """Sum of the Magnus terms up to degree N (the exact carrier's cap by default)."""
    N = phi.carrier.cap if N is None else N
    return magnus_partial_sum(phi, N).total


def contraction_identity_check(phi1: StepMeasure, phi2: StepMeasure, phi3: StepMeasure,
                               N: int) -> Fraction:
    """l1 norm of mu(phi1.phi2.phi3) - mu(phi1.(mu(phi2) as one unit step).phi3), truncated at N."""
    carrier = ExactCarrier(N)

    def recap(phi):
        return StepMeasure([(x, d) for x, d in phi.steps], carrier)

    p1, p2, p3 = recap(phi1), recap(phi2), recap(phi3)
    lhs = magnus_log(p1.then(p2).then(p3), N)
    mid = magnus_log(p2, N) if p2.steps else carrier.zero()
    middle = StepMeasure([(mid, 1)], carrier) if not mid.is_zero() else StepMeasure([], carrier)
    rhs = magnus_log(p1.then(middle).then(p3), N)
    return (lhs - rhs).l1_norm()


# ---------------------------------------------------------------------------
# discretization helpers and measure files

def discretize(density: Callable[[float], Any], a: float, b: float, steps: int,
               left: bool = False, n: int = 2) -> StepMeasure:
    """Midpoint step measure of a matrix density on [a, b].

    With ``left`` the steps are reversed so that rexp of the result
    approximates the left time-ordered exponential of the density.
    """
    if steps < 1:
        raise DomainError("need at least one step")
    h = (b - a) / steps
    out = [(density(a + (j + 0.5) * h), h) for j in range(steps)]
    return StepMeasure.matrices(out[::-1] if left else out, n)


def moan_density(theta: float, scale: float = 1.0) -> np.ndarray:
    s, c = math.sin(2 * theta), math.cos(2 * theta)
    return scale * np.array([[-s, c], [c, s]])


def moan_measure(steps: int, t: float = 1.0) -> StepMeasure:
    """t times the critical rotating-frame density on [0, pi], left-ordered."""
    return discretize(lambda th: moan_density(th, t), 0.0, math.pi, steps, left=True)


def parse_measure(text: str, exact: bool = False, cap: int = EXACT_CAP) -> StepMeasure:
    """One step per line: ``a,b,c,d;duration`` or ``<poly>;duration``."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ";" not in line:
            raise DomainError(f"line {lineno}: expected '<element>;<duration>'")
        elem, dur = (s.strip() for s in line.rsplit(";", 1))
        if exact:
            steps.append((parse_poly(elem, cap), Fraction(dur)))
        else:
            vals = [float(v) for v in elem.split(",")]
            n = math.isqrt(len(vals))
            if n * n != len(vals):
                raise DomainError(f"line {lineno}: matrix entries must form a square")
            steps.append((np.array(vals).reshape(n, n), float(dur)))
    if exact:
        return StepMeasure.exact(steps, cap)
    if not steps:
        raise DomainError("empty measure")
    return StepMeasure.matrices(steps, steps[0][0].shape[0])
