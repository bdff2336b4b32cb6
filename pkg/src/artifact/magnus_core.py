"""Magnus commutators, BCH terms, Eulerian and Goldberg coefficients, resolvents.

Everything is exact.  Variables of mu_k are X1..Xk; in two-variable (BCH)
contexts X is index 1 and Y is index 2.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .config import DEFAULTS
from .errors import DomainError, ResourceCapError
from .free_algebra import (
    LieExpression,
    NCPolynomial,
    Tree,
    Word,
    bracket_canonical,
    commutator,
    descents,
    truncated_exp,
    truncated_log,
)
from .series import RationalSeries

DEFAULT_CAP = int(DEFAULTS["mu_cap"])


def _check_cap(k: int, cap: Optional[int]) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if k < 1:
        raise DomainError("arity must be at least 1")
    if k > cap:
        raise ResourceCapError(f"k={k} exceeds the enumeration cap {cap}")


# ---------------------------------------------------------------------------
# Bernoulli and Eulerian numbers

@lru_cache(maxsize=None)
def bernoulli(j: int) -> Fraction:
    """B_j with B_1 = -1/2, from sum_{i<=j} C(j+1, i) B_i = 0."""
    if j < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if j == 0:
        return Fraction(1)
    if j > 1 and j % 2:
        return Fraction(0)
    s = sum((comb(j + 1, i) * bernoulli(i) for i in range(j)), Fraction(0))
    return -s / (j + 1)


def beta(j: int) -> Fraction:
    """beta_j = B_j / j!, the Taylor coefficients of x/(e^x - 1)."""
    return bernoulli(j) / factorial(j)


@lru_cache(maxsize=None)
def eulerian(n: int, m: int) -> int:
    """A(n, m): permutations of n letters with m descents."""
    if n < 1:
        raise DomainError("Eulerian numbers need n >= 1")
    if m < 0 or m >= n:
        return 0
    if n == 1:
        return 1
    return (m + 1) * eulerian(n - 1, m) + (n - m) * eulerian(n - 1, m - 1)


def eulerian_poly(n: int) -> Dict[Tuple[int, int], Fraction]:
    """G_n(u, v) as {(deg_u, deg_v): coeff} = sum_m A(n,m) u^m v^(n-1-m) / n!."""
    return {(m, n - 1 - m): Fraction(eulerian(n, m), factorial(n)) for m in range(n)}


# ---------------------------------------------------------------------------
# univariate polynomials in t (lists of Fractions, index = power)

def _tmul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def _tpow_shift(a: int, d: int) -> Tuple[Fraction, ...]:
    # t^a (t-1)^d
    p = [Fraction(0)] * a + [Fraction(1)]
    for _ in range(d):
        p = _tmul(p, [Fraction(-1), Fraction(1)])
    return tuple(p)


@lru_cache(maxsize=None)
def _G_at_t(n: int) -> Tuple[Fraction, ...]:
    # G_n(t-1, t) as a polynomial in t
    out = [Fraction(0)] * n
    for (m, r), c in eulerian_poly(n).items():
        for i, a in enumerate(_tpow_shift(r, m)):
            out[i] += c * a
    return tuple(out)


def _integrate01(p: Sequence[Fraction]) -> Fraction:
    return sum((c / (i + 1) for i, c in enumerate(p)), Fraction(0))


def beta_integral(a: int, d: int) -> Fraction:
    """Exact value of the integral of t^a (t-1)^d over [0, 1]."""
    return Fraction((-1) ** d * factorial(a) * factorial(d), factorial(a + d + 1))


# ---------------------------------------------------------------------------
# Magnus commutators

def mu_coefficient(k: int, des: int) -> Fraction:
    """Coefficient of a permutation word with ``des`` descents in mu_k."""
    return Fraction((-1) ** des * factorial(des) * factorial(k - 1 - des), factorial(k))


@lru_cache(maxsize=16)
def _mu_direct_cached(k: int) -> NCPolynomial:
    coeffs = [mu_coefficient(k, d) for d in range(k)]
    terms = {}
    for perm in permutations(range(1, k + 1)):
        terms[perm] = coeffs[descents(perm)]
    return NCPolynomial(terms)


def magnus_commutator_direct(k: int, cap: Optional[int] = None) -> NCPolynomial:
    """mu_k(X1..Xk) summed over permutations with weights (-1)^des des! asc! / k!."""
    _check_cap(k, cap)
    return _mu_direct_cached(k)


def mu_apply(args: Sequence[NCPolynomial], cap: Optional[int] = None) -> NCPolynomial:
    """mu_k evaluated on arbitrary polynomial arguments (multilinear substitution)."""
    k = len(args)
    mu = magnus_commutator_direct(k, cap)
    return mu.substitute({i + 1: a for i, a in enumerate(args)})


def ordered_partitions(elems: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Ordered set partitions of ``elems``; each block keeps the input order."""
    elems = tuple(elems)
    if not elems:
        yield []
        return
    n = len(elems)
    for r in range(1, n + 1):
        for pos in combinations(range(n), r):
            block = tuple(elems[i] for i in pos)
            rest = tuple(e for i, e in enumerate(elems) if i not in pos)
            for tail in ordered_partitions(rest):
                yield [block] + tail


@lru_cache(maxsize=None)
def _mu_lie(idx: Tuple[int, ...]) -> Dict[Tree, Fraction]:
    if len(idx) == 1:
        return {idx[0]: Fraction(1)}
    first = idx[0]
    total: Dict[Tree, Fraction] = {}
    for blocks in ordered_partitions(idx[1:]):
        b = beta(len(blocks))
        if not b:
            continue
        cur: Dict[Tree, Fraction] = {first: b}
        # ad mu(B1) ... ad mu(Bs) X_first, innermost bracket is the last block
        for blk in reversed(blocks):
            nxt: Dict[Tree, Fraction] = {}
            for ta, ca in _mu_lie(blk).items():
                for tc, cc in cur.items():
                    sgn, t = bracket_canonical(ta, tc)
                    nxt[t] = nxt.get(t, 0) + sgn * ca * cc
            cur = {t: c for t, c in nxt.items() if c}
        for t, c in cur.items():
            total[t] = total.get(t, 0) + c
    return {t: c for t, c in total.items() if c}


def magnus_commutator_recursive(k: int, cap: Optional[int] = None) -> LieExpression:
    """mu_k as a Lie expression from the recursion expanding in X1."""
    _check_cap(k, cap)
    return LieExpression.from_dict(_mu_lie(tuple(range(1, k + 1))))


# ---------------------------------------------------------------------------
# BCH terms and Goldberg coefficients

def bch_term(n: int, cap: Optional[int] = None) -> NCPolynomial:
    """Delta_n(X, Y) = sum_j mu_n(X^j, Y^(n-j)) / (j! (n-j)!)  (X = 1, Y = 2)."""
    _check_cap(n, cap)
    mu = magnus_commutator_direct(n, cap)
    out = NCPolynomial.zero()
    for j in range(n + 1):
        mapping = {i: (1 if i <= j else 2) for i in range(1, n + 1)}
        out = out + mu.relabel(mapping).scale(Fraction(1, factorial(j) * factorial(n - j)))
    return out


def bch_oracle(n: int) -> NCPolynomial:
    """Degree-n part of the truncated log(exp X exp Y)."""
    X, Y = NCPolynomial.var(1), NCPolynomial.var(2)
    return truncated_log(truncated_exp(X, n) * truncated_exp(Y, n), n).homogeneous_part(n)


def _parse_xy_word(M: Union[str, Sequence[int]]) -> Word:
    if isinstance(M, str):
        letters = M.replace(" ", "").upper()
        if not letters or set(letters) - {"X", "Y"}:
            raise DomainError(f"monomial must be a nonempty word over X, Y: {M!r}")
        return tuple(1 if ch == "X" else 2 for ch in letters)
    w = tuple(M)
    if not w or set(w) - {1, 2}:
        raise DomainError("monomial must be a nonempty word over {1, 2}")
    return w


def runs(w: Sequence[int]) -> List[int]:
    out: List[int] = []
    for i, x in enumerate(w):
        if i and w[i - 1] == x:
            out[-1] += 1
        else:
            out.append(1)
    return out


def goldberg_coefficient(M: Union[str, Sequence[int]]) -> Fraction:
    """Coefficient of the word M in log(exp X exp Y).

    Integrates (t-1)^des t^asc prod_i G_{k_i}(t-1, t) over [0, 1] exactly, where
    des/asc count YX/XY adjacencies and k_i are the run lengths.
    """
    w = _parse_xy_word(M)
    des = sum(1 for a, b in zip(w, w[1:]) if a > b)
    asc = sum(1 for a, b in zip(w, w[1:]) if a < b)
    p = list(_tpow_shift(asc, des))
    for r in runs(w):
        p = _tmul(p, list(_G_at_t(r)))
    return _integrate01(p)


def goldberg_from_runs(first: str, run_lengths: Sequence[int]) -> Fraction:
    """Goldberg coefficient for the run-length form, e.g. ('X', [2, 1]) is XXY."""
    letters = "XY" if first.upper() == "X" else "YX"
    word = "".join(letters[i % 2] * r for i, r in enumerate(run_lengths))
    return goldberg_coefficient(word)


# ---------------------------------------------------------------------------
# absolute Magnus characteristic

def theta_coefficient(k: int) -> Fraction:
    """Theta_k = sum_m A(k,m) m! (k-1-m)! / k!^2."""
    if k < 1:
        raise DomainError("Theta_k needs k >= 1")
    s = sum(eulerian(k, m) * factorial(m) * factorial(k - 1 - m) for m in range(k))
    return Fraction(s, factorial(k) ** 2)


def theta_series(N: int) -> RationalSeries:
    """Theta(x) coefficients for x^0 .. x^N."""
    return RationalSeries([0] + [theta_coefficient(k) for k in range(1, N + 1)])


# ---------------------------------------------------------------------------
# resolvent polynomials

class LambdaPolynomial:
    """Polynomial in lambda with NCPolynomial coefficients: {power: poly}."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[int, NCPolynomial]):
        self.coefficients = {j: p for j, p in sorted(coefficients.items()) if not p.is_zero()}

    def degree(self) -> int:
        return max(self.coefficients, default=0)

    def evaluate(self, lam) -> NCPolynomial:
        lam = Fraction(lam)
        out = NCPolynomial.zero()
        for j, p in self.coefficients.items():
            out = out + p.scale(lam ** j)
        return out

    def integrate(self) -> NCPolynomial:
        """Exact integral over lambda in [0, 1]."""
        out = NCPolynomial.zero()
        for j, p in self.coefficients.items():
            out = out + p.scale(Fraction(1, j + 1))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients


def _descent_classes(k: int) -> List[NCPolynomial]:
    # S_d = sum of permutation words of 1..k with d descents
    buckets: List[Dict[Word, int]] = [dict() for _ in range(k)]
    for perm in permutations(range(1, k + 1)):
        buckets[descents(perm)][perm] = 1
    return [NCPolynomial(b) for b in buckets]


def resolvent_poly(k: int, cap: Optional[int] = None) -> LambdaPolynomial:
    """R^(lambda)(X1..Xk) = sum_sigma lambda^asc (lambda-1)^des X_sigma."""
    _check_cap(k, cap)
    classes = _descent_classes(k)
    coeffs: Dict[int, NCPolynomial] = {}
    for d, S in enumerate(classes):
        for j, c in enumerate(_tpow_shift(k - 1 - d, d)):
            if c:
                coeffs[j] = coeffs.get(j, NCPolynomial.zero()) + S.scale(c)
    return LambdaPolynomial(coeffs)


# ---------------------------------------------------------------------------
# identity checks

def _mu_on(indices: Sequence[int]) -> NCPolynomial:
    k = len(indices)
    return magnus_commutator_direct(k).relabel({i + 1: x for i, x in enumerate(indices)})


def ppod_check(k: int) -> bool:
    """X1...Xk equals the sum over ordered partitions of (1/s!) prod mu(blocks)."""
    if k > 6:
        raise ResourceCapError("ppod_check is limited to k <= 6")
    lhs = NCPolynomial.monomial(tuple(range(1, k + 1)))
    rhs = NCPolynomial.zero()
    for blocks in ordered_partitions(range(1, k + 1)):
        term = NCPolynomial.one()
        for b in blocks:
            term = term * _mu_on(b)
        rhs = rhs + term.scale(Fraction(1, factorial(len(blocks))))
    return lhs == rhs


def _ad_chain(xs: Sequence[NCPolynomial], target: NCPolynomial) -> NCPolynomial:
    out = target
    for x in reversed(xs):
        out = commutator(x, out)
    return out


def schur_identity_sides(n: int, last: bool = False) -> Tuple[NCPolynomial, NCPolynomial]:
    """Both sides of the generalized Schur identity symmetrized over the free slots.

    Only singleton blocks survive the symmetrization of the Magnus recursion,
    so each side carries (n-1)! beta_{n-1}; expanding in the last variable
    adds the sign (-1)^(n-1).
    """
    X = [NCPolynomial.var(i) for i in range(n + 1)]
    lhs, rhs = NCPolynomial.zero(), NCPolynomial.zero()
    b = beta(n - 1) * factorial(n - 1) * ((-1) ** (n - 1) if last else 1)
    if not last:
        for sigma in permutations(range(2, n + 1)):
            lhs = lhs + _mu_on((1,) + sigma)
            rhs = rhs + _ad_chain([X[i] for i in sigma], X[1]).scale(b)
    else:
        for sigma in permutations(range(1, n)):
            lhs = lhs + _mu_on(sigma + (n,))
            rhs = rhs + _ad_chain([X[i] for i in sigma], X[n]).scale(b)
    return lhs, rhs


def generalized_recursion_rhs(k: int, h1: int, h2: int) -> NCPolynomial:
    """Right side of the generalized Magnus recursion for mu_k.

    Sum over ordered partitions of the middle variables of
    mu(X_1..X_h1, mu(I_1), .., mu(I_s), trailing h2 variables) / s!.
    """
    if h1 < 0 or h2 < 0 or h1 + h2 > k:
        raise DomainError("need h1, h2 >= 0 and h1 + h2 <= k")
    head = [NCPolynomial.var(i) for i in range(1, h1 + 1)]
    tail = [NCPolynomial.var(i) for i in range(k - h2 + 1, k + 1)]
    middle = range(h1 + 1, k - h2 + 1)
    out = NCPolynomial.zero()
    for blocks in ordered_partitions(middle):
        args = head + [_mu_on(b) for b in blocks] + tail
        out = out + mu_apply(args).scale(Fraction(1, factorial(len(blocks))))
    return out


def solomon_projection(k: int) -> NCPolynomial:
    """Multiplicity-one part of log(exp X1 ... exp Xk)."""
    # words with a repeated letter never contribute, so drop them as we go
    def mul(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
        out: Dict[Word, Fraction] = {}
        for w1, c1 in p.items():
            for w2, c2 in q.items():
                if set(w1) & set(w2):
                    continue
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return NCPolynomial(out)

    prod = NCPolynomial.one()
    for i in range(1, k + 1):
        prod = mul(prod, NCPolynomial.one() + NCPolynomial.var(i))
    x = prod - NCPolynomial.one()
    log = NCPolynomial.zero()
    power = NCPolynomial.one()
    for n in range(1, k + 1):
        power = mul(power, x)
        log = log + power.scale(Fraction((-1) ** (n + 1), n))
    return log.multiplicity_one_part(range(1, k + 1))
