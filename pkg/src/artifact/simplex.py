"""Exact rational linear programming: dense two-phase tableau simplex with Bland's rule.

Solves  min c.x  subject to  A x = b, x >= 0  over Fractions.  Small
problems only (a few dozen rows, a few hundred columns).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from .errors import ArtifactError


class InfeasibleError(ArtifactError):
    pass


class UnboundedError(ArtifactError):
    pass


@dataclass
class LPResult:
    x: List[Fraction]
    objective: Fraction
    basis: List[int]
    dual: List[Fraction]
    pivots: int = 0
    notes: List[str] = field(default_factory=list)


def solve_exact(M: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solve a square nonsingular system exactly by Gauss-Jordan elimination."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        if p != 1:
            aug[col] = [v / p for v in aug[col]]
        prow = aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], prow)]
    return [aug[r][n] for r in range(n)]


def exact_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a list of equal-length vectors over the rationals."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / p
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class IncrementalBasis:
    """Greedy exact independence test: keeps an echelon form of accepted vectors."""

    def __init__(self):
        self._rows: List[tuple] = []  # (pivot column, normalized vector)

    def __len__(self) -> int:
        return len(self._rows)

    def add(self, vec: Sequence[Fraction]) -> bool:
        v = [Fraction(x) for x in vec]
        for col, row in self._rows:
            f = v[col]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        col = next((i for i, x in enumerate(v) if x != 0), None)
        if col is None:
            return False
        p = v[col]
        self._rows.append((col, [x / p for x in v]))
        return True


def _pivot(T: List[List[Fraction]], r: int, c: int) -> None:
    p = T[r][c]
    if p != 1:
        T[r] = [v / p for v in T[r]]
    prow = T[r]
    nz = [j for j, v in enumerate(prow) if v != 0]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f != 0:
                row = T[i]
                for j in nz:
                    row[j] -= f * prow[j]


def _run(T: List[List[Fraction]], basis: List[int], ncols: int, allowed: int) -> int:
    # T: rows 0..m-1 constraints, last row = reduced costs; column ncols is rhs.
    # Bland's rule: smallest-index entering column, smallest basis index on ties.
    m = len(basis)
    pivots = 0
    obj = T[m]
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return pivots
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][ncols] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise UnboundedError("objective unbounded below")
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter
        pivots += 1


def simplex(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> LPResult:
    """Two-phase simplex.  ``A`` must have full row rank."""
    m, n = len(A), len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    A0 = [row[:] for row in A]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # phase 1: artificial columns n..n+m-1
    ncols = n + m
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        cost = [cv - tv for cv, tv in zip(cost, T[i])]
    T.append(cost)
    basis = list(range(n, n + m))
    pivots = _run(T, basis, ncols, ncols)
    if T[m][ncols] != 0:
        raise InfeasibleError("linear program is infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                raise ArithmeticError("constraint matrix is rank deficient")
            _pivot(T, i, j)
            basis[i] = j
            pivots += 1
    # phase 2
    T = [row[:n] + [row[ncols]] for row in T[:m]]
    obj = [Fraction(v) for v in c] + [Fraction(0)]
    for i in range(m):
        cb = obj[basis[i]]
        if cb != 0:
            obj = [ov - cb * tv for ov, tv in zip(obj, T[i])]
    T.append(obj)
    pivots += _run(T, basis, n, n)
    x = [Fraction(0)] * n
    for i in range(m):
        x[basis[i]] = T[i][n]
    objective = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    dual = dual_from_basis(c, A0, basis)
    return LPResult(x=x, objective=objective, basis=list(basis), dual=dual, pivots=pivots)


def dual_from_basis(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], basis: Sequence[int]) -> List[Fraction]:
    """y solving B^T y = c_B, the dual solution attached to a basis."""
    m = len(A)
    BT = [[A[i][basis[j]] for i in range(m)] for j in range(m)]
    return solve_exact(BT, [Fraction(c[j]) for j in basis])
