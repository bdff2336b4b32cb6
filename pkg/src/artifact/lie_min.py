"""Minimal l1 presentations of Magnus commutators by multilinear Lie monomials.

The LP is  min sum|theta_g|  s.t.  sum theta_g expand(g) = mu_k.  A
multilinear Lie element is determined by its coefficients on words that
start with X1, so only those (k-1)! rows are kept; the restricted matrix
has full row rank.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ArtifactError, DomainError
from .free_algebra import (
    LieExpression,
    NCPolynomial,
    Tree,
    Word,
    expand_tree,
    format_tree,
    leaves,
    parse_tree,
)
from .magnus_core import magnus_commutator_direct
from .simplex import IncrementalBasis, LPResult, simplex, solve_exact

log = logging.getLogger(__name__)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass
class LieDictionary:
    k: int
    columns: List[Tuple[Tree, NCPolynomial]]
    basis_rank: int
    raw_count: int

    def __len__(self) -> int:
        return len(self.columns)


@dataclass
class MinimalPresentation:
    k: int
    coefficients: Dict[Tree, Fraction]
    objective: Fraction
    dual_certificate: Dict[Word, Fraction] = field(default_factory=dict)
    certified: bool = False
    method: str = "exact-simplex"

    @property
    def theta_lie(self) -> Fraction:
        return self.objective / factorial(self.k)

    def as_lie_expression(self) -> LieExpression:
        return LieExpression.from_dict(self.coefficients)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "theta_lie": str(self.theta_lie),
            "objective": str(self.objective),
            "certified": self.certified,
            "method": self.method,
            "presentation": [[format_tree(t), str(c)] for c, t in self.as_lie_expression().terms],
            "dual_certificate": [["".join(f"X{i}" for i in w), str(v)]
                                 for w, v in sorted(self.dual_certificate.items())],
        }


def _check_k(k: int) -> None:
    if not 2 <= k <= 6:
        raise DomainError("Lie-monomial enumeration supports 2 <= k <= 6")


@lru_cache(maxsize=None)
def _canonical_trees(elems: Tuple[int, ...]) -> Tuple[Tree, ...]:
    # canonical trees: the block holding the minimum goes left
    if len(elems) == 1:
        return (elems[0],)
    first, rest = elems[0], elems[1:]
    out: List[Tree] = []
    n = len(rest)
    for r in range(0, n):
        for pos in combinations(range(n), r):
            left = (first,) + tuple(rest[i] for i in pos)
            right = tuple(e for i, e in enumerate(rest) if i not in pos)
            for a in _canonical_trees(left):
                for b in _canonical_trees(right):
                    out.append((a, b))
    return tuple(out)


def _sign_normalize(p: NCPolynomial) -> Tuple[int, Tuple[Tuple[Word, Fraction], ...]]:
    items = tuple(p.items())
    s = 1 if items[0][1] > 0 else -1
    scale = items[0][1] * s
    return s, tuple((w, c * s / scale) for w, c in items)


@lru_cache(maxsize=None)
def enumerate_lie_monomials(k: int) -> LieDictionary:
    """All multilinear Lie monomials in X1..Xk up to sign, deduplicated by expansion."""
    _check_k(k)
    trees = _canonical_trees(tuple(range(1, k + 1)))
    seen: Dict[Tuple, int] = {}
    columns: List[Tuple[Tree, NCPolynomial]] = []
    for t in trees:
        e = expand_tree(t)
        if e.is_zero():
            continue
        s, key = _sign_normalize(e)
        if key in seen:
            continue
        seen[key] = len(columns)
        columns.append((t, e))
    rows = _rows(k)
    echelon = IncrementalBasis()
    for _, e in columns:
        if len(echelon) == len(rows):
            break
        echelon.add([e.coeff(w) for w in rows])
    rank = len(echelon)
    return LieDictionary(k=k, columns=columns, basis_rank=rank,
                         raw_count=catalan(k - 1) * factorial(k))


def _rows(k: int) -> List[Word]:
    return [(1,) + p for p in permutations(range(2, k + 1))]


def _lp_data(k: int):
    d = enumerate_lie_monomials(k)
    rows = _rows(k)
    mu = magnus_commutator_direct(k)
    A = [[e.coeff(w) for _, e in d.columns] for w in rows]
    b = [mu.coeff(w) for w in rows]
    return d, rows, A, b


def certify(k: int, coefficients: Dict[Tree, Fraction], y: Dict[Word, Fraction]) -> bool:
    """Exact optimality check: primal feasible, dual feasible, equal objectives."""
    d, rows, A, b = _lp_data(k)
    mu = magnus_commutator_direct(k)
    primal = LieExpression.from_dict(coefficients)
    if primal.expand() != mu:
        return False
    for _, e in d.columns:
        if abs(sum((e.coeff(w) * v for w, v in y.items()), Fraction(0))) > 1:
            return False
    dual_obj = sum((mu.coeff(w) * v for w, v in y.items()), Fraction(0))
    return dual_obj == primal.cost()


def theta_lie(k: int, method: Optional[str] = None) -> MinimalPresentation:
    """Solve the l1 LP for mu_k.

    method 'exact' runs the rational simplex (default for k <= 5); 'highs'
    finds an optimal basis in floating point and re-solves it exactly
    (default for k = 6).  Both return an exactly checked dual certificate.
    """
    _check_k(k)
    if method is None:
        method = "exact" if k <= 5 else "highs"
    if method == "exact":
        return _theta_lie_exact(k)
    if method == "highs":
        return _theta_lie_highs(k)
    raise DomainError(f"unknown LP method {method!r}")


def _theta_lie_exact(k: int) -> MinimalPresentation:
    d, rows, A, b = _lp_data(k)
    n = len(d.columns)
    # theta = plus - minus
    A2 = [row + [-v for v in row] for row in A]
    c = [Fraction(1)] * (2 * n)
    res: LPResult = simplex(c, A2, b)
    coeffs: Dict[Tree, Fraction] = {}
    for j, (t, _) in enumerate(d.columns):
        v = res.x[j] - res.x[n + j]
        if v:
            coeffs[t] = v
    y = {w: v for w, v in zip(rows, res.dual)}
    ok = certify(k, coeffs, y)
    if not ok:
        raise ArtifactError("exact simplex result failed certification")
    log.info("k=%d exact simplex: %d pivots, objective %s", k, res.pivots, res.objective)
    return MinimalPresentation(k=k, coefficients=coeffs, objective=res.objective,
                               dual_certificate=y, certified=True, method="exact-simplex")


def _theta_lie_highs(k: int) -> MinimalPresentation:
    import numpy as np
    from scipy.optimize import linprog

    d, rows, A, b = _lp_data(k)
    n, m = len(d.columns), len(rows)
    Af = np.array([[float(v) for v in row] for row in A])
    bf = np.array([float(v) for v in b])
    res = linprog(np.ones(2 * n), A_eq=np.hstack([Af, -Af]), b_eq=bf,
                  bounds=(0, None), method="highs")
    if res.status != 0:
        raise ArtifactError(f"floating LP failed: {res.message}")
    y_float = np.asarray(res.eqlin.marginals)
    reduced = Af.T @ y_float
    theta_f = res.x[:n] - res.x[n:]
    # tight columns carry the sign of the dual constraint they saturate
    order = np.argsort(-(np.abs(theta_f) + (np.abs(np.abs(reduced) - 1) < 1e-7)))
    chosen: List[int] = []
    basis_rows: List[List[Fraction]] = []
    echelon = IncrementalBasis()
    for j in order:
        if len(chosen) == m:
            break
        if abs(abs(reduced[j]) - 1) > 1e-7 and abs(theta_f[j]) < 1e-9:
            continue
        col = [A[i][j] for i in range(m)]
        if echelon.add(col):
            basis_rows.append(col)
            chosen.append(int(j))
    if len(chosen) < m:
        raise ArtifactError("could not assemble a full basis from tight columns")
    signs = [Fraction(1) if reduced[j] > 0 else Fraction(-1) for j in chosen]
    y_vals = solve_exact(basis_rows, signs)
    x_vals = solve_exact([[basis_rows[j][i] for j in range(m)] for i in range(m)], b)
    coeffs = {d.columns[j][0]: v for j, v in zip(chosen, x_vals) if v}
    y = {w: v for w, v in zip(rows, y_vals)}
    ok = certify(k, coeffs, y)
    obj = sum((abs(v) for v in coeffs.values()), Fraction(0))
    if not ok:
        raise ArtifactError("re-solved basis failed exact certification")
    return MinimalPresentation(k=k, coefficients=coeffs, objective=obj, dual_certificate=y,
                               certified=True, method="highs+exact-basis")


@dataclass
class PresentationReport:
    valid: bool
    cost: Fraction
    residual: NCPolynomial

    def __bool__(self) -> bool:
        return self.valid


def verify_presentation(coeffs: Iterable[Tuple[Tree, Fraction]], k: int) -> PresentationReport:
    """Check that sum c*tree expands to mu_k; report the l1 cost and residual."""
    terms = []
    for t, c in coeffs:
        lv = sorted(leaves(t))
        if lv != list(range(1, k + 1)):
            raise DomainError(f"tree {format_tree(t)} is not a multilinear tree in X1..X{k}")
        terms.append((c, t))
    expr = LieExpression(terms)
    residual = expr.expand() - magnus_commutator_direct(k)
    return PresentationReport(valid=residual.is_zero(), cost=expr.cost(), residual=residual)


def parse_presentation(text: str) -> List[Tuple[Tree, Fraction]]:
    """Lines of the form ``[[1,2],[3,4]]:p/q``; blank lines and # comments ignored."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise DomainError(f"expected 'tree:coefficient', got {line!r}")
        t, c = line.rsplit(":", 1)
        out.append((parse_tree(t), Fraction(c.strip())))
    return out


def first_canonical_projection(p: NCPolynomial, k: int) -> NCPolynomial:
    """Symmetric-degree-one part of a multilinear polynomial in X1..Xk.

    Each word X_{s1}..X_{sk} decomposes over ordered partitions into
    (1/s!) prod mu(blocks); the s = 1 term is mu_k with the arguments taken
    in word order.
    """
    if p.is_zero():
        return p
    target = list(range(1, k + 1))
    mu = magnus_commutator_direct(k)
    out = NCPolynomial.zero()
    for w, c in p.items():
        if sorted(w) != target:
            raise DomainError("first_canonical_projection needs multilinear input in X1..Xk")
        out = out + mu.relabel({i + 1: x for i, x in enumerate(w)}).scale(c)
    return out


# ---------------------------------------------------------------------------
# reference presentations (k = 4 family, k = 5 and k = 6 examples)

def k4_family(lam: Sequence[Fraction]) -> List[Tuple[Tree, Fraction]]:
    """The five-parameter family of optimal k = 4 presentations (lambda in the simplex)."""
    l1, l2, l3, l4, l5 = (Fraction(v) for v in lam)
    raw = [
        ("[[[1,4],2],3]", -l1), ("[1,[2,[3,4]]]", l5 + l1 + l2),
        ("[[1,[2,4]],3]", l2), ("[[1,[2,3]],4]", l1 + l2 + l3),
        ("[[1,3],[2,4]]", l3), ("[[1,2],[3,4]]", l2 + l3 + l4),
        ("[[[1,3],4],2]", -l4), ("[1,[[2,3],4]]", l3 + l4 + l5),
        ("[[[1,4],3],2]", -l5), ("[[[1,2],3],4]", l4 + l5 + l1),
    ]
    return [(parse_tree(t), c / 12) for t, c in raw if c]


K5_PRESENTATION = """
[[1,2],[3,[4,5]]]:4
[[[1,2],[3,4]],5]:4
[[[1,2],3],[4,5]]:4
[1,[[2,3],[4,5]]]:4
[[1,[2,[3,5]]],4]:4
[[[[1,3],4],5],2]:-4
[[1,[[2,3],4]],5]:4
[1,[[2,[3,4]],5]]:4
[[1,3],[[2,4],5]]:2
[[1,4],[[2,5],3]]:2
[[[1,4],3],[2,5]]:-2
[[1,[2,4]],[3,5]]:2
[[[[1,5],4],3],2]:2
[[[[1,5],2],3],4]:-2
[[[1,2],[3,5]],4]:2
[[[1,3],[4,5]],2]:-2
"""

K6_PRESENTATION = """
[[1,[3,5]],[[2,4],6]]:4
[[1,[4,5]],[[2,3],6]]:4
[[[1,4],5],[2,[3,6]]]:-4
[[1,[2,3]],[[4,5],6]]:4
[[[1,2],3],[4,[5,6]]]:4
[[1,[2,4]],[[3,5],6]]:4
[[1,[2,5]],[[3,4],6]]:4
[[1,[3,4]],[[2,5],6]]:4
[1,[[2,[3,[4,5]]],6]]:4
[1,[[[2,[3,4]],5],6]]:4
[1,[[[[2,5],3],4],6]]:-4
[[1,3],[[2,[4,5]],6]]:4
[[1,[2,[[3,4],5]]],6]:4
[[1,[[[2,3],4],5]],6]:4
[[1,[[[2,5],4],3]],6]:-4
[[1,[[2,3],5]],[4,6]]:4
[[1,4],[[2,[3,5]],6]]:4
[[1,5],[[2,[3,4]],6]]:4
[[1,[[2,4],5]],[3,6]]:4
[[1,[[3,4],5]],[2,6]]:4
[[[[1,3],[4,5]],6],2]:-2
[[[[[1,3],4],5],6],2]:-2
[[[[[1,3],6],5],4],2]:2
[[[[[1,4],5],6],3],2]:4
[[[[[1,2],6],5],4],3]:2
[[[[1,2],6],[4,5]],3]:-2
[[[[[1,2],4],5],6],3]:-2
[[[1,[4,[5,6]]],2],3]:-4
[[1,[2,[3,[5,6]]]],4]:2
[[[[1,[5,6]],2],3],4]:-2
[[[1,[5,6]],[2,3]],4]:-2
[[[[[1,2],3],6],5],4]:-4
[[1,[2,[3,[4,6]]]],5]:2
[[1,[[2,3],[4,6]]],5]:2
[[[[1,[4,6]],2],3],5]:-2
[[[1,[2,[3,6]]],4],5]:4
[[1,2],[[3,[4,6]],5]]:2
[[1,2],[3,[[4,5],6]]]:2
[[1,2],[[3,4],[5,6]]]:2
[[1,2],[[3,[4,5]],6]]:4
[[[1,2],[3,4]],[5,6]]:2
[[[1,[2,3]],4],[5,6]]:2
[[[[1,3],4],2],[5,6]]:-2
[[1,[[2,3],4]],[5,6]]:4
[[1,3],[[[2,4],5],6]]:2
[[1,3],[[[2,6],4],5]]:-2
[[1,[2,[3,5]]],[4,6]]:2
[[[[1,5],3],2],[4,6]]:-2
"""

# alternative block that may replace the last-but-one line group of K6
K6_ALTERNATIVE_BLOCK = """
[[1,[2,[3,4]]],[5,6]]:2
[[1,[[2,3],4]],[5,6]]:2
[[[[1,4],2],3],[5,6]]:-2
[[[1,[2,3]],4],[5,6]]:4
"""


def reference_presentation(k: int) -> List[Tuple[Tree, Fraction]]:
    """Known economical presentations, scaled to exact coefficients."""
    if k == 2:
        return [(parse_tree("[1,2]"), Fraction(1, 2))]
    if k == 3:
        return [(parse_tree("[[1,2],3]"), Fraction(1, 6)), (parse_tree("[1,[2,3]]"), Fraction(1, 6))]
    if k == 4:
        return k4_family([0, 0, 1, 0, 0])
    if k == 5:
        return [(t, c / 120) for t, c in parse_presentation(K5_PRESENTATION)]
    if k == 6:
        return [(t, c / 240) for t, c in parse_presentation(K6_PRESENTATION)]
    raise DomainError("reference presentations exist for 2 <= k <= 6")
