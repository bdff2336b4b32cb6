"""Exact arithmetic in the free associative algebra over the rationals.

Words are tuples of positive variable indices (X1 is index 1).  Polynomials
map words to Fractions and never store zero coefficients.  Everything here is
exact; nothing touches floating point.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DomainError

Word = Tuple[int, ...]
Scalar = Union[int, Fraction]
Tree = Union[int, Tuple["Tree", "Tree"]]

ALIASES = {"X": 1, "Y": 2}


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact, got {type(c).__name__}")


def _word_key(w: Word):
    return (len(w), w)


def descents(w: Sequence[int]) -> int:
    """Number of positions i with w[i] > w[i+1]."""
    return sum(1 for x, y in zip(w, w[1:]) if x > y)


def ascents(w: Sequence[int]) -> int:
    """Number of positions i with w[i] < w[i+1]."""
    return sum(1 for x, y in zip(w, w[1:]) if x < y)


def _min_cap(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class NCPolynomial:
    """Noncommutative polynomial with rational coefficients.

    ``degree_cap`` (optional) truncates every result to words of length at
    most the cap.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "degree_cap")

    def __init__(self, terms: Optional[Mapping[Sequence[int], Scalar]] = None,
                 degree_cap: Optional[int] = None):
        clean: Dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                w = tuple(w)
                if degree_cap is not None and len(w) > degree_cap:
                    continue
                c = _as_fraction(c)
                if c:
                    clean[w] = clean.get(w, 0) + c
            clean = {w: c for w, c in clean.items() if c}
        self._terms = clean
        self.degree_cap = degree_cap

    @classmethod
    def _raw(cls, terms: Dict[Word, Fraction], degree_cap: Optional[int]) -> "NCPolynomial":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.degree_cap = degree_cap
        return obj

    # constructors
    @classmethod
    def zero(cls, degree_cap: Optional[int] = None) -> "NCPolynomial":
        return cls._raw({}, degree_cap)

    @classmethod
    def one(cls, degree_cap: Optional[int] = None) -> "NCPolynomial":
        return cls._raw({(): Fraction(1)}, degree_cap)

    @classmethod
    def var(cls, i: int, degree_cap: Optional[int] = None) -> "NCPolynomial":
        return cls({(i,): 1}, degree_cap)

    @classmethod
    def monomial(cls, word: Sequence[int], coeff: Scalar = 1,
                 degree_cap: Optional[int] = None) -> "NCPolynomial":
        return cls({tuple(word): coeff}, degree_cap)

    # access
    @property
    def terms(self) -> Dict[Word, Fraction]:
        return {w: self._terms[w] for w in sorted(self._terms, key=_word_key)}

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        for w in sorted(self._terms, key=_word_key):
            yield w, self._terms[w]

    def coeff(self, word: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def degrees(self) -> set:
        return {len(w) for w in self._terms}

    def max_degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, n: int) -> "NCPolynomial":
        return NCPolynomial._raw({w: c for w, c in self._terms.items() if len(w) == n},
                                 self.degree_cap)

    def truncate(self, n: int) -> "NCPolynomial":
        return NCPolynomial._raw({w: c for w, c in self._terms.items() if len(w) <= n},
                                 _min_cap(self.degree_cap, n))

    def with_cap(self, cap: Optional[int]) -> "NCPolynomial":
        return NCPolynomial(self._terms, cap)

    def variables(self) -> set:
        return {i for w in self._terms for i in w}

    def multiplicity_one_part(self, indices: Iterable[int]) -> "NCPolynomial":
        """Terms in which each index of ``indices`` occurs exactly once and no other index occurs."""
        target = sorted(indices)
        out = {w: c for w, c in self._terms.items() if sorted(w) == target}
        return NCPolynomial._raw(out, self.degree_cap)

    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    # arithmetic
    def __add__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            other = NCPolynomial.one() * _as_fraction(other)
        cap = _min_cap(self.degree_cap, other.degree_cap)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        if cap is not None:
            out = {w: c for w, c in out.items() if len(w) <= cap}
        return NCPolynomial._raw(out, cap)

    __radd__ = __add__

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial._raw({w: -c for w, c in self._terms.items()}, self.degree_cap)

    def __sub__(self, other) -> "NCPolynomial":
        return self + (-other)

    def __rsub__(self, other) -> "NCPolynomial":
        return (-self) + other

    def scale(self, s: Scalar) -> "NCPolynomial":
        s = _as_fraction(s)
        if not s:
            return NCPolynomial.zero(self.degree_cap)
        return NCPolynomial._raw({w: c * s for w, c in self._terms.items()}, self.degree_cap)

    def __mul__(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "NCPolynomial":
        return self.scale(other)

    def __truediv__(self, s: Scalar) -> "NCPolynomial":
        return self.scale(1 / _as_fraction(s))

    def __pow__(self, n: int) -> "NCPolynomial":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = NCPolynomial.one(self.degree_cap)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == NCPolynomial({(): other})._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def substitute(self, images: Mapping[int, "NCPolynomial"]) -> "NCPolynomial":
        """Replace each variable i by ``images[i]`` (variables not listed stay)."""
        cap = self.degree_cap
        for p in images.values():
            cap = _min_cap(cap, p.degree_cap)
        out = NCPolynomial.zero(cap)
        for w, c in self._terms.items():
            term = NCPolynomial.one(cap).scale(c)
            for i in w:
                term = term * (images[i] if i in images else NCPolynomial.var(i, cap))
            out = out + term
        return out

    def relabel(self, mapping: Mapping[int, int]) -> "NCPolynomial":
        """Rename variables letterwise; cheaper than substitute for letter images."""
        out: Dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            nw = tuple(mapping.get(i, i) for i in w)
            s = out.get(nw, 0) + c
            if s:
                out[nw] = s
            else:
                out.pop(nw, None)
        return NCPolynomial._raw(out, self.degree_cap)

    # serialization
    def to_json_dict(self, aliases: bool = False) -> Dict[str, str]:
        return {format_word(w, aliases): str(c) for w, c in self.items()}

    def to_json(self, aliases: bool = False) -> str:
        return json.dumps(self.to_json_dict(aliases))

    @classmethod
    def from_json(cls, text: Union[str, Mapping[str, str]],
                  degree_cap: Optional[int] = None) -> "NCPolynomial":
        data = json.loads(text) if isinstance(text, str) else text
        out = NCPolynomial.zero(degree_cap)
        for key, val in data.items():
            out = out + parse_poly(key).scale(Fraction(val))
        return out.with_cap(degree_cap) if degree_cap is not None else out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            word = format_word(w)
            if not w:
                body = str(a)
            elif a == 1:
                body = word
            else:
                body = f"{a}*{word}"
            parts.append(f"{sign} {body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"NCPolynomial({self})"


def format_word(w: Word, aliases: bool = False) -> str:
    if not w:
        return "1"
    if aliases:
        rev = {v: k for k, v in ALIASES.items()}
        return "".join(rev.get(i, f"X{i}") for i in w)
    return "".join(f"X{i}" for i in w)


def poly_mul(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """Concatenation product, truncated to the smaller degree cap."""
    cap = _min_cap(p.degree_cap, q.degree_cap)
    out: Dict[Word, Fraction] = {}
    for w1, c1 in p._terms.items():
        for w2, c2 in q._terms.items():
            if cap is not None and len(w1) + len(w2) > cap:
                continue
            w = w1 + w2
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return NCPolynomial._raw(out, cap)


def commutator(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return poly_mul(p, q) - poly_mul(q, p)


def truncated_exp(p: NCPolynomial, N: int) -> NCPolynomial:
    """Partial sum of exp(p) with all words longer than N dropped."""
    if p.constant_term() != 0:
        raise DomainError("truncated_exp needs a polynomial with zero constant term")
    p = p.truncate(N)
    out = NCPolynomial.one(N)
    power = NCPolynomial.one(N)
    fact = 1
    for n in range(1, N + 1):
        power = power * p
        if power.is_zero():
            break
        fact *= n
        out = out + power.scale(Fraction(1, fact))
    return out


def truncated_log(q: NCPolynomial, N: int) -> NCPolynomial:
    """Partial sum of log(q) around 1, all words longer than N dropped."""
    if q.constant_term() != 1:
        raise DomainError("truncated_log needs a polynomial with constant term 1")
    x = (q - NCPolynomial.one()).truncate(N)
    out = NCPolynomial.zero(N)
    power = NCPolynomial.one(N)
    for n in range(1, N + 1):
        power = power * x
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (n + 1), n))
    return out


def l1_norm(p: NCPolynomial) -> Fraction:
    return p.l1_norm()


@lru_cache(maxsize=None)
def _right_normed(word: Word) -> Tuple[Tuple[Word, int], ...]:
    # expansion of [w1,[w2,...[w_{k-1},w_k]...]] as (word, sign) pairs
    if len(word) == 1:
        return ((word, 1),)
    head = word[0]
    out: Dict[Word, int] = {}
    for w, s in _right_normed(word[1:]):
        for nw, ns in (((head,) + w, s), (w + (head,), -s)):
            out[nw] = out.get(nw, 0) + ns
    return tuple((w, s) for w, s in out.items() if s)


def dsw_map(p: NCPolynomial) -> NCPolynomial:
    """Dynkin left-bracketing map applied termwise.

    On a homogeneous Lie element of degree k the result is k times the input.
    """
    if p.is_zero():
        return p
    if not p.is_homogeneous() or 0 in p.degrees():
        raise DomainError("dsw_map needs a homogeneous polynomial of degree >= 1")
    out: Dict[Word, Fraction] = {}
    for w, c in p._terms.items():
        for nw, s in _right_normed(w):
            v = out.get(nw, 0) + c * s
            if v:
                out[nw] = v
            else:
                out.pop(nw, None)
    return NCPolynomial._raw(out, p.degree_cap)


def is_lie_element(p: NCPolynomial) -> bool:
    """A homogeneous polynomial of degree k is Lie iff dsw(p) = k p."""
    if p.is_zero():
        return True
    if not p.is_homogeneous():
        return all(is_lie_element(p.homogeneous_part(n)) for n in p.degrees())
    k = p.max_degree()
    if k == 0:
        return False
    return dsw_map(p) == p.scale(k)


# ---------------------------------------------------------------------------
# Lie expressions: signed rational combinations of bracketing trees

def leaves(t: Tree) -> Tuple[int, ...]:
    if isinstance(t, int):
        return (t,)
    return leaves(t[0]) + leaves(t[1])


def min_leaf(t: Tree) -> int:
    # in a canonical tree the leftmost leaf is the minimum
    while not isinstance(t, int):
        t = t[0]
    return t


def canonical_tree(t: Tree) -> Tuple[int, Tree]:
    """Return (sign, tree) with the smaller leaf-set on the left at every node."""
    if isinstance(t, int):
        return 1, t
    s1, a = canonical_tree(t[0])
    s2, b = canonical_tree(t[1])
    if sorted(leaves(a)) <= sorted(leaves(b)):
        return s1 * s2, (a, b)
    return -s1 * s2, (b, a)


def bracket_canonical(a: Tree, b: Tree) -> Tuple[int, Tree]:
    """Bracket two canonical trees over disjoint leaf sets, keeping canonical form."""
    if min_leaf(a) < min_leaf(b):
        return 1, (a, b)
    return -1, (b, a)


@lru_cache(maxsize=None)
def _expand_tree_cached(t: Tree) -> Tuple[Tuple[Word, int], ...]:
    if isinstance(t, int):
        return (((t,), 1),)
    left = _expand_tree_cached(t[0])
    right = _expand_tree_cached(t[1])
    out: Dict[Word, int] = {}
    for w1, s1 in left:
        for w2, s2 in right:
            out[w1 + w2] = out.get(w1 + w2, 0) + s1 * s2
            out[w2 + w1] = out.get(w2 + w1, 0) - s1 * s2
    return tuple((w, s) for w, s in out.items() if s)


def expand_tree(t: Tree) -> NCPolynomial:
    return NCPolynomial({w: s for w, s in _expand_tree_cached(t)})


def format_tree(t: Tree) -> str:
    if isinstance(t, int):
        return str(t)
    return f"[{format_tree(t[0])},{format_tree(t[1])}]"


def parse_tree(text: str) -> Tree:
    """Parse the bracket grammar ``[[1,2],[3,4]]`` (leaves may be written X3)."""
    tokens = re.findall(r"\[|\]|,|X?\d+", text.replace(" ", ""))
    if "".join(tokens) != text.replace(" ", ""):
        raise DomainError(f"malformed tree: {text!r}")
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise DomainError(f"malformed tree: {text!r}")
        tok = tokens[pos]
        if tok == "[":
            pos += 1
            a = parse()
            if pos >= len(tokens) or tokens[pos] != ",":
                raise DomainError(f"malformed tree: {text!r}")
            pos += 1
            b = parse()
            if pos >= len(tokens) or tokens[pos] != "]":
                raise DomainError(f"malformed tree: {text!r}")
            pos += 1
            return (a, b)
        if tok in ("]", ","):
            raise DomainError(f"malformed tree: {text!r}")
        pos += 1
        return int(tok.lstrip("X"))

    t = parse()
    if pos != len(tokens):
        raise DomainError(f"malformed tree: {text!r}")
    return t


class LieExpression:
    """Rational combination of multilinear bracketing trees in canonical orientation."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Tuple[Scalar, Tree]] = ()):
        merged: Dict[Tree, Fraction] = {}
        for c, t in terms:
            lv = leaves(t)
            if len(set(lv)) != len(lv):
                raise DomainError(f"tree {format_tree(t)} is not multilinear")
            s, ct = canonical_tree(t)
            merged[ct] = merged.get(ct, 0) + s * _as_fraction(c)
        self._terms = {t: c for t, c in merged.items() if c}

    @classmethod
    def from_dict(cls, d: Mapping[Tree, Fraction]) -> "LieExpression":
        obj = cls.__new__(cls)
        obj._terms = {t: c for t, c in d.items() if c}
        return obj

    @property
    def terms(self) -> List[Tuple[Fraction, Tree]]:
        return [(c, t) for t, c in sorted(self._terms.items(), key=lambda kv: format_tree(kv[0]))]

    def as_dict(self) -> Dict[Tree, Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def cost(self) -> Fraction:
        """ℓ¹ cost: sum of absolute coefficients."""
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def expand(self) -> NCPolynomial:
        out: Dict[Word, Fraction] = {}
        for t, c in self._terms.items():
            for w, s in _expand_tree_cached(t):
                v = out.get(w, 0) + c * s
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPolynomial._raw(out, None)

    def __add__(self, other: "LieExpression") -> "LieExpression":
        d = dict(self._terms)
        for t, c in other._terms.items():
            d[t] = d.get(t, 0) + c
        return LieExpression.from_dict(d)

    def scale(self, s: Scalar) -> "LieExpression":
        s = _as_fraction(s)
        return LieExpression.from_dict({t: c * s for t, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieExpression):
            return NotImplemented
        return self._terms == other._terms

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*{format_tree(t)}" for c, t in self.terms)

    def __repr__(self) -> str:
        return f"LieExpression({self})"


# ---------------------------------------------------------------------------
# textual polynomial grammar

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(X\d+|X|Y)|(\*\*|[-+*^()\[\],]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial near {text[pos:]!r}")
        num, var, op = m.groups()
        if num is not None:
            toks.append(("num", num))
        elif var is not None:
            toks.append(("var", var))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def parse_poly(text: str, degree_cap: Optional[int] = None) -> NCPolynomial:
    """Parse e.g. ``1/2*X1*X2 - 1/2*X2X1``, ``[X,Y]``, ``(X1+X2)^2``."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("end", "")

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if expected is not None and tok[1] != expected:
            raise DomainError(f"expected {expected!r} in {text!r}")
        pos += 1
        return tok

    def expr() -> NCPolynomial:
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        out = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def starts_atom(tok) -> bool:
        return tok[0] in ("num", "var") or tok[1] in ("(", "[")

    def term() -> NCPolynomial:
        out = factor()
        while True:
            tok = peek()
            if tok == ("op", "*"):
                take()
                out = out * factor()
            elif starts_atom(tok):
                out = out * factor()
            else:
                return out

    def factor() -> NCPolynomial:
        base = atom()
        if peek() == ("op", "^"):
            take()
            tok = take()
            if tok[0] != "num" or "/" in tok[1]:
                raise DomainError(f"exponent must be a nonnegative integer in {text!r}")
            base = base ** int(tok[1])
        return base

    def atom() -> NCPolynomial:
        tok = take()
        if tok[0] == "num":
            return NCPolynomial.one().scale(Fraction(tok[1]))
        if tok[0] == "var":
            name = tok[1]
            idx = ALIASES[name] if name in ALIASES else int(name[1:])
            return NCPolynomial.var(idx)
        if tok[1] == "(":
            e = expr()
            take(")")
            return e
        if tok[1] == "[":
            a = expr()
            take(",")
            b = expr()
            take("]")
            return commutator(a, b)
        raise DomainError(f"unexpected token {tok[1]!r} in {text!r}")

    result = expr()
    if pos != len(toks):
        raise DomainError(f"trailing input in {text!r}")
    return result.with_cap(degree_cap) if degree_cap is not None else result


def words(alphabet: Sequence[int], n: int) -> Iterator[Word]:
    """All words of length n over ``alphabet``."""
    return (tuple(w) for w in _cartesian(alphabet, repeat=n))
