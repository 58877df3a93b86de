"""Cartier's bracket construction of the free Baxter algebra on a set.

A basis symbol ``u0.[u1, ..., um]`` is stored as ``(u0, (u1, ..., um))``
with monomials over the generating set.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Mapping, Tuple

from .coeff import L, Fraction, Monomial, Poly, mono_mul, mono_str, parse_monomial, parse_poly
from .freebax import ShuffleElement, WeightMismatch

BracketTerm = Tuple[Monomial, Tuple[Monomial, ...]]

__all__ = [
    "BracketTerm",
    "BracketElement",
    "cartier_index_set",
    "cartier_product",
    "cartier_P",
    "to_shuffle",
    "from_shuffle",
]


@lru_cache(maxsize=None)
def cartier_index_set(m: int, n: int) -> Tuple[Tuple[int, Tuple[int, ...], Tuple[int, ...]], ...]:
    """Triples ``(k, P, Q)``: ``P, Q`` subsets of ``1..k`` of sizes ``m, n`` covering it.

    ``k`` ranges over ``max(m, n)..m+n``; smaller ``k`` cannot be covered.
    """
    out = []
    for k in range(max(m, n, 1), m + n + 1):
        full = set(range(1, k + 1))
        for P in combinations(range(1, k + 1), m):
            for Q in combinations(range(1, k + 1), n):
                if set(P) | set(Q) == full:
                    out.append((k, P, Q))
    return tuple(out)


def _merge(u: Tuple[Monomial, ...], v: Tuple[Monomial, ...], k: int, P, Q) -> Tuple[Monomial, ...]:
    pi = {j: a for a, j in enumerate(P)}
    qi = {j: b for b, j in enumerate(Q)}
    w = []
    for j in range(1, k + 1):
        if j in pi and j in qi:
            w.append(mono_mul(u[pi[j]], v[qi[j]]))
        elif j in pi:
            w.append(u[pi[j]])
        else:
            w.append(v[qi[j]])
    return tuple(w)


class BracketElement:
    """Finite ``C``-linear combination of symbols ``u0.[u1, ..., um]``."""

    __slots__ = ("terms", "weight")

    def __init__(self, terms: Mapping[BracketTerm, Poly] | None = None, weight: Poly = L):
        self.terms: Dict[BracketTerm, Poly] = {}
        for t, c in (terms or {}).items():
            c = Poly.coerce(c)
            if c:
                self.terms[(t[0], tuple(t[1]))] = c
        self.weight = Poly.coerce(weight)

    @classmethod
    def term(cls, head: Monomial, bracket=(), coeff=1, weight: Poly = L) -> "BracketElement":
        return cls({(head, tuple(bracket)): Poly.coerce(coeff)}, weight)

    @classmethod
    def one(cls, weight: Poly = L) -> "BracketElement":
        return cls.term((), (), 1, weight)

    @classmethod
    def zero(cls, weight: Poly = L) -> "BracketElement":
        return cls({}, weight)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketElement):
            return NotImplemented
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.weight))

    def _same(self, other: "BracketElement") -> None:
        if self.weight != other.weight:
            raise WeightMismatch(f"weights {self.weight} and {other.weight} differ")

    def __add__(self, other: "BracketElement") -> "BracketElement":
        self._same(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return BracketElement(out, self.weight)

    def __neg__(self) -> "BracketElement":
        return BracketElement({t: -c for t, c in self.terms.items()}, self.weight)

    def __sub__(self, other: "BracketElement") -> "BracketElement":
        return self + (-other)

    def scale(self, c) -> "BracketElement":
        c = Poly.coerce(c)
        return BracketElement({t: v * c for t, v in self.terms.items()}, self.weight)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        if not isinstance(other, BracketElement):
            return NotImplemented
        return cartier_product(self, other)

    __rmul__ = __mul__

    def P(self) -> "BracketElement":
        return cartier_P(self)

    def to_json(self) -> list:
        items = sorted(
            self.terms.items(),
            key=lambda it: (len(it[0][1]), mono_str(it[0][0]), tuple(mono_str(m) for m in it[0][1])),
        )
        return [
            {"coeff": str(c), "head": mono_str(h), "bracket": [mono_str(m) for m in br]}
            for (h, br), c in items
        ]

    @classmethod
    def from_json(cls, data: list, weight: Poly = L) -> "BracketElement":
        out: Dict[BracketTerm, Poly] = {}
        for item in data:
            t = (parse_monomial(item["head"]), tuple(parse_monomial(m) for m in item["bracket"]))
            out[t] = out.get(t, Poly()) + parse_poly(item["coeff"])
        return cls(out, weight)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for item in self.to_json():
            parts.append(f"({item['coeff']})*{item['head']}.[{', '.join(item['bracket'])}]")
        return " + ".join(parts)

    __repr__ = __str__


def cartier_product(a: BracketElement, b: BracketElement) -> BracketElement:
    a._same(b)
    lam = a.weight
    out: Dict[BracketTerm, Poly] = {}

    def push(t: BracketTerm, c: Poly) -> None:
        out[t] = out[t] + c if t in out else c

    for (u0, u), cu in a.terms.items():
        for (v0, v), cv in b.terms.items():
            head = mono_mul(u0, v0)
            c = cu * cv
            if not u or not v:
                push((head, u or v), c)
                continue
            m, n = len(u), len(v)
            for k, P, Q in cartier_index_set(m, n):
                overlap = len(set(P) & set(Q))
                assert overlap == m + n - k
                push((head, _merge(u, v, k, P, Q)), c * lam ** (m + n - k))
    return BracketElement(out, lam)


def cartier_P(a: BracketElement) -> BracketElement:
    return BracketElement({((), (h,) + br): c for (h, br), c in a.terms.items()}, a.weight)


def to_shuffle(a: BracketElement) -> ShuffleElement:
    """``u0.[u1, ..., um] -> u0 | u1 | ... | um``."""
    return ShuffleElement({(h,) + br: c for (h, br), c in a.terms.items()}, a.weight)


def from_shuffle(s: ShuffleElement) -> BracketElement:
    return BracketElement({(w[0], w[1:]): c for w, c in s.terms.items()}, s.weight)
