"""Rota's standard Baxter algebra, truncated to the first ``N`` entries.

A sequence ``(a_1, a_2, ...)`` is kept as its first ``N`` entries; the ring
structure is componentwise and the Baxter operator is the weighted
partial sum.  Everything here is exact after truncation because entry
``i`` of a product or partial sum only depends on entries ``<= i``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Sequence

from .coeff import Fraction, Poly, parse_poly
from .freebax import ShuffleElement, lift
from .series import TruncSeries

__all__ = [
    "TruncSeq",
    "SequenceAlgebra",
    "partial_sum_P",
    "seq_symbol",
    "generator_sequence",
    "std_embed",
    "elementary",
    "power_sum",
    "waring_check",
    "spitzer_check",
    "alternating_power",
]


class TruncSeq:
    """First ``N`` entries of a sequence with polynomial entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence):
        if not entries:
            raise ValueError("truncation order must be at least 1")
        self.entries = tuple(Poly.coerce(e) for e in entries)

    @property
    def trunc_order(self) -> int:
        return len(self.entries)

    @classmethod
    def constant(cls, c, N: int) -> "TruncSeq":
        return cls([Poly.coerce(c)] * N)

    def _same(self, other: "TruncSeq") -> None:
        if self.trunc_order != other.trunc_order:
            raise ValueError(
                f"truncation orders differ: {self.trunc_order} vs {other.trunc_order}"
            )

    def __add__(self, other: "TruncSeq") -> "TruncSeq":
        self._same(other)
        return TruncSeq([a + b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "TruncSeq":
        return TruncSeq([-a for a in self.entries])

    def __sub__(self, other: "TruncSeq") -> "TruncSeq":
        return self + (-other)

    def __mul__(self, other) -> "TruncSeq":
        if isinstance(other, TruncSeq):
            self._same(other)
            return TruncSeq([a * b for a, b in zip(self.entries, other.entries)])
        c = Poly.coerce(other)
        return TruncSeq([a * c for a in self.entries])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeq):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __bool__(self) -> bool:
        return any(self.entries)

    def subst(self, bindings) -> "TruncSeq":
        return TruncSeq([e.subst(bindings) for e in self.entries])

    def to_json(self) -> dict:
        return {"trunc": self.trunc_order, "entries": [str(e) for e in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "TruncSeq":
        seq = cls([parse_poly(e) for e in data["entries"]])
        if seq.trunc_order != data["trunc"]:
            raise ValueError("entry count does not match 'trunc'")
        return seq

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    __repr__ = __str__


def partial_sum_P(a: TruncSeq, lam) -> TruncSeq:
    """``lam * (0, a1, a1 + a2, ...)``."""
    lam = Poly.coerce(lam)
    out = []
    acc = Poly()
    for e in a.entries:
        out.append(acc * lam)
        acc = acc + e
    return TruncSeq(out)


class SequenceAlgebra:
    """Sequences of length ``N`` with the partial-sum operator of weight ``weight``."""

    def __init__(self, N: int, weight=None):
        self.N = N
        self.weight = Poly.var("L") if weight is None else Poly.coerce(weight)

    name = "partial-sum"

    def zero(self) -> TruncSeq:
        return TruncSeq.constant(0, self.N)

    def one(self) -> TruncSeq:
        return TruncSeq.constant(1, self.N)

    def add(self, a: TruncSeq, b: TruncSeq) -> TruncSeq:
        return a + b

    def mul(self, a: TruncSeq, b: TruncSeq) -> TruncSeq:
        return a * b

    def scalar_mul(self, c, a: TruncSeq) -> TruncSeq:
        return a * Poly.coerce(c)

    def P(self, a: TruncSeq) -> TruncSeq:
        return partial_sum_P(a, self.weight)

    def eq(self, a: TruncSeq, b: TruncSeq) -> bool:
        return a == b

    def random_element(self, rng) -> TruncSeq:
        names = ["y", "z"]
        entries = []
        for _ in range(self.N):
            p = Poly.const(rng.randint(-3, 3))
            if rng.random() < 0.5:
                p = p + Poly.var(rng.choice(names)) * rng.randint(-3, 3)
            entries.append(p)
        return TruncSeq(entries)


def seq_symbol(generator: str, n: int) -> str:
    return f"t_{generator}_{n}"


def generator_sequence(generator: str, N: int) -> TruncSeq:
    """``(t_x_1, ..., t_x_N)``."""
    return TruncSeq([Poly.var(seq_symbol(generator, n)) for n in range(1, N + 1)])


def std_embed(a: ShuffleElement, N: int, lam=1) -> TruncSeq:
    """Image of ``a`` under the Baxter map sending each generator ``x`` to ``t^(x)``.

    ``lam`` is the weight the shuffle algebra is specialised to; it must be a
    nonzero rational.
    """
    lam = Poly.coerce(lam)
    if not lam.is_constant():
        raise ValueError("std_embed needs a rational weight")
    if not lam:
        raise ValueError("weight 0 is a zero divisor: the embedding is not injective")
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    gens = sorted({name for w in a.terms for m in w for name, _ in m})
    phi = {g: generator_sequence(g, N) for g in gens}
    return lift(phi, SequenceAlgebra(N, lam), a)


def elementary(n: int, variables: Sequence) -> Poly:
    """Elementary symmetric polynomial ``e_n``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    vs = [Poly.coerce(v) for v in variables]
    out = Poly()
    for combo in combinations(vs, n):
        term = Poly.const(1)
        for v in combo:
            term = term * v
        out = out + term
    return out


def power_sum(k: int, variables: Sequence) -> Poly:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    out = Poly()
    for v in variables:
        out = out + Poly.coerce(v) ** k
    return out


def waring_check(m: int, deg: int) -> bool:
    """``exp(-sum (-1)^k t^k p_k / k) == sum e_n t^n`` modulo ``t^(deg+1)``."""
    xs = [Poly.var(f"x{i}") for i in range(1, m + 1)]
    inner = [Poly()] + [power_sum(k, xs) * Fraction((-1) ** (k + 1), k) for k in range(1, deg + 1)]
    lhs = TruncSeries(inner, deg).exp()
    rhs = TruncSeries([elementary(n, xs) for n in range(deg + 1)], deg)
    return lhs == rhs


def alternating_power(P, b, n: int, one):
    """``P(b P(b ... P(b)))`` with ``n`` applications of ``P``; ``one`` for ``n = 0``."""
    r = one
    for i in range(n):
        r = P(b * r) if i else P(b)
    return r


def spitzer_sides(N: int):
    """Both sides of Spitzer's identity in ``Sh(Q[b], 1)`` modulo ``t^(N+1)``."""
    one = ShuffleElement.one(weight=1)
    b = ShuffleElement.generator("b", weight=1)
    powers = [one]
    for _ in range(N):
        powers.append(powers[-1] * b)
    # log((1 + t b)^(-1)) = sum_{k>=1} (-1)^k t^k b^k / k
    log_inv = TruncSeries(
        [one * 0] + [powers[k] * Fraction((-1) ** k, k) for k in range(1, N + 1)], N
    )
    lhs = (-log_inv.map(lambda c: c.P())).exp(one=one)
    rhs = TruncSeries([alternating_power(lambda c: c.P(), b, n, one) for n in range(N + 1)], N)
    return lhs, rhs


def spitzer_check(N: int) -> bool:
    if N < 1:
        raise ValueError("order must be at least 1")
    lhs, rhs = spitzer_sides(N)
    return lhs == rhs
