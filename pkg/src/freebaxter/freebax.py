"""The mixable shuffle Baxter algebra on a polynomial algebra ``A = C[X]``.

Elements are finite sums ``c * (x0 | x1 | ... | xn)`` where every factor
``xi`` is a monic monomial in the generators and ``c`` is a polynomial in
the base-ring scalars (the weight ``L`` and rationals).  The first factor
lives in ``A``; the rest is the ``A^{(x)n}`` part that multiplies by the
mixable shuffle product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as cartesian
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from .coeff import (
    L,
    Fraction,
    Monomial,
    ParseError,
    Poly,
    mono_mul,
    mono_pow,
    mono_str,
    parse_monomial,
    parse_poly,
)

Word = Tuple[Monomial, ...]

__all__ = [
    "Word",
    "MixableShuffle",
    "ShuffleElement",
    "UnboundGenerator",
    "WeightMismatch",
    "enumerate_mixable_shuffles",
    "shuffle_plus",
    "classical_shuffle",
    "product",
    "baxter_P",
    "lift",
]


class UnboundGenerator(KeyError):
    pass


class WeightMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MixableShuffle:
    """An ``(m, n)``-shuffle together with a set of merged adjacent pairs.

    ``sigma`` is one-line notation: position ``k`` (1-based) holds the letter
    ``sigma[k-1]``; letters ``1..m`` come from the first deck.  ``merged``
    lists the ``k`` of each pair ``(k, k+1)`` that is merged.
    """

    sigma: Tuple[int, ...]
    merged: Tuple[int, ...] = ()
    m: int = 0

    @property
    def T(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((k, k + 1) for k in self.merged)

    def admissible_pairs(self) -> List[int]:
        s, m = self.sigma, self.m
        return [k for k in range(1, len(s)) if s[k - 1] <= m < s[k]]

    def is_valid(self) -> bool:
        s, m = self.sigma, self.m
        pos = {v: i for i, v in enumerate(s)}
        if sorted(s) != list(range(1, len(s) + 1)):
            return False
        first = [pos[v] for v in range(1, m + 1)]
        second = [pos[v] for v in range(m + 1, len(s) + 1)]
        if first != sorted(first) or second != sorted(second):
            return False
        return set(self.merged) <= set(self.admissible_pairs())


@lru_cache(maxsize=None)
def enumerate_mixable_shuffles(m: int, n: int) -> Tuple[MixableShuffle, ...]:
    """All mixable ``(m, n)``-shuffles, ordered by ``sigma`` then merged set."""
    if m < 0 or n < 0:
        raise ValueError("deck sizes must be nonnegative")
    total = m + n
    out = []
    for first_positions in combinations(range(total), m):
        sigma = [0] * total
        fp = set(first_positions)
        a, b = 1, m + 1
        for pos in range(total):
            if pos in fp:
                sigma[pos] = a
                a += 1
            else:
                sigma[pos] = b
                b += 1
        base = MixableShuffle(tuple(sigma), (), m)
        adm = base.admissible_pairs()
        for r in range(len(adm) + 1):
            for chosen in combinations(adm, r):
                out.append(MixableShuffle(tuple(sigma), chosen, m))
    out.sort(key=lambda s: (s.sigma, s.merged))
    return tuple(out)


def _apply_shuffle(sh: MixableShuffle, x: Word, y: Word) -> Word:
    letters = x + y
    merged = set(sh.merged)
    word: List[Monomial] = []
    k = 1
    s = sh.sigma
    while k <= len(s):
        u = letters[s[k - 1] - 1]
        if k in merged:
            u = mono_mul(u, letters[s[k] - 1])
            k += 1
        word.append(u)
        k += 1
    return tuple(word)


def shuffle_plus(x: Word, y: Word, weight: Poly = L) -> Dict[Word, Poly]:
    """Mixable shuffle product of two words of length >= 1.

    Returns a map word -> coefficient (a power of ``weight``).
    """
    out: Dict[Word, Poly] = {}
    powers = [Poly.const(1)]
    for sh in enumerate_mixable_shuffles(len(x), len(y)):
        t = len(sh.merged)
        while len(powers) <= t:
            powers.append(powers[-1] * weight)
        w = _apply_shuffle(sh, x, y)
        c = out.get(w)
        out[w] = powers[t] if c is None else c + powers[t]
    return {w: c for w, c in out.items() if c}


def classical_shuffle(x: Word, y: Word) -> Dict[Word, int]:
    """Plain shuffle product by the first-letter recursion (no merging)."""
    if not x:
        return {y: 1}
    if not y:
        return {x: 1}
    out: Dict[Word, int] = {}
    for w, c in classical_shuffle(x[1:], y).items():
        key = (x[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in classical_shuffle(x, y[1:]).items():
        key = (y[0],) + w
        out[key] = out.get(key, 0) + c
    return out


def _word_key(w: Word):
    return (len(w), tuple(mono_str(m) for m in w))


class ShuffleElement:
    """Element of the free Baxter algebra ``Sh(C[X], weight)``.

    ``weight`` defaults to the symbol ``L``; elements of different weight
    cannot be combined.
    """

    __slots__ = ("terms", "weight", "_hash")

    def __init__(self, terms: Mapping[Word, Poly] | None = None, weight: Poly = L):
        clean = {}
        for w, c in (terms or {}).items():
            if not w:
                raise ValueError("words have at least one factor")
            c = Poly.coerce(c)
            if c:
                clean[w] = c
        self.terms: Dict[Word, Poly] = clean
        self.weight = Poly.coerce(weight)
        self._hash = None

    # constructors
    @classmethod
    def from_word(cls, factors: Sequence, coeff=1, weight: Poly = L) -> "ShuffleElement":
        """Expand ``coeff * (f0 | f1 | ...)`` with polynomial factors by multilinearity."""
        if not factors:
            raise ValueError("words have at least one factor")
        polys = [Poly.coerce(f) for f in factors]
        out: Dict[Word, Poly] = {}
        base = Poly.coerce(coeff)
        for choice in cartesian(*[list(p.split_scalar()) for p in polys]):
            w = tuple(g for g, _ in choice)
            c = base
            for _, s in choice:
                c = c * s
            out[w] = out.get(w, Poly()) + c
        return cls(out, weight)

    @classmethod
    def scalar(cls, c, weight: Poly = L) -> "ShuffleElement":
        return cls.from_word([c], weight=weight)

    @classmethod
    def one(cls, weight: Poly = L) -> "ShuffleElement":
        return cls({((),): Poly.const(1)}, weight)

    @classmethod
    def zero(cls, weight: Poly = L) -> "ShuffleElement":
        return cls({}, weight)

    @classmethod
    def generator(cls, name: str, weight: Poly = L) -> "ShuffleElement":
        return cls({(((name, 1),),): Poly.const(1)}, weight)

    @classmethod
    def parse(cls, text: str, weight: Poly = L) -> "ShuffleElement":
        """Parse ``"x1*x2|y1"``: factors separated by ``|``."""
        factors = []
        offset = 0
        for part in text.split("|"):
            try:
                factors.append(parse_poly(part))
            except ParseError as exc:
                raise ParseError(text, offset + exc.pos, exc.expected) from None
            offset += len(part) + 1
        return cls.from_word(factors, weight=weight)

    # basic protocol
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ShuffleElement.scalar(other, self.weight)
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.terms.items()), self.weight))
        return self._hash

    def _check(self, other: "ShuffleElement") -> None:
        if self.weight != other.weight:
            raise WeightMismatch(f"weights {self.weight} and {other.weight} differ")

    def _coerce(self, other) -> "ShuffleElement":
        if isinstance(other, ShuffleElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return ShuffleElement.scalar(other, self.weight)
        raise TypeError(f"cannot combine ShuffleElement with {type(other).__name__}")

    def __add__(self, other) -> "ShuffleElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return ShuffleElement(out, self.weight)

    __radd__ = __add__

    def __neg__(self) -> "ShuffleElement":
        return ShuffleElement({w: -c for w, c in self.terms.items()}, self.weight)

    def __sub__(self, other) -> "ShuffleElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ShuffleElement":
        return self._coerce(other) - self

    def scale(self, c) -> "ShuffleElement":
        """Multiply by a base-ring scalar (rational or polynomial in ``L``)."""
        c = Poly.coerce(c)
        return ShuffleElement({w: v * c for w, v in self.terms.items()}, self.weight)

    def __mul__(self, other) -> "ShuffleElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            return self * ShuffleElement.scalar(other, self.weight)
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        return product(self, other)

    def __rmul__(self, other) -> "ShuffleElement":
        return self.__mul__(other)

    def P(self) -> "ShuffleElement":
        return baxter_P(self)

    def specialize(self, weight) -> "ShuffleElement":
        """Substitute ``L`` by ``weight`` in every coefficient and in the weight."""
        weight = Poly.coerce(weight)
        b = {"L": weight}
        return ShuffleElement(
            {w: c.subst(b) for w, c in self.terms.items()}, self.weight.subst(b)
        )

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    # output
    def sorted_terms(self) -> List[Tuple[Word, Poly]]:
        return sorted(self.terms.items(), key=lambda t: _word_key(t[0]))

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "word": [mono_str(m) for m in w]}
            for w, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list, weight: Poly = L) -> "ShuffleElement":
        out: Dict[Word, Poly] = {}
        for item in data:
            w = tuple(parse_monomial(m) for m in item["word"])
            out[w] = out.get(w, Poly()) + parse_poly(item["coeff"])
        return cls(out, weight)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            word = "|".join(mono_str(m) for m in w)
            cs = str(c)
            if cs == "1":
                parts.append(word)
            elif len(c) == 1 and not cs.startswith("-"):
                parts.append(f"{cs}*({word})")
            else:
                parts.append(f"({cs})*({word})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ShuffleElement({str(self)!r})"


def product(a: ShuffleElement, b: ShuffleElement) -> ShuffleElement:
    """``(a0 (x) a+)(b0 (x) b+) = a0 b0 (x) (a+ mixable-shuffle b+)``, bilinearly."""
    a._check(b)
    weight = a.weight
    out: Dict[Word, Poly] = {}
    cache: Dict[Tuple[Word, Word], Dict[Word, Poly]] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            head = mono_mul(wa[0], wb[0])
            c = ca * cb
            ta, tb = wa[1:], wb[1:]
            if not ta or not tb:
                # scalar part of one side: plain scalar multiplication
                w = (head,) + ta + tb
                out[w] = out[w] + c if w in out else c
                continue
            key = (ta, tb)
            if key not in cache:
                cache[key] = shuffle_plus(ta, tb, weight)
            for tail, s in cache[key].items():
                w = (head,) + tail
                v = c * s
                out[w] = out[w] + v if w in out else v
    return ShuffleElement(out, weight)


def baxter_P(a: ShuffleElement) -> ShuffleElement:
    """Prepend the factor ``1``: ``x0|x1|...|xn -> 1|x0|x1|...|xn``."""
    return ShuffleElement({((),) + w: c for w, c in a.terms.items()}, a.weight)


def lift(phi: Mapping[str, object], target, a: ShuffleElement, weight=None):
    """Image of ``a`` under the Baxter homomorphism extending ``phi``.

    ``target`` is any object with the :class:`~freebaxter.instances.BaxterAlgebra`
    operations.  ``phi`` sends generator names to target elements.  The
    source weight ``L`` is identified with ``target.weight``; passing an
    explicit ``weight`` for the source that differs from the target's raises
    :class:`WeightMismatch`.
    """
    tw = Poly.coerce(target.weight)
    if weight is not None and Poly.coerce(weight) != tw:
        raise WeightMismatch(f"source weight {weight} differs from target weight {tw}")
    if a.weight != L and a.weight != tw:
        raise WeightMismatch(f"source weight {a.weight} differs from target weight {tw}")
    bind = {"L": tw}

    mono_cache: Dict[Monomial, object] = {}

    def image_mono(m: Monomial):
        if m not in mono_cache:
            r = target.one()
            for name, e in m:
                if name not in phi:
                    raise UnboundGenerator(name)
                for _ in range(e):
                    r = target.mul(r, phi[name])
            mono_cache[m] = r
        return mono_cache[m]

    word_cache: Dict[Word, object] = {}

    def image_word(w: Word):
        if w not in word_cache:
            head = image_mono(w[0])
            if len(w) == 1:
                word_cache[w] = head
            else:
                word_cache[w] = target.mul(head, target.P(image_word(w[1:])))
        return word_cache[w]

    total = target.zero()
    for w, c in a.terms.items():
        total = target.add(total, target.scalar_mul(c.subst(bind), image_word(w)))
    return total
