"""Exact multivariate polynomials over the rationals.

Every coefficient in the library lives here.  The weight of a Baxter
operator is the ordinary indeterminate ``L`` so that identities can be
checked symbolically in the weight and specialised afterwards with
:meth:`Poly.subst`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

__all__ = [
    "Fraction",
    "Monomial",
    "Poly",
    "ParseError",
    "LAMBDA_NAME",
    "SCALAR_NAMES",
    "L",
    "binom",
    "mono_mul",
    "mono_pow",
    "mono_degree",
    "mono_str",
    "parse_poly",
    "parse_monomial",
]

LAMBDA_NAME = "L"
# Names treated as base-ring scalars (not algebra generators) when a
# polynomial factor is split inside a tensor word.
SCALAR_NAMES = frozenset({LAMBDA_NAME})

Monomial = Tuple[Tuple[str, int], ...]
ONE_MONO: Monomial = ()

Scalar = Union[int, Fraction]


class ParseError(ValueError):
    """Malformed polynomial text.  ``pos`` is the offending column."""

    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        super().__init__(f"at position {pos} in {text!r}: expected {expected}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def mono_pow(a: Monomial, n: int) -> Monomial:
    if n == 0:
        return ONE_MONO
    return tuple((name, e * n) for name, e in a)


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_str(a: Monomial) -> str:
    if not a:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in a)


def _order_key(mono: Monomial):
    # graded lex: higher total degree first, then lex on sorted names
    return (-mono_degree(mono), [(name, -e) for name, e in mono])


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable sparse polynomial with :class:`~fractions.Fraction` coefficients.

    >>> x, L = Poly.var("x"), Poly.var("L")
    >>> str((x - L) * (x + L))
    'x^2 - L^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({ONE_MONO: c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Monomial, c: Scalar = 1) -> "Poly":
        return cls({mono: c})

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if isinstance(value, str):
            return parse_poly(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Poly")

    # inspection
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        """The constant term; raises if the polynomial is not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ONE_MONO, Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def variables(self) -> frozenset:
        return frozenset(name for mono in self._terms for name, _ in mono)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in ``name``.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(mono_degree(m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def coeff_in(self, name: str, power: int) -> "Poly":
        """Coefficient of ``name**power`` viewing the other names as scalars."""
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            if exps.get(name, 0) != power:
                continue
            exps.pop(name, None)
            out[tuple(sorted(exps.items()))] = c
        return Poly._raw(out)

    # arithmetic
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution
    def subst(self, bindings: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution of names by polynomials or rationals."""
        if not bindings:
            return self
        bound = {k: Poly.coerce(v) for k, v in bindings.items()}
        powers: Dict[Tuple[str, int], Poly] = {}
        out = Poly._raw({})
        for mono, c in self._terms.items():
            keep = []
            term = Poly.const(c)
            for name, e in mono:
                if name in bound:
                    key = (name, e)
                    if key not in powers:
                        powers[key] = bound[name] ** e
                    term = term * powers[key]
                else:
                    keep.append((name, e))
            out = out + term * Poly._raw({tuple(keep): Fraction(1)})
        return out

    def split_scalar(self) -> Iterator[Tuple[Monomial, "Poly"]]:
        """Yield ``(generator monomial, scalar coefficient)`` pairs.

        Names in :data:`SCALAR_NAMES` are moved into the coefficient.
        """
        grouped: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        for mono, c in self._terms.items():
            gen = tuple(p for p in mono if p[0] not in SCALAR_NAMES)
            sc = tuple(p for p in mono if p[0] in SCALAR_NAMES)
            grouped.setdefault(gen, {})[sc] = c
        for gen, sc in grouped.items():
            yield gen, Poly._raw(sc)

    # printing
    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono_str(mono)
            else:
                body = f"{_fmt_coeff(a)}*{mono_str(mono)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


L = Poly.var(LAMBDA_NAME)


def binom(n: int, k: int) -> Fraction:
    """Binomial coefficient, generalised to negative ``n``.

    ``binom(n, k)`` is ``0`` for ``k < 0``; for ``n < 0`` it is the falling
    product ``n(n-1)...(n-k+1)/k!``.
    """
    if k < 0:
        return Fraction(0)
    if n >= 0 and k > n:
        return Fraction(0)
    num = 1
    for i in range(k):
        num *= n - i
    return Fraction(num, factorial(k))


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^]))"
)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(text, pos, "number, name or operator")
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        raise ParseError(self.text, self.peek()[2], expected)

    def integer(self) -> int:
        kind, val, _ = self.peek()
        if kind != "num" or "/" in val:
            self.fail("integer exponent")
        self.take()
        return int(val)

    def factor(self) -> Monomial:
        kind, val, _ = self.peek()
        if kind != "name":
            self.fail("name")
        self.take()
        e = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            e = self.integer()
        return ((val, e),) if e else ONE_MONO

    def term(self) -> Tuple[Monomial, Fraction]:
        kind, val, _ = self.peek()
        coef = Fraction(1)
        mono: Monomial = ONE_MONO
        if kind == "num":
            if "/" in val and int(val.split("/")[1]) == 0:
                self.fail("nonzero denominator")
            self.take()
            coef = Fraction(val)
            if self.peek()[:2] != ("op", "*"):
                return mono, coef
            self.take()
        elif kind != "name":
            self.fail("coefficient or name")
        mono = mono_mul(mono, self.factor())
        while self.peek()[:2] == ("op", "*"):
            self.take()
            mono = mono_mul(mono, self.factor())
        return mono, coef

    def expr(self) -> Poly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        out: Dict[Monomial, Fraction] = {}

        def push(mono, c):
            out[mono] = out.get(mono, 0) + c

        mono, c = self.term()
        push(mono, sign * c)
        while True:
            kind, val, _ = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                mono, c = self.term()
                push(mono, c if val == "+" else -c)
            else:
                self.fail("'+', '-' or end of input")
        return Poly(out)


def parse_poly(text: str) -> Poly:
    """Parse ``"3/2*L^2*x1 - 1"`` style text into a :class:`Poly`."""
    return _Parser(text).expr()


def parse_monomial(text: str) -> Monomial:
    p = parse_poly(text)
    if len(p) != 1:
        raise ParseError(text, 0, "a single monomial")
    ((mono, c),) = p.items()
    if c != 1:
        raise ParseError(text, 0, "a monic monomial")
    return mono


def poly_sum(items: Iterable[Poly]) -> Poly:
    out = Poly()
    for p in items:
        out = out + p
    return out
