"""Truncated formal power series with exact coefficients.

Coefficients are :class:`~freebaxter.coeff.Poly` by default but any
commutative ring element supporting ``+``, ``*`` and multiplication by a
:class:`~fractions.Fraction` works (the Spitzer check uses shuffle-algebra
elements).  Pass ``one`` when the ring's unit is not ``Poly(1)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, List, Sequence

from .coeff import Poly, parse_poly

__all__ = ["TruncSeries", "SeriesError", "parse_series"]


class SeriesError(ValueError):
    pass


class TruncSeries:
    """``c0 + c1 v + ... + cN v^N`` modulo ``v^(N+1)``."""

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Sequence, order: int, var: str = "t", zero=None):
        if order < 0:
            raise SeriesError("order must be nonnegative")
        cs = list(coeffs)[: order + 1]
        if zero is None:
            zero = cs[0] * 0 if cs else Poly()
        while len(cs) < order + 1:
            cs.append(zero)
        self.coeffs: List = [Poly.coerce(c) if isinstance(c, (int, Fraction)) else c for c in cs]
        self.order = order
        self.var = var

    # constructors
    @classmethod
    def from_poly(cls, p: Poly, order: int, var: str = "t") -> "TruncSeries":
        return cls([p.coeff_in(var, i) for i in range(order + 1)], order, var)

    @classmethod
    def variable(cls, order: int, var: str = "t") -> "TruncSeries":
        return cls([0, 1], order, var)

    @classmethod
    def constant(cls, c, order: int, var: str = "t") -> "TruncSeries":
        return cls([c], order, var)

    @classmethod
    def exp_var(cls, order: int, var: str = "t", scale=1) -> "TruncSeries":
        """``exp(scale * var)``."""
        scale = Poly.coerce(scale)
        return cls([scale ** k / factorial(k) for k in range(order + 1)], order, var)

    # inspection
    @property
    def zero(self):
        return self.coeffs[0] * 0

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.order + 1

    def ord(self):
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def to_poly(self) -> Poly:
        v = Poly.var(self.var)
        out = Poly()
        for i, c in enumerate(self.coeffs):
            out = out + Poly.coerce(c) * v ** i
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((tuple(self.coeffs), self.order, self.var))

    def __str__(self) -> str:
        return f"{self.to_poly()} + O({self.var}^{self.order + 1})"

    __repr__ = __str__

    def _match(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return TruncSeries.constant(other, self.order, self.var)
        if other.order != self.order or other.var != self.var:
            raise SeriesError(
                f"mixed series: order {self.order} in {self.var} vs {other.order} in {other.var}"
            )
        return other

    # ring operations
    def __add__(self, other) -> "TruncSeries":
        other = self._match(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._match(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._match(other) - self

    def scale(self, c) -> "TruncSeries":
        return TruncSeries([a * c for a in self.coeffs], self.order, self.var)

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        other = self._match(other)
        N = self.order
        out = []
        for n in range(N + 1):
            acc = None
            for k in range(n + 1):
                a, b = self.coeffs[k], other.coeffs[n - k]
                if not a or not b:
                    continue
                term = a * b
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else self.zero)
        return TruncSeries(out, N, self.var)

    def __rmul__(self, other) -> "TruncSeries":
        return self.scale(other)

    def __truediv__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return self * other.invert_unit()
        return self.scale(Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.invert_unit() ** (-n)
        result = TruncSeries.constant(1, self.order, self.var) if isinstance(self.coeffs[0], Poly) else None
        if result is None:
            raise SeriesError("integer powers need Poly coefficients; use repeated products")
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map(self, fn: Callable) -> "TruncSeries":
        """Apply ``fn`` to every coefficient (e.g. a linear operator)."""
        return TruncSeries([fn(c) for c in self.coeffs], self.order, self.var)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1], order, self.var, zero=self.zero)

    # transcendental operations
    def exp(self, one=None) -> "TruncSeries":
        if self.coeffs[0]:
            raise SeriesError("exp needs a series without constant term")
        one = Poly.const(1) if one is None else one
        N = self.order
        g = [one]
        for n in range(1, N + 1):
            acc = self.zero
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc = acc + (self.coeffs[k] * g[n - k]) * k
            g.append(acc * Fraction(1, n))
        return TruncSeries(g, N, self.var)

    def log(self, one=None) -> "TruncSeries":
        one = Poly.const(1) if one is None else one
        if self.coeffs[0] != one:
            raise SeriesError("log needs constant term 1")
        N = self.order
        f = self.coeffs
        h = [self.zero]
        for n in range(1, N + 1):
            acc = f[n] * n
            for k in range(1, n):
                if h[k] and f[n - k]:
                    acc = acc - (h[k] * f[n - k]) * k
            h.append(acc * Fraction(1, n))
        return TruncSeries(h, N, self.var)

    def invert_unit(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if not isinstance(c0, Poly) or not c0 or not c0.is_constant():
            raise SeriesError("only series with a nonzero rational constant term are invertible")
        inv0 = Fraction(1) / c0.constant_value()
        N = self.order
        g = [Poly.const(inv0)]
        for n in range(1, N + 1):
            acc = Poly()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * g[n - k]
            g.append(acc * (-inv0))
        return TruncSeries(g, N, self.var)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner)``; ``inner`` must have zero constant term."""
        inner = self._match(inner)
        if inner.coeffs[0]:
            raise SeriesError("compose needs an inner series of order >= 1")
        N = self.order
        result = TruncSeries.constant(self.coeffs[N], N, self.var)
        for i in range(N - 1, -1, -1):
            result = result * inner + TruncSeries.constant(self.coeffs[i], N, self.var)
        return result

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``var^k``."""
        return TruncSeries([self.zero] * k + self.coeffs, self.order, self.var)

    def subst_coeffs(self, bindings) -> "TruncSeries":
        return self.map(lambda c: c.subst(bindings))


_NAMED = {
    "expm1": lambda N, v: TruncSeries.exp_var(N, v) - 1,
    "log1p": lambda N, v: (TruncSeries.variable(N, v) + 1).log(),
    "geom": lambda N, v: TruncSeries.variable(N, v) / (1 - TruncSeries.variable(N, v)),
}


def parse_series(text: str, order: int, var: str = "t") -> TruncSeries:
    """Series text: a polynomial in ``var``, or one of ``expm1``, ``log1p``, ``geom``.

    The named forms are ``exp(var)-1``, ``log(1+var)`` and ``var/(1-var)``.
    """
    key = text.strip()
    if key in _NAMED:
        return _NAMED[key](order, var)
    return TruncSeries.from_poly(parse_poly(key), order, var)
