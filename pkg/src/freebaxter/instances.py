"""Concrete Baxter algebras behind one small interface, and a seeded checker.

Every instance exposes ``name``, ``weight`` and the operations ``zero``,
``one``, ``add``, ``mul``, ``scalar_mul``, ``P``, ``eq`` and
``random_element(rng)``.  :func:`~freebaxter.freebax.lift` accepts any of
them as a target.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Protocol, runtime_checkable

from .cartier import BracketElement
from .coeff import L, Poly
from .freebax import ShuffleElement
from .hopf import DPElement, basis, dp_mul, dp_P
from .standard import SequenceAlgebra
from .umbral import miller_P

__all__ = [
    "BaxterAlgebra",
    "BaxterReport",
    "ShuffleAlgebra",
    "CartierAlgebra",
    "SequenceAlgebra",
    "DividedPowerAlgebra",
    "MillerAlgebra",
    "ConvElement",
    "ConvolutionAlgebra",
    "conv_mul",
    "conv_P",
    "ScalarAlgebra",
    "IdentityOnRationals",
    "INSTANCES",
    "make_instance",
    "check_baxter",
    "baxter_defect",
]


@runtime_checkable
class BaxterAlgebra(Protocol):
    name: str
    weight: Poly

    def zero(self): ...
    def one(self): ...
    def add(self, a, b): ...
    def mul(self, a, b): ...
    def scalar_mul(self, c, a): ...
    def P(self, a): ...
    def eq(self, a, b) -> bool: ...
    def random_element(self, rng: random.Random): ...


def _coef(rng: random.Random) -> int:
    return rng.choice([-3, -2, -1, 1, 2, 3])


def _monomial(rng: random.Random, names) -> Poly:
    m = Poly.const(1)
    for _ in range(rng.randint(0, 2)):
        m = m * Poly.var(rng.choice(names))
    return m


class _Generic:
    """Shared plumbing for instances whose elements support ``+``, ``*`` and ``==``."""

    name = "generic"
    weight: Poly

    def add(self, a, b):
        return a + b

    def eq(self, a, b) -> bool:
        return a == b

    def __repr__(self) -> str:
        return f"<{self.name} weight={self.weight}>"


class ShuffleAlgebra(_Generic):
    """Mixable shuffle algebra on ``Q[x, y]``."""

    name = "shuffle"

    def __init__(self, weight=L, generators=("x", "y")):
        self.weight = Poly.coerce(weight)
        self.generators = tuple(generators)

    def zero(self):
        return ShuffleElement.zero(self.weight)

    def one(self):
        return ShuffleElement.one(self.weight)

    def mul(self, a, b):
        return a * b

    def scalar_mul(self, c, a):
        return a.scale(c)

    def P(self, a):
        return a.P()

    def random_element(self, rng):
        out = self.zero()
        for _ in range(rng.randint(1, 3)):
            word = [_monomial(rng, self.generators) for _ in range(rng.randint(1, 3))]
            out = out + ShuffleElement.from_word(word, _coef(rng), self.weight)
        return out


class CartierAlgebra(_Generic):
    """Cartier's bracket algebra on ``{x, y}``."""

    name = "cartier"

    def __init__(self, weight=L, generators=("x", "y")):
        self.weight = Poly.coerce(weight)
        self.generators = tuple(generators)

    def zero(self):
        return BracketElement.zero(self.weight)

    def one(self):
        return BracketElement.one(self.weight)

    def mul(self, a, b):
        return a * b

    def scalar_mul(self, c, a):
        return a.scale(c)

    def P(self, a):
        return a.P()

    def random_element(self, rng):
        def mono():
            return next(iter(_monomial(rng, self.generators).terms))

        out = self.zero()
        for _ in range(rng.randint(1, 3)):
            br = tuple(mono() for _ in range(rng.randint(0, 2)))
            out = out + BracketElement.term(mono(), br, _coef(rng), self.weight)
        return out


class DividedPowerAlgebra(_Generic):
    """``Sh(Q, lam)`` in the basis ``e_n`` with ``P(e_n) = e_{n+1}``."""

    name = "divided-power"

    def __init__(self, weight=L, max_degree: int = 4):
        self.weight = Poly.coerce(weight)
        self.max_degree = max_degree

    def zero(self):
        return DPElement()

    def one(self):
        return basis(0)

    def mul(self, a, b):
        return dp_mul(a, b, self.weight)

    def scalar_mul(self, c, a):
        return a.scale(c)

    def P(self, a):
        return dp_P(a)

    def random_element(self, rng):
        return DPElement({rng.randint(0, self.max_degree): _coef(rng) for _ in range(rng.randint(1, 3))})


class MillerAlgebra(_Generic):
    """``Q[t]`` with Miller's operator of weight 0 or -1."""

    def __init__(self, weight: int = 0):
        if weight not in (0, -1):
            raise ValueError("Miller operators exist for weight 0 or -1 only")
        self.w = weight
        self.weight = Poly.const(weight)
        self.name = f"miller{weight}"

    def zero(self):
        return Poly()

    def one(self):
        return Poly.const(1)

    def mul(self, a, b):
        return a * b

    def scalar_mul(self, c, a):
        return a * Poly.coerce(c)

    def P(self, a):
        return miller_P(self.w, a)

    def random_element(self, rng):
        t = Poly.var("t")
        return sum((t ** k * rng.randint(-3, 3) for k in range(rng.randint(1, 3))), Poly())


class ConvElement:
    """Finitely supported function ``Q -> Q``."""

    __slots__ = ("support",)

    def __init__(self, support: Mapping | None = None):
        self.support: Dict[Fraction, Fraction] = {
            Fraction(x): Fraction(v) for x, v in (support or {}).items() if v
        }

    @classmethod
    def delta(cls, x, value=1) -> "ConvElement":
        return cls({x: value})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvElement):
            return NotImplemented
        return self.support == other.support

    def __hash__(self) -> int:
        return hash(frozenset(self.support.items()))

    def __add__(self, other: "ConvElement") -> "ConvElement":
        out = dict(self.support)
        for x, v in other.support.items():
            out[x] = out.get(x, 0) + v
        return ConvElement(out)

    def __neg__(self) -> "ConvElement":
        return ConvElement({x: -v for x, v in self.support.items()})

    def __sub__(self, other: "ConvElement") -> "ConvElement":
        return self + (-other)

    def scale(self, c) -> "ConvElement":
        c = Fraction(c)
        return ConvElement({x: v * c for x, v in self.support.items()})

    def to_json(self) -> dict:
        return {str(x): str(self.support[x]) for x in sorted(self.support)}

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(f"{self.support[x]}*d[{x}]" for x in sorted(self.support))

    __repr__ = __str__


def conv_mul(f: ConvElement, g: ConvElement) -> ConvElement:
    """``(fg)(x) = sum_y f(y) g(x - y)``."""
    out: Dict[Fraction, Fraction] = {}
    for a, u in f.support.items():
        for b, v in g.support.items():
            out[a + b] = out.get(a + b, 0) + u * v
    return ConvElement(out)


def conv_P(f: ConvElement) -> ConvElement:
    """``P(f)(x) = sum of f(y) over y with max(0, y) = x``."""
    out: Dict[Fraction, Fraction] = {}
    for y, v in f.support.items():
        x = max(Fraction(0), y)
        out[x] = out.get(x, 0) + v
    return ConvElement(out)


class ConvolutionAlgebra(_Generic):
    name = "convolution"

    def __init__(self):
        self.weight = Poly.const(-1)

    def zero(self):
        return ConvElement()

    def one(self):
        return ConvElement.delta(0)

    def mul(self, a, b):
        return conv_mul(a, b)

    def scalar_mul(self, c, a):
        return a.scale(Poly.coerce(c).constant_value())

    def P(self, a):
        return conv_P(a)

    def random_element(self, rng):
        pts = {Fraction(rng.randint(-4, 4), rng.choice([1, 2])): _coef(rng) for _ in range(rng.randint(1, 3))}
        return ConvElement(pts)


class ScalarAlgebra(_Generic):
    """``Q[y]`` with ``P(x) = -lam x``."""

    name = "scalar"

    def __init__(self, weight=L):
        self.weight = Poly.coerce(weight)

    def zero(self):
        return Poly()

    def one(self):
        return Poly.const(1)

    def mul(self, a, b):
        return a * b

    def scalar_mul(self, c, a):
        return a * Poly.coerce(c)

    def P(self, a):
        return a * (-self.weight)

    def random_element(self, rng):
        y = Poly.var("y")
        return sum((y ** k * rng.randint(-3, 3) for k in range(rng.randint(1, 3))), Poly())


class IdentityOnRationals(ScalarAlgebra):
    """``Q`` with ``P = id`` at weight 0: not a Baxter algebra."""

    name = "broken"

    def __init__(self):
        self.weight = Poly()

    def P(self, a):
        return a

    def random_element(self, rng):
        return Poly.const(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))


def _fixed(cls, w):
    def make(weight=None):
        if weight is not None and Poly.coerce(weight) != w:
            raise ValueError(f"this instance has fixed weight {w}")
        return cls()

    return make


INSTANCES: Dict[str, Callable] = {
    "shuffle": lambda weight=None: ShuffleAlgebra(L if weight is None else weight),
    "cartier": lambda weight=None: CartierAlgebra(L if weight is None else weight),
    "partial-sum": lambda weight=None: SequenceAlgebra(8, weight),
    "divided-power": lambda weight=None: DividedPowerAlgebra(L if weight is None else weight),
    "miller0": _fixed(lambda: MillerAlgebra(0), 0),
    "miller-1": _fixed(lambda: MillerAlgebra(-1), -1),
    "convolution": _fixed(ConvolutionAlgebra, -1),
    "scalar": lambda weight=None: ScalarAlgebra(L if weight is None else weight),
    "broken": _fixed(IdentityOnRationals, 0),
}


def make_instance(name: str, weight=None):
    if name not in INSTANCES:
        raise ValueError(f"unknown instance {name!r}; choose from {', '.join(INSTANCES)}")
    return INSTANCES[name](weight)


def baxter_defect(alg, x, y):
    """Both sides of ``P(x)P(y) = P(xP(y)) + P(yP(x)) + lam P(xy)``."""
    Px, Py = alg.P(x), alg.P(y)
    lhs = alg.mul(Px, Py)
    rhs = alg.add(
        alg.add(alg.P(alg.mul(x, Py)), alg.P(alg.mul(y, Px))),
        alg.scalar_mul(alg.weight, alg.P(alg.mul(x, y))),
    )
    return lhs, rhs


def _show(v) -> object:
    return v.to_json() if hasattr(v, "to_json") and not isinstance(v, Poly) else str(v)


@dataclass
class BaxterReport:
    instance: str
    passed: bool
    trials: int
    counterexample: Optional[dict] = field(default=None)

    def to_json(self) -> dict:
        return {"instance": self.instance, "pass": self.passed, "counterexample": self.counterexample}


def check_baxter(alg, trials: int = 200, seed: int = 0) -> BaxterReport:
    """Evaluate the Baxter identity on ``trials`` pairs; trial 0 is ``(1, 1)``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    for i in range(trials):
        if i == 0:
            x, y = alg.one(), alg.one()
        else:
            x, y = alg.random_element(rng), alg.random_element(rng)
        lhs, rhs = baxter_defect(alg, x, y)
        if not alg.eq(lhs, rhs):
            cex = {"trial": i, "x": _show(x), "y": _show(y), "lhs": _show(lhs), "rhs": _show(rhs)}
            return BaxterReport(alg.name, False, i + 1, cex)
    return BaxterReport(alg.name, True, trials)
