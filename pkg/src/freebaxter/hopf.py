"""Hopf algebra structure on ``Sh(C, lam)`` in the basis ``e_n = 1^(n+1)``.

``lam`` defaults to the symbol ``L`` throughout; pass ``Poly(0)`` (or any
rational) to specialise.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

from .coeff import L, Fraction, Poly, binom, parse_poly

__all__ = [
    "DPElement",
    "DPTensor",
    "basis",
    "dp_mul",
    "dp_P",
    "dp_delta",
    "dp_counit",
    "dp_antipode",
    "dp_antipode_paper",
    "antipode_table",
    "dp_verify",
    "AXIOMS",
    "hurwitz_mul",
    "to_hurwitz",
]

AXIOMS = ("coassoc", "counit", "cocommutative", "bialgebra", "antipode")


def _clean(d):
    return {k: v for k, v in d.items() if v}


class DPElement:
    """``sum c_n e_n`` stored as ``{n: c_n}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self.coeffs: Dict[int, Poly] = _clean({int(n): Poly.coerce(c) for n, c in (coeffs or {}).items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DPElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "DPElement") -> "DPElement":
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return DPElement(out)

    def __neg__(self) -> "DPElement":
        return DPElement({n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other: "DPElement") -> "DPElement":
        return self + (-other)

    def scale(self, c) -> "DPElement":
        c = Poly.coerce(c)
        return DPElement({n: v * c for n, v in self.coeffs.items()})

    def subst(self, bindings) -> "DPElement":
        return DPElement({n: c.subst(bindings) for n, c in self.coeffs.items()})

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def to_json(self) -> dict:
        return {str(n): str(self.coeffs[n]) for n in sorted(self.coeffs)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "DPElement":
        return cls({int(n): parse_poly(c) for n, c in data.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[n]})*e{n}" for n in sorted(self.coeffs))

    __repr__ = __str__


def basis(n: int) -> DPElement:
    return DPElement({n: 1})


class DPTensor:
    """Element of ``Sh(C) (x) Sh(C)`` as ``{(m, n): c}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Tuple[int, int], object] | None = None):
        self.coeffs: Dict[Tuple[int, int], Poly] = _clean(
            {k: Poly.coerce(c) for k, c in (coeffs or {}).items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DPTensor):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __add__(self, other: "DPTensor") -> "DPTensor":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return DPTensor(out)

    def swap(self) -> "DPTensor":
        return DPTensor({(n, m): c for (m, n), c in self.coeffs.items()})

    def mul(self, other: "DPTensor", lam=L) -> "DPTensor":
        """Componentwise product ``(a (x) b)(c (x) d) = ac (x) bd``."""
        lam = Poly.coerce(lam)
        out: Dict[Tuple[int, int], Poly] = {}
        for (a, b), c1 in self.coeffs.items():
            for (c, d), c2 in other.coeffs.items():
                left = _unit_product(a, c, lam)
                right = _unit_product(b, d, lam)
                for i, x in left.items():
                    for j, y in right.items():
                        v = c1 * c2 * x * y
                        out[(i, j)] = out[(i, j)] + v if (i, j) in out else v
        return DPTensor(out)

    def to_json(self) -> dict:
        return {f"{m},{n}": str(self.coeffs[(m, n)]) for m, n in sorted(self.coeffs)}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[k]})*e{k[0]}(x)e{k[1]}" for k in sorted(self.coeffs))

    __repr__ = __str__


@lru_cache(maxsize=4096)
def _unit_product(m: int, n: int, lam: Poly) -> Dict[int, Poly]:
    # e_m e_n = sum_k binom(m+n-k, n) binom(n, k) lam^k e_{m+n-k}
    out = {}
    for k in range(0, min(m, n) + 1):
        c = binom(m + n - k, n) * binom(n, k)
        if c:
            out[m + n - k] = lam ** k * c
    return out


def dp_mul(a: DPElement, b: DPElement, lam=L) -> DPElement:
    lam = Poly.coerce(lam)
    out: Dict[int, Poly] = {}
    for m, ca in a.coeffs.items():
        for n, cb in b.coeffs.items():
            for r, c in _unit_product(m, n, lam).items():
                v = ca * cb * c
                out[r] = out[r] + v if r in out else v
    return DPElement(out)


def dp_P(a: DPElement) -> DPElement:
    """The Baxter operator ``e_n -> e_{n+1}``."""
    return DPElement({n + 1: c for n, c in a.coeffs.items()})


def _delta_basis(n: int, lam: Poly) -> Dict[Tuple[int, int], Poly]:
    out = {}
    for k in range(n + 1):
        w = (-lam) ** k
        for i in range(n - k + 1):
            key = (i, n - k - i)
            out[key] = out[key] + w if key in out else w
    return out


def dp_delta(a: DPElement, lam=L) -> DPTensor:
    lam = Poly.coerce(lam)
    out: Dict[Tuple[int, int], Poly] = {}
    for n, c in a.coeffs.items():
        for key, w in _delta_basis(n, lam).items():
            v = c * w
            out[key] = out[key] + v if key in out else v
    return DPTensor(out)


def dp_counit(a: DPElement, lam=L) -> Poly:
    lam = Poly.coerce(lam)
    return a.coeffs.get(0, Poly()) + lam * a.coeffs.get(1, Poly())


def _mu(t: DPTensor, left, right, lam: Poly) -> DPElement:
    """``mu o (left (x) right)`` applied to ``t``; ``left``/``right`` act on basis indices."""
    out = DPElement()
    for (i, j), c in t.coeffs.items():
        out = out + dp_mul(left(i), right(j), lam).scale(c)
    return out


def dp_antipode(a: DPElement, lam=L) -> DPElement:
    """Antipode solved degree by degree from ``S * id = eta o epsilon``."""
    lam = Poly.coerce(lam)
    top = a.degree()
    table: List[DPElement] = []
    for n in range(top + 1):
        rhs = DPElement({0: dp_counit(basis(n), lam)})
        for (i, j), w in _delta_basis(n, lam).items():
            if i == n:
                continue
            rhs = rhs - dp_mul(table[i], basis(j), lam).scale(w)
        table.append(rhs)
    out = DPElement()
    for n, c in a.coeffs.items():
        out = out + table[n].scale(c)
    return out


def dp_antipode_paper(a: DPElement, lam=L) -> DPElement:
    """Closed form ``(-1)^n sum_v binom(n-3, v-3) lam^(n-v) e_v`` (generalised binomials)."""
    lam = Poly.coerce(lam)
    out = DPElement()
    for n, c in a.coeffs.items():
        terms = {v: lam ** (n - v) * (binom(n - 3, v - 3) * (-1) ** n) for v in range(n + 1)}
        out = out + DPElement(terms).scale(c)
    return out


def antipode_table(N: int, lam=L) -> List[dict]:
    """Rows comparing the recursive antipode with the closed form for ``n <= N``."""
    rows = []
    for n in range(N + 1):
        rec = dp_antipode(basis(n), lam)
        closed = dp_antipode_paper(basis(n), lam)
        rows.append({"n": n, "recursive": str(rec), "closed": str(closed), "agree": rec == closed})
    return rows


def dp_verify(axiom: str, N: int, lam=L) -> bool:
    """Check one Hopf algebra axiom on ``e_0, ..., e_N``."""
    lam = Poly.coerce(lam)
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOMS)}")
    check = _CHECKS[axiom]
    return all(check(n, lam, N) for n in range(N + 1))


def _triple_left(n: int, lam: Poly):
    out: Dict[Tuple[int, int, int], Poly] = {}
    for (i, j), c in _delta_basis(n, lam).items():
        for (a, b), d in _delta_basis(i, lam).items():
            key = (a, b, j)
            out[key] = out.get(key, Poly()) + c * d
    return _clean(out)


def _triple_right(n: int, lam: Poly):
    out: Dict[Tuple[int, int, int], Poly] = {}
    for (i, j), c in _delta_basis(n, lam).items():
        for (a, b), d in _delta_basis(j, lam).items():
            key = (i, a, b)
            out[key] = out.get(key, Poly()) + c * d
    return _clean(out)


def _check_coassoc(n, lam, N):
    return _triple_left(n, lam) == _triple_right(n, lam)


def _check_counit(n, lam, N):
    d = dp_delta(basis(n), lam)
    left = DPElement()
    right = DPElement()
    for (i, j), c in d.coeffs.items():
        left = left + basis(j).scale(c * dp_counit(basis(i), lam))
        right = right + basis(i).scale(c * dp_counit(basis(j), lam))
    return left == basis(n) and right == basis(n)


def _check_cocommutative(n, lam, N):
    d = dp_delta(basis(n), lam)
    return d.swap() == d


def _check_bialgebra(n, lam, N):
    ok = True
    if n == 0:
        ok = dp_delta(basis(0), lam) == DPTensor({(0, 0): 1})
    for m in range(n + 1):
        prod = dp_mul(basis(m), basis(n), lam)
        ok = ok and dp_delta(prod, lam) == dp_delta(basis(m), lam).mul(dp_delta(basis(n), lam), lam)
        ok = ok and dp_counit(prod, lam) == dp_counit(basis(m), lam) * dp_counit(basis(n), lam)
    return ok


def _check_antipode(n, lam, N):
    d = dp_delta(basis(n), lam)
    S = lambda i: dp_antipode(basis(i), lam)
    target = DPElement({0: dp_counit(basis(n), lam)})
    left = _mu(d, S, basis, lam)
    right = _mu(d, basis, S, lam)
    return left == target and right == target


_CHECKS = {
    "coassoc": _check_coassoc,
    "counit": _check_counit,
    "cocommutative": _check_cocommutative,
    "bialgebra": _check_bialgebra,
    "antipode": _check_antipode,
}


def to_hurwitz(a: DPElement, N: int) -> List[Poly]:
    """Coefficient sequence ``(c_0, ..., c_N)`` of ``sum c_n e_n``."""
    return [a.coeffs.get(n, Poly()) for n in range(N + 1)]


def hurwitz_mul(a: List[Poly], b: List[Poly]) -> List[Poly]:
    """Hurwitz product ``c_n = sum_k binom(n, k) a_k b_{n-k}``."""
    N = min(len(a), len(b)) - 1
    out = []
    for n in range(N + 1):
        acc = Poly()
        for k in range(n + 1):
            acc = acc + a[k] * b[n - k] * binom(n, k)
        out.append(acc)
    return out
