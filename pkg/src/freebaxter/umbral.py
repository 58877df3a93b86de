"""Bernoulli polynomials, Miller's operators and the lambda-umbral calculus.

Series in ``t`` are elements of the umbral algebra ``C[[t]]``; their duals
live in ``C[[x]]``.  At weight ``0`` the duals are genuine polynomials and
are returned as :class:`~freebaxter.coeff.Poly`.  With the weight left as
the symbol ``L``, ``t``, ``x`` and ``L`` are all given degree one: duals are
series in ``x`` whose coefficients are known modulo a power of ``L``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Sequence, Union

from .coeff import L, Poly, binom
from .hopf import DPElement, basis, dp_mul, dp_P
from .series import SeriesError, TruncSeries

__all__ = [
    "PolySeq",
    "bernoulli_poly",
    "bernoulli_number",
    "phi_poly",
    "miller_P",
    "e_lambda",
    "divided_power_basis",
    "expand_in_basis",
    "is_divided_power_pseudobasis",
    "baxter_automorphism_check",
    "dual_basis",
    "pairing",
    "lambda_binomial_check",
    "shift_operator",
    "to_pseudo_coords",
    "from_pseudo_coords",
    "ShiftOperator",
    "falling_factorial",
    "shuffle_model_P_of_powers",
]

X = Poly.var("x")
T = Poly.var("t")

Entry = Union[Poly, TruncSeries]


class PolySeq:
    """Sequence ``p_0, ..., p_N`` of polynomials (or truncated series) in ``x``.

    ``lam_precision`` is ``K`` when the coefficients are only known modulo
    ``L^K`` (dual bases with the weight symbolic), else ``None``.
    """

    def __init__(self, entries: Sequence[Entry], var: str = "x", lam_precision: int | None = None):
        self.entries = list(entries)
        self.var = var
        self.lam_precision = lam_precision

    def __getitem__(self, n: int) -> Entry:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySeq):
            return NotImplemented
        return self.entries == other.entries and self.lam_precision == other.lam_precision

    def as_polys(self) -> List[Poly]:
        return [e.to_poly() if isinstance(e, TruncSeries) else e for e in self.entries]

    def to_json(self) -> dict:
        return {str(n): str(p) for n, p in enumerate(self.as_polys())}

    def __repr__(self) -> str:
        return f"PolySeq({self.to_json()})"


# Bernoulli and Phi polynomials ------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """``B_n(x)`` from ``t e^(xt) / (e^t - 1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # (e^t - 1)/t = sum t^k/(k+1)!
    denom = TruncSeries([Fraction(1, factorial(k + 1)) for k in range(n + 1)], n)
    gen = TruncSeries.exp_var(n, "t", X) * denom.invert_unit()
    return gen[n] * factorial(n)


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_poly(n).subst({"x": 0}).constant_value()


def phi_poly(n: int) -> Poly:
    """``Phi_n(x) = B_n(x) - B_n``."""
    return bernoulli_poly(n) - bernoulli_number(n)


# Miller's operators on Q[t] ---------------------------------------------


def miller_P(weight: int, p: Poly, var: str = "t") -> Poly:
    """Baxter operator on ``C[var]`` with ``P(1) = var``.

    Weight ``0``: ``var^n -> var^(n+1)/(n+1)``.  Weight ``-1``:
    ``var^n -> Phi_{n+1}(var+1)/(n+1)`` for ``n >= 1``.  Names other than
    ``var`` are scalars.
    """
    if weight not in (0, -1):
        raise ValueError("Miller operators exist for weight 0 or -1 only")
    v = Poly.var(var)
    p = Poly.coerce(p)
    out = Poly()
    for n in range(p.degree(var) + 1):
        c = p.coeff_in(var, n)
        if not c:
            continue
        if n == 0:
            image = v
        elif weight == 0:
            image = v ** (n + 1) * Fraction(1, n + 1)
        else:
            image = phi_poly(n + 1).subst({"x": v + 1}) * Fraction(1, n + 1)
        out = out + c * image
    return out


# lambda-umbral calculus -------------------------------------------------


def e_lambda(lam, order: int, var: str = "x") -> TruncSeries:
    """``(e^(lam var) - 1)/lam = sum lam^(k-1) var^k / k!``."""
    lam = Poly.coerce(lam)
    return TruncSeries(
        [Poly()] + [lam ** (k - 1) * Fraction(1, factorial(k)) for k in range(1, order + 1)],
        order,
        var,
    )


def divided_power_basis(f: TruncSeries, lam, N: int | None = None) -> List[TruncSeries]:
    """``d_n(f) = f (f - lam) ... (f - (n-1) lam) / n!`` for ``n = 0..N``."""
    lam = Poly.coerce(lam)
    N = f.order if N is None else N
    if N != f.order:
        f = f.truncate(N) if N < f.order else TruncSeries(f.coeffs, N, f.var)
    if f.ord() != 1:
        raise SeriesError("the series must have order exactly 1")
    out = [TruncSeries.constant(1, N, f.var)]
    for n in range(1, N + 1):
        out.append(out[-1] * (f - lam * (n - 1)) * Fraction(1, n))
    return out


def expand_in_basis(g: TruncSeries, basis_series: Sequence[TruncSeries]) -> List[Poly]:
    """Coefficients ``a_k`` with ``g = sum a_k b_k`` modulo ``var^(N+1)``.

    ``basis_series[k]`` must have order ``k`` and a rational leading coefficient.
    """
    N = g.order
    rem = g
    out = []
    for k in range(N + 1):
        b = basis_series[k]
        lead = b[k]
        if b.ord() != k or not lead.is_constant():
            raise SeriesError(f"basis element {k} is not triangular with rational leading term")
        a = rem[k] / lead.constant_value()
        out.append(a)
        if a:
            rem = rem - b.scale(a)
    return out


def is_divided_power_pseudobasis(fs: Sequence[TruncSeries], lam=0) -> bool:
    """Check ``f_m f_n = binom(m+n, m) f_{m+n}`` (weight 0) or the Baxter form (weight ``lam``)."""
    lam = Poly.coerce(lam)
    N = len(fs) - 1
    if any(f.order != N for f in fs):
        raise SeriesError("pseudo-basis length must be order + 1")
    if fs[0] != TruncSeries.constant(1, N, fs[0].var):
        return False
    if not lam:
        if any(f.ord() != n for n, f in enumerate(fs)):
            return False
        for m in range(N + 1):
            for n in range(N + 1 - m):
                if fs[m] * fs[n] != fs[m + n].scale(binom(m + n, m)):
                    return False
        return True
    f = fs[1]
    if f.ord() != 1:
        return False
    for n in range(N):
        if f * fs[n] != fs[n + 1].scale(n + 1) + fs[n].scale(lam * n):
            return False
    return list(fs) == divided_power_basis(f, lam, N)


def _rational_rank(rows: List[List[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col] / m[rank][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def baxter_automorphism_check(fs: Sequence[TruncSeries], N: int | None = None) -> bool:
    """Does ``t_n -> f_n`` give a weight-0 Baxter algebra automorphism of ``C[[t]]``?

    Checks, modulo ``t^(N+1)``: the coefficient matrix is invertible,
    ``f_m f_n`` is the image of ``t_m t_n``, and the transported operator
    ``phi o P o phi^-1`` (with ``P(t_n) = t_{n+1}``) sends ``f_n`` to
    ``f_{n+1}`` and satisfies the weight-0 Baxter identity.
    """
    N = len(fs) - 1 if N is None else N
    fs = [f if f.order == N else f.truncate(N) for f in fs[: N + 1]]
    if len(fs) != N + 1:
        return False
    for f in fs:
        if any(not c.is_constant() for c in f.coeffs):
            raise SeriesError("automorphism check works over the rationals")
    # column n = coordinates of f_n in the basis t_k = t^k/k!
    cols = [[f[k].constant_value() * factorial(k) for k in range(N + 1)] for f in fs]
    if _rational_rank(cols) != N + 1:
        return False
    if any(f.ord() != n for n, f in enumerate(fs)):
        return False
    for m in range(N + 1):
        for n in range(N + 1 - m):
            if fs[m] * fs[n] != fs[m + n].scale(binom(m + n, m)):
                return False

    def transported(g: TruncSeries) -> TruncSeries:
        coords = expand_in_basis(g, fs)
        out = TruncSeries([0], N, g.var)
        for n, c in enumerate(coords[:N]):
            if c:
                out = out + fs[n + 1].scale(c)
        return out

    for n in range(N):
        if transported(fs[n]) != fs[n + 1]:
            return False
    t_basis = [TruncSeries.variable(N, fs[0].var) ** k * Fraction(1, factorial(k)) for k in range(N + 1)]
    for a in t_basis[: N // 2 + 1]:
        for b in t_basis[: N // 2 + 1]:
            Pa, Pb = transported(a), transported(b)
            if Pa * Pb != transported(a * Pb) + transported(b * Pa):
                return False
    return True


def _lam_cut(p: Poly, K: int | None) -> Poly:
    """Drop terms of ``L``-degree ``>= K`` (no-op for ``K = None``)."""
    if K is None:
        return p
    return Poly({m: c for m, c in p.items() if dict(m).get("L", 0) < K})


def _poly_pseudo_coords(p: Poly, lam: Poly, var: str, K: int | None = None) -> List[Poly]:
    top = p.degree(var)
    basis_polys = [falling_factorial(k, lam, var) for k in range(max(top, 0) + 1)]
    rem = p
    out = [Poly() for _ in range(max(top, 0) + 1)]
    for k in range(top, -1, -1):
        c = rem.coeff_in(var, k)
        if c:
            a = c * factorial(k)
            out[k] = _lam_cut(a, K)
            rem = _lam_cut(rem - basis_polys[k] * a, K)
    assert not rem, "polynomial must expand exactly"
    return out


def to_pseudo_coords(f: TruncSeries, lam=L) -> List[Poly]:
    """Coordinates ``a_k`` of ``f = sum a_k d_k(t)``.

    The series is read as the polynomial it truncates to, which the
    degree-triangular basis ``d_0(t), ..., d_N(t)`` spans exactly.  At
    weight 0 this is ``a_k = k! c_k``.
    """
    out = _poly_pseudo_coords(f.to_poly(), Poly.coerce(lam), f.var)
    return (out + [Poly()] * (f.order + 1))[: f.order + 1]


def from_pseudo_coords(coords: Sequence, lam=L, var: str = "t") -> TruncSeries:
    """``sum a_k d_k(var)`` as a truncated series of order ``len(coords) - 1``."""
    lam = Poly.coerce(lam)
    N = len(coords) - 1
    p = Poly()
    for k, a in enumerate(coords):
        a = Poly.coerce(a)
        if a:
            p = p + falling_factorial(k, lam, var) * a
    return TruncSeries.from_poly(p, N, var)


class ShiftOperator:
    """``P: d_n(f) -> d_{n+1}(f)`` on the span of ``d_0(f), d_1(f), ...``.

    Span elements are given by their coordinates as :class:`DPElement`;
    :meth:`embed` realises them as series in ``t`` modulo ``t^(N+1)``.
    The products that the Baxter identity needs are formed in coordinates
    with the weight-``lam`` product of the ``e_n`` and compared, after
    embedding, with genuine series products.
    """

    def __init__(self, f: TruncSeries, lam=L):
        self.lam = Poly.coerce(lam)
        self.N = f.order
        self.ds = divided_power_basis(f, self.lam, f.order)

    def embed(self, a: DPElement) -> TruncSeries:
        out = TruncSeries([0], self.N, self.ds[0].var)
        for n, c in a.coeffs.items():
            if n > self.N:
                raise SeriesError(f"index {n} exceeds the order {self.N}")
            out = out + self.ds[n].scale(c)
        return out

    def P(self, a: DPElement) -> DPElement:
        return dp_P(a)

    def baxter_holds(self, u: DPElement, v: DPElement) -> bool:
        lam = self.lam
        Pu, Pv = dp_P(u), dp_P(v)
        lhs = self.embed(Pu) * self.embed(Pv)
        rhs = (
            self.embed(dp_P(dp_mul(u, Pv, lam)))
            + self.embed(dp_P(dp_mul(v, Pu, lam)))
            + self.embed(dp_P(dp_mul(u, v, lam))).scale(lam)
        )
        return lhs == rhs


def shift_operator(f: TruncSeries, lam=L) -> ShiftOperator:
    return ShiftOperator(f, lam)


def _e_powers(lam: Poly, N: int, K: int | None = None) -> List[TruncSeries]:
    e = e_lambda(lam, N)
    out = [TruncSeries.constant(1, N, "x")]
    for _ in range(N):
        out.append((out[-1] * e).map(lambda c: _lam_cut(c, K)))
    return out


def _weight_kind(lam: Poly) -> str:
    if not lam:
        return "zero"
    if lam.is_constant():
        return "rational"
    if lam == L:
        return "symbolic"
    raise SeriesError(f"weight must be 0, a rational or the symbol L, not {lam}")


def _upper_inverse(M: List[List[Fraction]]) -> List[List[Fraction]]:
    """Inverse of an upper-triangular rational matrix with nonzero diagonal."""
    n = len(M)
    B = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        B[j][j] = 1 / M[j][j]
        for i in range(j - 1, -1, -1):
            acc = sum((M[i][k] * B[k][j] for k in range(i + 1, j + 1)), Fraction(0))
            B[i][j] = -acc / M[i][i]
    return B


def _mat_mul(A, B, K):
    n, m, p = len(A), len(B), len(B[0])
    out = [[Poly() for _ in range(p)] for _ in range(n)]
    for i in range(n):
        for k in range(m):
            a = A[i][k]
            if not a:
                continue
            for j in range(p):
                if B[k][j]:
                    out[i][j] = out[i][j] + a * B[k][j]
        out[i] = [_lam_cut(c, K) for c in out[i]]
    return out


def _inverse_mod_lam(M: List[List[Poly]], K: int) -> List[List[Poly]]:
    """Inverse modulo ``L^K`` of a matrix that is upper triangular modulo ``L``."""
    n = len(M)
    M0 = [[M[i][j].subst({"L": 0}).constant_value() for j in range(n)] for i in range(n)]
    if any(M0[i][j] for i in range(n) for j in range(i)) or any(not M0[i][i] for i in range(n)):
        raise SeriesError("change of basis is not invertible")
    B0 = [[Poly.const(c) for c in row] for row in _upper_inverse(M0)]
    # B = sum_r (-B0 E)^r B0 with E = M - M0, nilpotent modulo L^K
    E = [[M[i][j] - M0[i][j] for j in range(n)] for i in range(n)]
    step = [[-c for c in row] for row in _mat_mul(B0, E, K)]
    out = B0
    term = B0
    for _ in range(1, K):
        term = _mat_mul(step, term, K)
        if not any(c for row in term for c in row):
            break
        out = [[a + b for a, b in zip(r, s)] for r, s in zip(out, term)]
    return out


def dual_basis(f: TruncSeries, lam=L, N: int | None = None, x_order: int | None = None) -> PolySeq:
    """Sequence ``s_n``, ``n <= N``, with ``<d_m(f), s_n> = delta_mn``.

    ``f`` must have order 1 with a nonzero rational ``t`` coefficient and is
    read as the polynomial it truncates to.  ``s_n`` is a combination of
    ``e_lam(x)^j``.

    * weight 0: exact polynomials.
    * ``lam = L``: ``t``, ``x`` and ``L`` all count with degree 1.  The
      entries are series in ``x`` to order ``x_order`` (default ``N``) with
      coefficients modulo ``L^(N+1)``; see ``PolySeq.lam_precision``.
    * rational ``lam != 0``: only for linear ``f = c t``, where the answer is
      homogeneous in ``L`` and can be specialised exactly.
    """
    lam = Poly.coerce(lam)
    kind = _weight_kind(lam)
    N = f.order if N is None else N
    if N != f.order:
        f = f.truncate(N) if N < f.order else TruncSeries(f.coeffs, N, f.var)
    if f.ord() != 1:
        raise SeriesError("the series must have order exactly 1")
    c1 = f[1]
    if not c1.is_constant():
        raise SeriesError(f"leading coefficient {c1} is not a unit (nonzero rational)")
    if kind == "zero":
        fs = divided_power_basis(f, lam, N)
        M = [[fs[m][k].constant_value() * factorial(k) for k in range(N + 1)] for m in range(N + 1)]
        if any(not c.is_constant() for g in fs for c in g.coeffs):
            raise SeriesError("weight-0 dual basis needs rational coefficients")
        B = _upper_inverse(M)
        entries = [sum((X ** j * B[j][n] for j in range(n + 1)), Poly()) for n in range(N + 1)]
        return PolySeq(entries)
    if kind == "rational" and any(f.coeffs[2:]):
        raise SeriesError("a nonzero rational weight needs a linear series; use L for the general case")
    Xo = N if x_order is None else x_order
    K = N + 1
    R = max(Xo, N + K - 1)
    F = f.to_poly()
    d = Poly.const(1)
    M = []
    for m in range(R + 1):
        if m:
            d = _lam_cut((d * (F - L * (m - 1))) * Fraction(1, m), K)
        cs = _poly_pseudo_coords(d, L, f.var, K)
        M.append([cs[k] if k < len(cs) else Poly() for k in range(R + 1)])
    B = _inverse_mod_lam(M, K)
    q = _e_powers(L, Xo, K)
    entries = []
    for n in range(N + 1):
        s = TruncSeries([0], Xo, "x")
        for j in range(Xo + 1):
            if B[j][n]:
                s = s + q[j].scale(B[j][n])
        entries.append(s.map(lambda c: _lam_cut(c, K)))
    if kind == "rational":
        return PolySeq([s.subst_coeffs({"L": lam}) for s in entries])
    return PolySeq(entries, lam_precision=K)


def pairing(g: TruncSeries, s: Entry) -> Poly:
    """Umbral pairing ``<t^m, x^j> = m! delta_mj``.

    For every weight this is the pairing making ``{d_k(t)}`` dual to
    ``{e_lam(x)^k}``.
    """
    if isinstance(s, TruncSeries):
        s = s.to_poly()
    out = Poly()
    for m, c in enumerate(g.coeffs):
        if c:
            out = out + c * s.coeff_in("x", m) * factorial(m)
    return out


def _truncate_total(p: Poly, names, N: int) -> Poly:
    return Poly({m: c for m, c in p.items() if sum(e for v, e in m if v in names) <= N})


def lambda_binomial_check(ps: Sequence[Entry], lam=L, N: int | None = None) -> bool:
    """``p_n(x+y) = sum_k lam^k sum_i binom(n,i) binom(i,k) p_i(x) p_{n+k-i}(y)`` for ``n <= N``.

    ``k`` runs to ``n``: ``binom(i, k)`` vanishes beyond that, so no index
    past ``n`` is touched.  Series
    entries are compared modulo total degree ``N + 1`` in ``x, y``, and
    modulo ``L^K`` when ``ps`` carries a ``lam_precision`` ``K``.
    """
    lam = Poly.coerce(lam)
    entries = list(ps)
    K = ps.lam_precision if isinstance(ps, PolySeq) else None
    N = len(entries) - 1 if N is None else N
    if N >= len(entries):
        raise ValueError(f"need entries p_0..p_{N}, got {len(entries)}")
    truncated = any(isinstance(e, TruncSeries) for e in entries)
    if truncated:
        N = min([N] + [e.order for e in entries if isinstance(e, TruncSeries)])
    polys = [e.to_poly() if isinstance(e, TruncSeries) else Poly.coerce(e) for e in entries]
    Y = Poly.var("y")
    ys = [p.subst({"x": Y}) for p in polys]
    names = {"x", "y"}

    def cut(p: Poly) -> Poly:
        p = _lam_cut(p, K)
        return _truncate_total(p, names, N) if truncated else p

    for n in range(N + 1):
        lhs = cut(polys[n].subst({"x": X + Y}))
        rhs = Poly()
        for k in range(n + 1):
            for i in range(k, n + 1):
                j = n + k - i
                c = binom(n, i) * binom(i, k)
                if c:
                    rhs = rhs + cut(polys[i] * ys[j] * (lam ** k * c))
        if lhs != cut(rhs):
            return False
    return True


def falling_factorial(n: int, lam=L, var: str = "x") -> Poly:
    """``x (x - lam) ... (x - (n-1) lam) / n!``, the image of ``e_n``."""
    lam = Poly.coerce(lam)
    v = Poly.var(var)
    out = Poly.const(1)
    for i in range(n):
        out = out * (v - lam * i)
    return out * Fraction(1, factorial(n))


def shuffle_model_P_of_powers(n: int, weight: int):
    """``P(t^n)`` and the Miller prediction in ``Sh(Q, weight)`` with ``t = P(1)``.

    ``n = 0`` is pinned to ``P(1) = t`` for both weights.

    Returns ``(lhs, rhs)`` as divided-power elements.
    """
    lam = Poly.const(weight)
    one = basis(0)
    t = dp_P(one)

    def power(k: int) -> DPElement:
        r = one
        for _ in range(k):
            r = dp_mul(r, t, lam)
        return r

    lhs = dp_P(power(n))
    if n == 0:
        target = T
    elif weight == 0:
        target = T ** (n + 1) * Fraction(1, n + 1)
    elif weight == -1:
        target = phi_poly(n + 1).subst({"x": T + 1}) * Fraction(1, n + 1)
    else:
        raise ValueError("weight must be 0 or -1")
    rhs = DPElement()
    for k in range(target.degree("t") + 1):
        c = target.coeff_in("t", k)
        if c:
            rhs = rhs + power(k).scale(c)
    return lhs, rhs
