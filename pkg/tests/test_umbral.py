import random
from fractions import Fraction
from math import factorial

import pytest

from freebaxter.coeff import L, Poly, parse_poly
from freebaxter.hopf import DPElement, basis, dp_mul
from freebaxter.series import SeriesError, TruncSeries, parse_series
from freebaxter.umbral import (
    PolySeq,
    baxter_automorphism_check,
    bernoulli_number,
    bernoulli_poly,
    divided_power_basis,
    dual_basis,
    e_lambda,
    falling_factorial,
    from_pseudo_coords,
    is_divided_power_pseudobasis,
    lambda_binomial_check,
    miller_P,
    pairing,
    phi_poly,
    shift_operator,
    shuffle_model_P_of_powers,
    to_pseudo_coords,
)

x = Poly.var("x")
t = Poly.var("t")


def P(s):
    return parse_poly(s)


def lam_cut(p, K):
    return Poly({m: c for m, c in p.items() if dict(m).get("L", 0) < K})


def seeded_series(count=5, N=4, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        c1 = rng.choice([-3, -2, -1, 1, 2, 3])
        rest = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]
        out.append(TruncSeries([0, c1] + rest, N))
    return out


# Bernoulli / Phi -----------------------------------------------------------


def test_bernoulli_examples():
    assert bernoulli_poly(0) == Poly.const(1)
    assert bernoulli_poly(1) == P("x - 1/2")
    assert bernoulli_poly(3) == P("x^3 - 3/2*x^2 + 1/2*x")
    assert [bernoulli_number(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert phi_poly(0) == Poly()
    assert phi_poly(3).subst({"x": 3}) == Poly.const(15)


@pytest.mark.parametrize("n", range(1, 7))
def test_power_sums(n):
    for k in range(1, 11):
        lhs = phi_poly(n + 1).subst({"x": k + 1})
        assert lhs == Poly.const((n + 1) * sum(r ** n for r in range(1, k + 1)))


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli_poly(-1)


# Miller ----------------------------------------------------------------------


def test_miller_examples():
    assert miller_P(0, t ** 2) == t ** 3 * Fraction(1, 3)
    assert miller_P(-1, t) == t * (t + 1) * Fraction(1, 2)
    assert miller_P(0, Poly.const(1)) == t
    assert miller_P(-1, Poly.const(1)) == t
    with pytest.raises(ValueError):
        miller_P(1, t)


def test_miller_weight_minus_one_sums():
    Pt = miller_P(-1, t)
    for k in range(1, 11):
        assert Pt.subst({"t": k}) == Poly.const(sum(range(1, k + 1)))


@pytest.mark.parametrize("weight", [0, -1])
def test_miller_baxter_identity(weight):
    Pm = lambda p: miller_P(weight, p)
    for m in range(7):
        for n in range(7):
            a, b = t ** m, t ** n
            assert Pm(a) * Pm(b) == Pm(a * Pm(b)) + Pm(b * Pm(a)) + Pm(a * b) * weight


@pytest.mark.parametrize("weight", [0, -1])
@pytest.mark.parametrize("n", range(6))
def test_shuffle_model(weight, n):
    lhs, rhs = shuffle_model_P_of_powers(n, weight)
    assert lhs == rhs


@pytest.mark.parametrize("m", range(6))
def test_falling_factorial_isomorphism(m):
    for n in range(6):
        image = sum(
            (falling_factorial(k, L) * c for k, c in dp_mul(basis(m), basis(n)).coeffs.items()),
            Poly(),
        )
        assert image == falling_factorial(m, L) * falling_factorial(n, L)


# pseudo-bases --------------------------------------------------------------


def t_basis(N):
    return [TruncSeries.from_poly(t ** n * Fraction(1, factorial(n)), N) for n in range(N + 1)]


def test_divided_power_basis_examples():
    d = divided_power_basis(TruncSeries.variable(4), L)
    assert d[2] == TruncSeries.from_poly(t * (t - L) * Fraction(1, 2), 4)
    assert divided_power_basis(TruncSeries.variable(5), 0) == t_basis(5)
    f = parse_series("expm1", 5)
    assert divided_power_basis(f, 0)[2] == f * f * Fraction(1, 2)
    with pytest.raises(SeriesError):
        divided_power_basis(TruncSeries.from_poly(t ** 2, 4), L)


def test_pseudobasis_checks():
    assert is_divided_power_pseudobasis(t_basis(6))
    powers = [TruncSeries.from_poly(t ** n, 6) for n in range(7)]
    assert not is_divided_power_pseudobasis(powers)
    f = TruncSeries.from_poly(t + t ** 2, 6)
    assert is_divided_power_pseudobasis(divided_power_basis(f, L), L)
    assert not is_divided_power_pseudobasis(divided_power_basis(f, L), 2 * L)


def test_automorphism_check():
    N = 6
    f = parse_series("expm1", N)
    fam = [f ** n * Fraction(1, factorial(n)) for n in range(N + 1)]
    assert baxter_automorphism_check(fam, N)
    assert baxter_automorphism_check(t_basis(N), N)
    assert not baxter_automorphism_check([TruncSeries.from_poly(t ** n, N) for n in range(N + 1)], N)


def test_pseudo_coords_round_trip():
    g = TruncSeries.from_poly(P("3*t - L*t^2 + 1/2*t^4"), 5)
    assert from_pseudo_coords(to_pseudo_coords(g, L), L) == g
    assert to_pseudo_coords(g, 0) == [Poly(), Poly.const(3), -L * 2, Poly(), Poly.const(12), Poly()]


@pytest.mark.parametrize("f", seeded_series(3, N=10) + [TruncSeries.from_poly(t + t ** 2, 10)], ids=str)
def test_shift_operator_is_baxter(f):
    op = shift_operator(f, L)
    idx = range(5)
    for i in idx:
        for j in idx:
            u = basis(i) + basis(0).scale(2)
            v = basis(j).scale(L) - basis(1)
            assert op.baxter_holds(u, v)
    assert op.P(basis(3)) == basis(4)


# dual bases ----------------------------------------------------------------


def lower_factorial(n):
    out = Poly.const(1)
    for i in range(n):
        out = out * (x - i)
    return out


def test_dual_of_expm1_is_lower_factorials():
    s = dual_basis(parse_series("expm1", 5), 0, 5)
    assert s.as_polys() == [lower_factorial(n) for n in range(6)]
    assert s.lam_precision is None


def test_dual_of_t_is_e_lambda_powers():
    N = 4
    s = dual_basis(TruncSeries.variable(N), L)
    e = e_lambda(L, N)
    powers = [TruncSeries.constant(1, N, "x")]
    for _ in range(N):
        powers.append(powers[-1] * e)
    assert [p.to_poly() for p in s] == [lam_cut(p.to_poly(), N + 1) for p in powers]
    assert dual_basis(TruncSeries.variable(N), 0).as_polys() == [x ** n for n in range(N + 1)]


def test_dual_of_geometric_series():
    N = 5
    f = parse_series("geom", N)
    s = dual_basis(f, 0)
    ds = divided_power_basis(f, 0)
    for m in range(N + 1):
        for n in range(N + 1):
            assert pairing(ds[m], s[n]) == Poly.const(1 if m == n else 0)
    assert lambda_binomial_check(s, 0)


def _exact_d(F, m):
    d = Poly.const(1)
    for i in range(m):
        d = d * (F - L * i) * Fraction(1, i + 1)
    return d


@pytest.mark.parametrize("f", seeded_series() + [TruncSeries.from_poly(t + t ** 2, 4)], ids=str)
def test_lambda_dual_pairing_oracle(f):
    """Pair the exact d_m(f) with a dual computed to a deeper x-order."""
    N = f.order
    K = N + 1
    s = dual_basis(f, L, x_order=2 * N + 1)
    F = f.to_poly()
    for m in range(N + 1):
        g = TruncSeries.from_poly(_exact_d(F, m), 2 * N + 1)
        for n in range(N + 1):
            assert lam_cut(pairing(g, s[n]), K) == Poly.const(1 if m == n else 0)


@pytest.mark.parametrize("f", seeded_series(), ids=str)
def test_lambda_dual_is_lambda_binomial(f):
    s = dual_basis(f, L)
    assert s.lam_precision == 5
    assert lambda_binomial_check(s, L, 4)


@pytest.mark.parametrize("f", seeded_series(), ids=str)
def test_weight_zero_dual_is_binomial(f):
    s = dual_basis(f, 0)
    assert lambda_binomial_check(s, 0, 4)
    ds = divided_power_basis(f, 0)
    for m in range(5):
        for n in range(5):
            assert pairing(ds[m], s[n]) == Poly.const(1 if m == n else 0)


def test_rational_weight_linear_series():
    N = 4
    f = TruncSeries.from_poly(t * 3, N)
    s = dual_basis(f, 2)
    assert lambda_binomial_check(s, 2, N)
    ds = divided_power_basis(f, 2)
    for m in range(N + 1):
        for n in range(N + 1):
            assert pairing(ds[m], s[n]) == Poly.const(1 if m == n else 0)


def test_dual_basis_errors():
    with pytest.raises(SeriesError):
        dual_basis(TruncSeries.from_poly(t ** 2, 4), L)
    with pytest.raises(SeriesError):
        dual_basis(TruncSeries.from_poly(t * L, 4), L)
    with pytest.raises(SeriesError):
        dual_basis(TruncSeries.from_poly(t + t ** 2, 4), 2)


def test_perturbed_dual_fails():
    s = dual_basis(seeded_series(1)[0], L)
    entries = list(s)
    entries[2] = entries[2] + TruncSeries.from_poly(x ** 2, 4, "x")
    assert not lambda_binomial_check(PolySeq(entries, lam_precision=s.lam_precision), L, 4)


# lambda-binomial ---------------------------------------------------------


def test_lambda_binomial_examples():
    assert lambda_binomial_check([x ** n for n in range(6)], 0)
    q = [lam_cut(e_lambda(L, 4).to_poly() ** n, 5) for n in range(5)]
    qs = PolySeq([TruncSeries.from_poly(p, 4, "x") for p in q], lam_precision=5)
    assert lambda_binomial_check(qs, L, 4)
    assert not lambda_binomial_check([x ** n + 1 for n in range(5)], 0)
    # the monomials are not of lambda-binomial type for lambda != 0
    assert not lambda_binomial_check([x ** n for n in range(5)], L)


def test_lambda_binomial_needs_all_entries():
    with pytest.raises(ValueError):
        lambda_binomial_check([x ** n for n in range(3)], 0, 3)
