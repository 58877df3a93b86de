import random
from fractions import Fraction

import pytest
from hypothesis import given

from freebaxter.coeff import L, Poly, parse_poly
from freebaxter.freebax import ShuffleElement, WeightMismatch
from freebaxter.series import TruncSeries
from freebaxter.standard import (
    SequenceAlgebra,
    TruncSeq,
    alternating_power,
    elementary,
    generator_sequence,
    partial_sum_P,
    power_sum,
    spitzer_check,
    spitzer_sides,
    std_embed,
    waring_check,
)

from helpers import seeds, shuffle_pair

xs = [Poly.var(f"x{i}") for i in range(1, 8)]


def test_partial_sum_examples():
    assert partial_sum_P(TruncSeq.constant(1, 5), L) == TruncSeq([0, L, L * 2, L * 3, L * 4])
    assert partial_sum_P(TruncSeq.constant(0, 4), L) == TruncSeq.constant(0, 4)


@given(seeds)
def test_partial_sum_is_baxter(seed):
    alg = SequenceAlgebra(6)
    rng = random.Random(seed)
    a, b = alg.random_element(rng), alg.random_element(rng)
    P = alg.P
    assert P(a) * P(b) == P(a * P(b)) + P(b * P(a)) + P(a * b) * L


@pytest.mark.parametrize("n", range(4))
def test_alternating_power_entries_are_elementary(n):
    x = TruncSeq(xs[:6])
    r = alternating_power(lambda a: partial_sum_P(a, 1), x, n, TruncSeq.constant(1, 6))
    for m in range(1, 7):
        assert r.entries[m - 1] == elementary(n, xs[: m - 1])


def test_truncation_mismatch():
    with pytest.raises(ValueError):
        TruncSeq.constant(1, 3) + TruncSeq.constant(1, 4)
    with pytest.raises(ValueError):
        TruncSeq([])


def test_json_round_trip():
    s = TruncSeq([L, parse_poly("x - 1/2")])
    assert s.to_json() == {"trunc": 2, "entries": ["L", "x - 1/2"]}
    assert TruncSeq.from_json(s.to_json()) == s


# embedding ---------------------------------------------------------------


def test_embed_examples():
    x = ShuffleElement.generator("x", 1)
    assert std_embed(x, 4) == generator_sequence("x", 4)
    assert std_embed(ShuffleElement.one(1), 4) == TruncSeq.constant(1, 4)
    t1, t2, t3 = (Poly.var(f"t_x_{i}") for i in (1, 2, 3))
    assert std_embed(x.P(), 4) == TruncSeq([0, t1, t1 + t2, t1 + t2 + t3])
    assert std_embed(ShuffleElement.generator("x", 3).P(), 4, 3) == TruncSeq([0, t1 * 3, (t1 + t2) * 3, (t1 + t2 + t3) * 3])


def test_embed_rejects_zero_weight():
    with pytest.raises(ValueError):
        std_embed(ShuffleElement.one(0), 4, 0)
    with pytest.raises(ValueError):
        std_embed(ShuffleElement.one(), 4, L)
    with pytest.raises(WeightMismatch):
        std_embed(ShuffleElement.generator("x", 1), 4, 3)


@pytest.mark.parametrize("seed", range(20))
def test_embed_is_a_baxter_homomorphism(seed):
    u, v = shuffle_pair(seed, weight=1)
    eu, ev = std_embed(u, 8), std_embed(v, 8)
    assert std_embed(u * v, 8) == eu * ev
    assert std_embed(u.P(), 8) == partial_sum_P(eu, 1)


def rational_rank(rows):
    """Gaussian elimination over Q on dict-vectors."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        if not pivot_row:
            continue
        key, val = next(iter(pivot_row.items()))
        rank += 1
        new = []
        for r in rows:
            if key in r:
                f = r[key] / val
                r = {k: r.get(k, 0) - f * pivot_row.get(k, 0) for k in set(r) | set(pivot_row)}
                r = {k: v for k, v in r.items() if v}
            if r:
                new.append(r)
        rows = new
    return rank


def test_images_of_tensor_powers_are_independent():
    rows = []
    for k in range(1, 6):
        word = ShuffleElement.from_word([parse_poly("x")] * k, 1, 1)
        img = std_embed(word, 8)
        rows.append({(i, m): Fraction(c) for i, e in enumerate(img.entries) for m, c in e.items()})
    assert rational_rank(rows) == 5
    # sanity: the oracle sees dependence
    assert rational_rank(rows + [rows[0]]) == 5


# symmetric functions -------------------------------------------------------


def test_symmetric_examples():
    x1, x2, x3 = xs[:3]
    assert elementary(2, [x1, x2, x3]) == x1 * x2 + x1 * x3 + x2 * x3
    assert elementary(5, [x1, x2]) == Poly()
    assert elementary(0, []) == Poly.const(1)
    assert power_sum(2, [x1, x2]) == x1 ** 2 + x2 ** 2
    assert power_sum(0, [x1, x2]) == Poly.const(2)


@pytest.mark.parametrize("m,deg", [(1, 3), (3, 5), (2, 4), (4, 4)])
def test_waring(m, deg):
    assert waring_check(m, deg)


def test_waring_oracle_product_form():
    # sum e_n t^n is the product of (1 + x_i t)
    t = Poly.var("t")
    prod = Poly.const(1)
    for x in xs[:3]:
        prod = prod * (1 + x * t)
    for n in range(5):
        assert prod.coeff_in("t", n) == elementary(n, xs[:3])


# Spitzer ------------------------------------------------------------------


def test_spitzer_low_coefficients():
    lhs, rhs = spitzer_sides(3)
    one = ShuffleElement.one(1)
    assert lhs[0] == rhs[0] == one
    assert lhs[1] == rhs[1] == ShuffleElement.generator("b", 1).P()


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_spitzer(N):
    assert spitzer_check(N)


def test_spitzer_rejects_bad_order():
    with pytest.raises(ValueError):
        spitzer_check(0)


def test_spitzer_in_sequence_algebra_is_waring():
    """With b = (x1, x2, ...) in the sequence algebra, entry m of both sides is
    sum_n e_n(x1..x_{m-1}) t^n."""
    N, M = 4, 6
    one = TruncSeq.constant(1, M)
    b = TruncSeq(xs[:M])
    P = lambda a: partial_sum_P(a, 1)
    powers = [one]
    for _ in range(N):
        powers.append(powers[-1] * b)
    log_inv = TruncSeries([one * 0] + [powers[k] * Fraction((-1) ** k, k) for k in range(1, N + 1)], N)
    lhs = (-log_inv.map(P)).exp(one=one)
    rhs = TruncSeries([alternating_power(P, b, n, one) for n in range(N + 1)], N)
    assert lhs == rhs
    for m in range(1, M + 1):
        for n in range(N + 1):
            assert lhs[n].entries[m - 1] == elementary(n, xs[: m - 1])
