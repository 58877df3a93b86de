import random
from itertools import chain, combinations, permutations

import pytest
from hypothesis import given

from freebaxter.coeff import L, Poly, binom, parse_monomial, parse_poly
from freebaxter.freebax import (
    MixableShuffle,
    ShuffleElement,
    UnboundGenerator,
    WeightMismatch,
    baxter_P,
    classical_shuffle,
    enumerate_mixable_shuffles,
    lift,
    product,
    shuffle_plus,
)
from freebaxter.instances import MillerAlgebra, ShuffleAlgebra

from helpers import seeds, shuffle_pair


def W(*names):
    return tuple(parse_monomial(n) for n in names)


def brute_force_shuffles(m, n):
    """Every permutation of 1..m+n, filtered by the definitions, with every subset of admissible pairs."""
    out = set()
    for sigma in permutations(range(1, m + n + 1)):
        pos = {v: i for i, v in enumerate(sigma)}
        if [pos[v] for v in range(1, m + 1)] != sorted(pos[v] for v in range(1, m + 1)):
            continue
        if [pos[v] for v in range(m + 1, m + n + 1)] != sorted(pos[v] for v in range(m + 1, m + n + 1)):
            continue
        adm = [k for k in range(1, m + n) if sigma[k - 1] <= m < sigma[k]]
        for T in chain.from_iterable(combinations(adm, r) for r in range(len(adm) + 1)):
            out.add((sigma, T))
    return out


def test_enumerate_2_1():
    shuffles = enumerate_mixable_shuffles(2, 1)
    assert len(shuffles) == 5
    plain = {s.sigma: s.admissible_pairs() for s in shuffles if not s.merged}
    assert plain == {(1, 2, 3): [2], (1, 3, 2): [1], (3, 1, 2): []}


def test_enumerate_trivial_and_1_1():
    assert enumerate_mixable_shuffles(0, 0) == (MixableShuffle((), (), 0),)
    assert [(s.sigma, s.merged) for s in enumerate_mixable_shuffles(1, 1)] == [
        ((1, 2), ()),
        ((1, 2), (1,)),
        ((2, 1), ()),
    ]


@pytest.mark.parametrize("m", range(0, 4))
@pytest.mark.parametrize("n", range(0, 4))
def test_enumeration_matches_brute_force(m, n):
    got = [(s.sigma, s.merged) for s in enumerate_mixable_shuffles(m, n)]
    assert len(got) == len(set(got))
    assert set(got) == brute_force_shuffles(m, n)
    assert got == sorted(got)
    assert all(s.is_valid() for s in enumerate_mixable_shuffles(m, n))


@pytest.mark.parametrize("m", range(0, 6))
@pytest.mark.parametrize("n", range(0, 6))
def test_plain_shuffle_count(m, n):
    plain = [s for s in enumerate_mixable_shuffles(m, n) if not s.merged]
    assert len(plain) == binom(m + n, m)


def test_two_by_one_example():
    got = shuffle_plus(W("x1", "x2"), W("y1"))
    assert got == {
        W("x1", "x2", "y1"): 1,
        W("x1", "y1", "x2"): 1,
        W("y1", "x1", "x2"): 1,
        W("x1", "x2*y1"): L,
        W("x1*y1", "x2"): L,
    }


def test_small_shuffle_plus():
    one = W("1")
    assert shuffle_plus(one, one) == {W("1", "1"): 2, one: L}
    assert shuffle_plus(W("x1"), W("y1")) == {W("x1", "y1"): 1, W("y1", "x1"): 1, W("x1*y1"): L}


@pytest.mark.parametrize("seed", range(25))
def test_weight_zero_is_classical_shuffle(seed):
    rng = random.Random(seed)
    gen = lambda: tuple(parse_monomial(rng.choice(["x", "y", "z", "x*y", "1"])) for _ in range(rng.randint(1, 3)))
    u, v = gen(), gen()
    expected = {w: Poly.const(c) for w, c in classical_shuffle(u, v).items()}
    assert shuffle_plus(u, v, Poly()) == expected


def test_product_examples():
    x0, y0 = ShuffleElement.generator("x0"), ShuffleElement.generator("y0")
    assert x0 * y0 == ShuffleElement.from_word([parse_poly("x0*y0")])
    e1 = ShuffleElement.from_word([1, 1])
    assert e1 * e1 == ShuffleElement.from_word([1, 1, 1], 2) + ShuffleElement.from_word([1, 1], L)


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(4))
def test_product_of_units_formula(m, n):
    a = ShuffleElement.from_word([1] * (m + 1))
    b = ShuffleElement.from_word([1] * (n + 1))
    expected = ShuffleElement.zero()
    for k in range(min(m, n) + 1):
        c = binom(m + n - k, n) * binom(n, k)
        expected = expected + ShuffleElement.from_word([1] * (m + n + 1 - k), L**k * c)
    assert a * b == expected


def test_baxter_P_examples():
    w = ShuffleElement.parse("x1|x2")
    assert baxter_P(w) == ShuffleElement.parse("1|x1|x2")
    assert baxter_P(ShuffleElement.zero()) == ShuffleElement.zero()
    assert baxter_P(ShuffleElement.parse("x1").scale(2)) == ShuffleElement.parse("1|x1").scale(2)


def test_multilinear_canonical_form():
    a = ShuffleElement.parse("x+y|2*x")
    b = ShuffleElement.parse("x|x").scale(2) + ShuffleElement.parse("y|x").scale(2)
    assert a == b
    assert ShuffleElement.parse("x|0") == ShuffleElement.zero()
    # L is a scalar, not a generator
    assert ShuffleElement.parse("L*x|y") == ShuffleElement.parse("x|y").scale(L)


@given(seeds)
def test_baxter_identity(seed):
    u, v = shuffle_pair(seed)
    Pu, Pv = u.P(), v.P()
    assert Pu * Pv == (u * Pv).P() + (v * Pu).P() + (u * v).P().scale(L)


@given(seeds)
def test_commutative_and_associative(seed):
    u, v = shuffle_pair(seed)
    w, _ = shuffle_pair(seed + 1)
    assert u * v == v * u
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w


def test_one_is_unit():
    u, _ = shuffle_pair(3)
    assert ShuffleElement.one() * u == u


def test_weight_mismatch():
    with pytest.raises(WeightMismatch):
        ShuffleElement.one(L) * ShuffleElement.one(Poly.const(1))


def test_specialize():
    e1 = ShuffleElement.from_word([1, 1])
    assert (e1 * e1).specialize(0) == (e1.specialize(0) * e1.specialize(0))


def test_json_round_trip_and_order():
    u, v = shuffle_pair(11)
    p = u * v
    assert ShuffleElement.from_json(p.to_json()) == p
    keys = [(len(t["word"]), t["word"]) for t in p.to_json()]
    assert keys == sorted(keys)


# universal property ------------------------------------------------------


def _j(names):
    return {n: ShuffleElement.generator(n) for n in names}


@pytest.mark.parametrize("seed", range(10))
def test_lift_of_inclusion_is_identity(seed):
    u, v = shuffle_pair(seed)
    alg = ShuffleAlgebra()
    for a in (u, v, u * v):
        assert lift(_j(["x", "y"]), alg, a) == a


def test_lift_into_miller_sends_P1_to_t():
    alg = MillerAlgebra(0)
    phi = {"x": Poly.var("b")}
    assert lift(phi, alg, ShuffleElement.one().P()) == Poly.var("t")


@pytest.mark.parametrize("weight", [0, -1])
@pytest.mark.parametrize("seed", range(10))
def test_lift_is_a_baxter_homomorphism(weight, seed):
    alg = MillerAlgebra(weight)
    phi = {"x": Poly.var("t") + 1, "y": Poly.var("t") ** 2 - 2}
    u, v = shuffle_pair(seed, weight=weight)
    assert lift(phi, alg, u * v) == lift(phi, alg, u) * lift(phi, alg, v)
    assert lift(phi, alg, u.P()) == alg.P(lift(phi, alg, u))


def test_lift_restricts_to_phi():
    alg = MillerAlgebra(-1)
    phi = {"x": Poly.var("t") * 3, "y": Poly.const(5)}
    for name, image in phi.items():
        assert lift(phi, alg, ShuffleElement.generator(name, Poly.const(-1))) == image


def test_lift_errors():
    alg = MillerAlgebra(0)
    with pytest.raises(UnboundGenerator):
        lift({}, alg, ShuffleElement.generator("x", Poly()))
    with pytest.raises(WeightMismatch):
        lift({"x": Poly()}, alg, ShuffleElement.generator("x", Poly.const(1)))
