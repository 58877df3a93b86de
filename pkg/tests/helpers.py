"""Shared strategies and random generators for the test suite."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from freebaxter.coeff import Poly
from freebaxter.instances import CartierAlgebra, ShuffleAlgebra

NAMES = ("x", "y", "L")


@st.composite
def polys(draw, names=NAMES, max_terms=4, max_deg=2):
    p = Poly()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
        m = Poly.const(c)
        for _ in range(draw(st.integers(0, max_deg))):
            m = m * Poly.var(draw(st.sampled_from(names)))
        p = p + m
    return p


seeds = st.integers(0, 10**6)


def shuffle_pair(seed, weight=None):
    alg = ShuffleAlgebra() if weight is None else ShuffleAlgebra(weight)
    rng = random.Random(seed)
    return alg.random_element(rng), alg.random_element(rng)


def cartier_pair(seed):
    alg = CartierAlgebra()
    rng = random.Random(seed)
    return alg.random_element(rng), alg.random_element(rng)
