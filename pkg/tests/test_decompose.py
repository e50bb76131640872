import random
from collections import Counter
from fractions import Fraction

import pytest

from conftest import random_rational_poly
from oracles import small_decomposition_degrees
from kradical.decompose import decompose_full, is_decomposable, kozen_landau_candidate
from kradical.families import fixture
from kradical.poly import Poly, chebyshev, compose, power


def test_power_witness():
    g, h = is_decomposable(power(6))
    assert g.compose(h) == power(6)
    assert {g.degree, h.degree} == {2, 3}


def test_deg6_fixture_indecomposable():
    assert is_decomposable(fixture("deg6").poly) is None


def test_chebyshev_6():
    g, h = is_decomposable(chebyshev(6))
    assert g.compose(h) == chebyshev(6)
    assert sorted((g.degree, h.degree)) == [2, 3]


def test_chain_fixture_over_square():
    p = compose(fixture("deg6").poly, power(2))
    chain = decompose_full(p)
    assert chain.degrees == [6, 2]
    assert chain.recompose() == p


def test_prime_degree_chain():
    assert decompose_full(power(5)).degrees == [5]


def test_chebyshev_12():
    chain = decompose_full(chebyshev(12))
    assert sorted(chain.degrees) == [2, 2, 3]
    assert chain.recompose() == chebyshev(12)


def test_smallest_inner_degree_first():
    g, h = is_decomposable(power(12))
    assert h.degree == 2


def test_quadratic_field_fixture():
    p = fixture("deg8-plus").poly
    assert is_decomposable(p) is None
    q = compose(Poly([1, 0, 1]), p)
    assert decompose_full(q).degrees == [2, 8]


def test_numeric_only_input():
    p = compose(power(3), Poly([1, 1, 1]))
    num = Poly.numeric(lambda prec: p.coeffs_acb(prec))
    chain = decompose_full(num)
    assert sorted(chain.degrees) == [2, 3]


def _oracle_degrees(p):
    return small_decomposition_degrees(p.exact)


def test_random_composed_pairs(rng):
    # the degree multiset of a complete decomposition is invariant, so it is the
    # union of the parts' multisets; the parts are checked by closed-form conditions
    for _ in range(200):
        g = random_rational_poly(rng, rng.randint(2, 6))
        h = random_rational_poly(rng, rng.randint(2, 6))
        p = compose(g, h)
        chain = decompose_full(p)
        assert chain.recompose() == p
        assert Counter(chain.degrees) == Counter(_oracle_degrees(g) + _oracle_degrees(h))


def test_witness_is_exact(rng):
    for _ in range(20):
        g = random_rational_poly(rng, rng.randint(2, 4))
        h = random_rational_poly(rng, rng.randint(2, 4))
        gg, hh = is_decomposable(compose(g, h))
        assert gg.compose(hh) == compose(g, h)


def test_closed_form_oracle_sees_decomposable_parts():
    assert small_decomposition_degrees(compose(Poly([1, 2, 3]), Poly([0, 5, 1])).exact) == [2, 2]
    assert small_decomposition_degrees(compose(Poly([1, 2, 3]), Poly([4, 1, 0, 2])).exact) == [2, 3]
    assert small_decomposition_degrees(compose(Poly([1, 2, 1, 3]), Poly([4, 1, 2])).exact) == [2, 3]
    assert small_decomposition_degrees(fixture("deg6").poly.exact) == [6]
    for n in (4, 6):
        assert sorted(decompose_full(chebyshev(n)).degrees) == small_decomposition_degrees(chebyshev(n).exact)


def test_random_low_degree_agrees_with_oracle(rng):
    hits = 0
    for _ in range(100):
        n = rng.choice((4, 6))
        if rng.random() < 0.5:
            r = rng.choice([d for d in (2, 3) if n % d == 0])
            p = compose(random_rational_poly(rng, n // r), random_rational_poly(rng, r))
        else:
            p = random_rational_poly(rng, n)
        want = small_decomposition_degrees(p.exact)
        hits += want != [n]
        assert sorted(decompose_full(p).degrees) == want
    assert hits > 20
