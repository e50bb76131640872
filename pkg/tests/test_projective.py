import itertools
import random

import pytest

from kradical.permgroup import PermGroup, Permutation
from kradical.projective import (
    action_equivalence,
    field,
    matrix_permutation,
    mobius,
    named_generators,
    paper_generators,
    projective_points,
    semilinear,
    standard_generators,
    standard_group,
)

QS = (2, 3, 4, 5, 7, 8, 9)


@pytest.mark.parametrize("q", QS)
def test_field_tables(q):
    F = field(q)
    els = range(q)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    g = F.generator
    assert len({F.power(g, k) for k in range(q - 1)}) == q - 1
    p = {4: 2, 8: 2, 9: 3}.get(q, q)
    assert all(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)) for a in els for b in els)
    assert all(F.power(a, p) == F.frob(a) for a in els)


def test_f9_imaginary_unit():
    F = field(9)
    i = F.element("i")
    assert F.mul(i, i) == F.element(-1) == 2
    assert F.frob(i) == F.neg(i)


def test_unsupported_field():
    with pytest.raises(ValueError):
        field(6)


def test_projective_line_labels():
    assert projective_points(2, 5) == tuple((x, 1) for x in range(5)) + ((1, 0),)


def test_p3f2_binary_order():
    pts = projective_points(4, 2)
    assert len(pts) == 15
    assert [sum(b << k for k, b in enumerate(v)) for v in pts] == list(range(1, 16))


def test_mobius_examples():
    assert mobius(0, 1, 1, 0, 5).cycle_type() == (2, 2, 1, 1)
    assert mobius(1, 0, 0, 1, 7) == Permutation.identity(8)
    assert semilinear("1+i", 0, 0, 1, True, 9).cycle_type() == (4, 4, 1, 1)
    assert mobius(1, 1, -1, "i", 9).cycle_type() == (10,)
    # x -> 1/x sends 0 to oo and oo to 0 on the labels [0, ..., q-1, oo]
    inv = mobius(0, 1, 1, 0, 5)
    assert inv(0) == 5 and inv(5) == 0 and inv(2) == 3


def test_singular_matrix():
    with pytest.raises(ValueError):
        mobius(1, 2, 2, 4, 5)


@pytest.mark.parametrize("q", (5, 7, 8, 9))
def test_mobius_homomorphism(q):
    F = field(q)
    rng = random.Random(q)

    def rand_matrix():
        while True:
            a, b, c, d = (rng.randrange(q) for _ in range(4))
            if F.sub(F.mul(a, d), F.mul(b, c)):
                return a, b, c, d

    for _ in range(100):
        a1, b1, c1, d1 = rand_matrix()
        a2, b2, c2, d2 = rand_matrix()
        # x -> M1(M2(x)) corresponds to the matrix product M1 M2
        prod = (
            F.add(F.mul(a1, a2), F.mul(b1, c2)), F.add(F.mul(a1, b2), F.mul(b1, d2)),
            F.add(F.mul(c1, a2), F.mul(d1, c2)), F.add(F.mul(c1, b2), F.mul(d1, d2)),
        )
        # left-to-right product: apply M2 first, then M1
        assert mobius(a2, b2, c2, d2, q) * mobius(a1, b1, c1, d1, q) == mobius(*prod, q)


def test_frobenius_twice_is_untwisted():
    F = field(9)
    for a, b, c, d in [("1+i", 0, 0, 1), ("i", "-1", 1, 1), (2, 1, 1, 0)]:
        s = semilinear(a, b, c, d, True, 9)
        sq = s * s
        untwisted = [PermGroup([mobius(*m, 9)]).generators[0] for m in itertools.product(range(9), repeat=4)
                     if F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2]))]
        assert sq in set(untwisted)


@pytest.mark.parametrize(
    "name,degree,order",
    [
        ("PGL(2,5)", 6, 120), ("PGL(2,7)", 8, 336), ("PSL(2,7)", 8, 168), ("PΓL(2,8)", 9, 1512),
        ("PSL(2,9)", 10, 360), ("PGL(2,9)", 10, 720), ("PΓL(2,9)", 10, 1440),
        ("PGL(3,2)", 7, 168), ("PGL(3,3)", 13, 5616), ("PSL(4,2)", 15, 20160), ("PΓL(3,4)", 21, 120960),
    ],
)
def test_standard_group_orders(name, degree, order):
    G = standard_group(name)
    assert G.n == degree
    assert G.order() == order
    assert G.is_transitive()


@pytest.mark.parametrize("name", ["PGL(2,5)", "PGL(2,7)", "PΓL(2,8)", "PΓL(2,9)"])
def test_projective_line_groups_3_transitive(name):
    G = standard_group(name)
    n = G.n
    # 3-transitive iff the order is divisible by n(n-1)(n-2) and the triple orbit is everything
    start = (0, 1, 2)
    seen = {start}
    frontier = [start]
    while frontier:
        t = frontier.pop()
        for g in G.generators:
            u = tuple(g(x) for x in t)
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    assert len(seen) == n * (n - 1) * (n - 2)


def test_pgl29_index_two_in_pgammal29():
    big = standard_group("PΓL(2,9)")
    small = standard_group("PGL(2,9)")
    assert big.order() == 2 * small.order()
    assert all(g in big for g in small.generators)


def test_psl42_points_vs_hyperplanes():
    pts = standard_generators("PSL", 4, 2, "points")
    hyp = standard_generators("PSL", 4, 2, "hyperplanes")
    assert PermGroup(pts).order() == PermGroup(hyp).order() == 20160
    assert action_equivalence(pts, hyp) is None
    assert action_equivalence(pts, pts) == Permutation.identity(15)


def test_hyperplane_action_needs_d3():
    with pytest.raises(ValueError):
        standard_group("PGL(2,5)", "hyperplanes")


def test_paper_generators():
    assert [m.text for m in named_generators("deg6")] == ["x -> 1/x", "x -> 2x+2"]
    orders = {fid: PermGroup(paper_generators(fid)).order() for fid in ("deg6", "deg10", "deg8-first", "deg8-second")}
    assert orders == {"deg6": 120, "deg10": 1440, "deg8-first": 336, "deg8-second": 336}
    with pytest.raises(KeyError):
        paper_generators("deg7")
