import math
import random
from fractions import Fraction

import pytest

from kradical.classifier import SPECIAL_GROUPS, GroupId, decide_k, identify, minimal_k, recognize_power_chebyshev, table_row
from kradical.errors import MalformedMonodromy, UnrecognizedGroup
from kradical.families import fixture
from kradical.monodromy import monodromy, passport
from kradical.permgroup import PermGroup, Permutation
from kradical.poly import Poly, chebyshev, compose, power
from kradical.projective import standard_group


def _cycle(n):
    return Permutation.from_cycles(n, [tuple(range(n))])


def _gid(tag, name, n, order):
    return GroupId(tag, name, n, order, True)


def test_table_rows_are_distinct_per_degree():
    assert len(SPECIAL_GROUPS) == 12
    for (n, order), row in SPECIAL_GROUPS.items():
        assert row.degree == n and row.order == order
        assert order not in (math.factorial(n), math.factorial(n) // 2)


def test_table_orders_match_constructed_groups():
    names = ["PGL(2,5)", "PGL(3,2)", "PGL(2,7)", "PΓL(2,8)", "PΓL(2,9)", "PGL(3,3)", "PGL(4,2)", "PΓL(3,4)", "PGL(5,2)"]
    for name in names:
        row = table_row(name)
        G = standard_group(name)
        assert (G.n, G.order()) == (row.degree, row.order)


def test_identify_symmetric_five():
    S5 = PermGroup([Permutation.from_cycles(5, [(0, 1)]), _cycle(5)])
    gid = identify(S5, full_cycle=_cycle(5))
    assert gid.tag == "Symmetric" and gid.name == "S5"
    assert minimal_k(gid) == 5


def test_identify_projective_cases():
    G = standard_group("PGL(2,5)")
    assert identify(G, full_cycle=_find_full_cycle(G)).name == "PGL(2,5)"
    G = standard_group("PΓL(2,9)")
    gid = identify(G, full_cycle=_find_full_cycle(G))
    assert gid.name == "PΓL(2,9)" and minimal_k(gid) == 6


def _find_full_cycle(G):
    for g in G.elements():
        if g.cycle_type() == (G.n,):
            return g
    raise AssertionError("no full cycle")


def test_identify_cyclic_and_dihedral():
    C7 = PermGroup([_cycle(7)])
    assert identify(C7).tag == "CyclicPrime"
    D7 = PermGroup([_cycle(7), Permutation([0, 6, 5, 4, 3, 2, 1])])
    gid = identify(D7, full_cycle=_cycle(7))
    assert gid.tag == "DihedralBetween" and gid.order == 14 and minimal_k(gid) == 1


def test_identify_alternating_odd():
    A7 = PermGroup([Permutation.from_cycles(7, [(0, 1, 2)]), _cycle(7)])
    gid = identify(A7, full_cycle=_cycle(7))
    assert gid.tag == "Alternating" and minimal_k(gid) == 7


def test_identify_rejects_intransitive():
    G = PermGroup([Permutation.from_cycles(4, [(0, 1)])])
    with pytest.raises(MalformedMonodromy):
        identify(G)


def test_imprimitive_is_unrecognized():
    rot = _cycle(6)
    G = PermGroup([rot, Permutation.from_cycles(6, [(1, 5), (2, 4)])])
    gid = identify(G, full_cycle=rot)
    assert not gid.recognized
    with pytest.raises(UnrecognizedGroup) as info:
        minimal_k(gid)
    assert info.value.evidence["order"] == 12


def test_minimal_k_values():
    assert minimal_k(_gid("Symmetric", "S3", 3, 6)) == 1
    assert minimal_k(_gid("Symmetric", "S4", 4, 24)) == 1
    assert minimal_k(_gid("Alternating", "A7", 7, 2520)) == 7
    expected = {"PGL(2,5)": 5, "PGL(3,2)": 7, "PGL(2,7)": 7, "PΓL(2,8)": 9, "PΓL(2,9)": 6, "PSL(2,11)": 11,
                "M11": 11, "PGL(3,3)": 13, "PGL(4,2)": 8, "PΓL(3,4)": 21, "M23": 23, "PGL(5,2)": 31}
    for row in SPECIAL_GROUPS.values():
        assert minimal_k(_gid(row.tag, row.name, row.degree, row.order)) == expected[row.name]


def test_table_lookup_names():
    assert table_row("PGammaL(2,9)").order == 1440
    assert table_row("PGL(4, 2)").min_k == 8
    assert table_row("PGL(9,9)") is None


def test_power_recognition_under_affine_conjugation():
    p = compose(Poly([5, Fraction(1, 3)]), power(7), Poly([1, 3]))
    assert recognize_power_chebyshev(p, monodromy(p)) == "Power(7)"


def test_chebyshev_recognition():
    assert recognize_power_chebyshev(chebyshev(5), monodromy(chebyshev(5))) == "Chebyshev(5)"
    p = fixture("deg6").poly
    assert recognize_power_chebyshev(p, monodromy(p)) is None


def test_decide_k_deg6():
    cert = decide_k(fixture("deg6").poly)
    assert cert.overall_k == 5 and cert.degrees == [6]


def test_decide_k_deg10_over_cube():
    cert = decide_k(compose(fixture("deg10").poly, power(3)))
    assert cert.overall_k == 6
    assert cert.degrees == [10, 3]
    assert [f.k_factor for f in cert.factors] == [6, 1]


def test_decide_k_power_nine():
    cert = decide_k(power(9))
    assert cert.overall_k == 1 and cert.degrees == [3, 3]


def test_decide_k_linear():
    cert = decide_k(Poly([1, 2]))
    assert cert.overall_k == 1


def test_factor_k_never_exceeds_degree():
    cert = decide_k(Poly([1, 2, 0, 0, 0, 1]))
    rec = cert.factors[0]
    assert rec.group.name == "S5" and rec.k_factor == 5


def test_affine_invariance():
    rng = random.Random(11)
    for fid in ("deg6", "deg8-plus"):
        p = fixture(fid).poly
        base = decide_k(p)
        for _ in range(5):
            A = Poly([Fraction(rng.randint(-5, 5)), Fraction(rng.choice([1, -2, 3]), rng.choice([1, 2]))])
            B = Poly([Fraction(rng.randint(-5, 5)), Fraction(rng.choice([1, -1, 2]))])
            cert = decide_k(compose(A, p, B))
            assert cert.overall_k == base.overall_k
            assert sorted(f.group.name for f in cert.factors if f.group) == sorted(f.group.name for f in base.factors if f.group)


def test_exceptional_k_below_degree():
    for fid, degree, k in (("deg6", 6, 5), ("deg10", 10, 6), ("deg8-plus", 8, 7)):
        cert = decide_k(fixture(fid).poly)
        assert cert.overall_k == k < degree
