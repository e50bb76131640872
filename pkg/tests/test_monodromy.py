from fractions import Fraction

import pytest
from flint import ctx

from oracles import cycle_count
from kradical.errors import PrecisionInsufficient
from kradical.families import fixture
from kradical.monodromy import Passport, critical_data, monodromy, passport
from kradical.permgroup import PermGroup, Permutation
from kradical.poly import Poly, chebyshev, compose, power
from kradical.quadratic import QNumber


def _values(cd):
    return sorted(str(v) for v in cd.exact_values)


def test_deg6_critical_data():
    cd = critical_data(fixture("deg6").poly)
    assert _values(cd) == sorted(["0", "-50000/27"])
    by_value = dict(zip((str(v) for v in cd.exact_values), cd.multiplicities))
    assert sorted(by_value["0"]) == [4]
    assert sorted(by_value["-50000/27"]) == [2, 2]
    assert cd.ramification_budget() == 5


def test_deg10_critical_values():
    cd = critical_data(fixture("deg10").poly)
    assert {Fraction(str(v)) for v in cd.exact_values} == {Fraction(0), Fraction(2**4 * 3**12, 5**15)}


def test_cube_single_critical_value():
    cd = critical_data(power(3))
    assert [str(v) for v in cd.exact_values] == ["0"]
    assert cd.multiplicities == ((3,),)


def test_base_point_geometry():
    cd = critical_data(fixture("deg6").poly)
    max_abs = max(abs(complex(v.mid())) for v in cd.values)
    assert cd.radius == pytest.approx(2 * max_abs + 1)
    assert abs(cd.base_point - cd.centroid) == pytest.approx(cd.radius)
    for k, v in enumerate(cd.values):
        vc = complex(v.mid())
        assert cd.loop_radii[k] <= abs(cd.base_point - vc) / 2
        for j, w in enumerate(cd.values):
            if j != k:
                assert cd.loop_radii[k] <= abs(complex(w.mid()) - vc) / 2


def test_seed_moves_base_point():
    p = fixture("deg6").poly
    assert critical_data(p, seed=1).base_point != critical_data(p).base_point
    assert critical_data(p, seed=1).base_point == critical_data(p, seed=1).base_point


def test_deg6_monodromy():
    mr = monodromy(fixture("deg6").poly)
    assert sorted(g.cycle_type() for g in mr.local_perms) == [(2, 2, 1, 1), (4, 1, 1)]
    assert mr.infinity_perm.cycle_type() == (6,)
    assert PermGroup(mr.generators()).order() == 120
    assert str(passport(mr)) == "[4^1 1^2, 2^2 1^2]"


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_power_monodromy(n):
    mr = monodromy(power(n))
    assert len(mr.local_perms) == 1
    g = mr.local_perms[0]
    assert g.cycle_type() == (n,)
    assert g == mr.infinity_perm.inverse()


def test_square_passport():
    assert passport(monodromy(power(2))).text == ["2^1"]


def test_linear_degenerate():
    mr = monodromy(Poly([3, 2]))
    assert mr.local_perms == ()
    assert mr.infinity_perm == Permutation.identity(1)


def test_deg10_passport():
    mr = monodromy(fixture("deg10").poly)
    assert passport(mr).text == ["4^2 1^2", "2^3 1^4"]


@pytest.mark.parametrize("fid", ["deg8-plus", "deg8-minus"])
def test_deg8_passport(fid):
    assert passport(monodromy(fixture(fid).poly)).text == ["3^2 1^2", "2^3 1^2"]


def test_deg15_t_75_4_passport():
    p = fixture("deg15", Fraction(75, 4)).poly
    mr = monodromy(p, critical_data(p, 512))
    assert passport(mr).text == ["4^2 2^2 1^3", "2^6 1^3"]


def test_relations_on_chebyshev_and_composites():
    for p in (chebyshev(5), chebyshev(6), compose(power(2), Poly([1, -2, 0, 1]))):
        mr = monodromy(p)
        n = p.degree
        assert mr.ordered_product() * mr.infinity_perm == Permutation.identity(n)
        assert mr.big_loop_perm == mr.ordered_product()
        assert sum(n - cycle_count(g.images) for g in mr.local_perms) == n - 1


def test_coincident_critical_values_merge():
    # z^2 (z^2 - 2)^2: p' = 2z(z^2 - 2)(3z^2 - 2) is squarefree, so values come from
    # the numeric path; 0 and +-sqrt(2) all map to 0, +-sqrt(2/3) map to 32/27
    p = Poly([0, 0, 1]) * Poly([-2, 0, 1]) ** 2
    cd = critical_data(p)
    assert len(cd.values) == 2
    with ctx.workprec(cd.precision):
        zero = [k for k, v in enumerate(cd.values) if v.contains(0)]
        other = [k for k, v in enumerate(cd.values) if v.contains(QNumber(Fraction(32, 27)).to_acb())]
    assert len(zero) == 1 and len(other) == 1
    assert sorted(cd.multiplicities[zero[0]]) == [2, 2, 2]
    mr = monodromy(p, cd)
    assert mr.local_perms[zero[0]].cycle_type() == (2, 2, 2)
    assert mr.local_perms[other[0]].cycle_type() == (2, 2, 1, 1)


def test_quadratic_field_critical_values():
    p = fixture("deg8-plus").poly
    cd = critical_data(p)
    assert all(v is None or isinstance(v, QNumber) for v in cd.exact_values)
    assert cd.ramification_budget() == 7


def test_passport_text_order():
    pp = Passport(6, ((4, 1, 1), (2, 2, 1, 1)))
    assert str(pp) == "[4^1 1^2, 2^2 1^2]"
