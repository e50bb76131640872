import random
from fractions import Fraction

import pytest
from flint import acb, arb, ctx

from kradical.families import (
    DEG15_RUNS,
    FIXTURE_IDS,
    all_fixture_runs,
    deg15_a,
    deg15_coefficients,
    fixture,
    replay_elimination,
    verify_fixture,
)
from kradical.monodromy import critical_data, monodromy
from kradical.permgroup import PermGroup
from kradical.poly import Poly
from kradical.projective import action_equivalence, paper_generators
from kradical.quadratic import QNumber


@pytest.mark.parametrize("family", ["deg6", "deg10", "deg8"])
def test_replay_elimination(family):
    rep = replay_elimination(family)
    assert rep.checks
    assert rep.passed, [name for name, ok in rep.checks if not ok]


def test_replay_unknown():
    with pytest.raises(KeyError):
        replay_elimination("deg7")


def test_deg8_quadratic_roots_match_surds():
    # quadratic formula on 4096 a^2 + 3200 a - 343 against (-25 +- 22 sqrt 2)/64
    with ctx.workprec(256):
        disc = arb(3200) ** 2 + 4 * 4096 * 343
        for s in (1, -1):
            formula = (-3200 + s * disc.sqrt()) / (2 * 4096)
            surd = (-25 + s * 22 * arb(2).sqrt()) / 64
            assert abs(formula - surd) < arb(10) ** -30


def test_deg6_expected_values():
    fx = fixture("deg6")
    assert fx.critical_values[1] == QNumber(Fraction(-(2**4) * 5**5, 3**3))
    assert fx.poly == Poly([0, 0, 0, 0, 25, 6, 1])


def test_deg8_sign_swap():
    plus, minus = fixture("deg8-plus").poly, fixture("deg8-minus").poly
    assert plus.conjugate_radical() == minus


def test_deg15_constant_term_and_a():
    for root in (1, -1):
        a = deg15_a(root)
        assert a * a - a + 4 == 0
        c = deg15_coefficients(a, 16)
        assert c[0] == 0  # the constant term carries a factor (t - 16)
        assert c[15] == QNumber(Fraction(1, 15)) and c[14] == 0


def test_deg15_rejects_t_zero():
    with pytest.raises(ValueError):
        fixture("deg15", 0)
    with pytest.raises(ValueError):
        fixture("deg15", 1, root=2)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("deg12")


def test_fixture_runs_cover_ids():
    runs = all_fixture_runs()
    assert len(runs) == 8
    assert {fid for fid, _, _ in runs} == set(FIXTURE_IDS)
    assert sum(1 for fid, _, _ in runs if fid == "deg15") == len(DEG15_RUNS)


@pytest.mark.parametrize("fid", ["deg6", "deg10", "deg8-plus", "deg8-minus"])
def test_verify_fixture(fid):
    rep = verify_fixture(fid)
    assert rep.passed, rep.first_failure
    assert rep.first_failure is None


def test_verify_reports_first_divergence():
    rep = verify_fixture("deg6")
    rep.checks.insert(0, ("group order", 121, 120, False))
    assert rep.first_failure == "group order: expected 121, got 120"


@pytest.mark.parametrize("fid,printed", [("deg8-plus", "deg8-second"), ("deg8-minus", "deg8-first")])
def test_deg8_monodromy_matches_printed_generators(fid, printed):
    mr = monodromy(fixture(fid).poly)
    ours = sorted(mr.generators(), key=lambda g: g.cycle_type())
    theirs = sorted(paper_generators(printed), key=lambda g: g.cycle_type())
    assert PermGroup(ours).order() == PermGroup(theirs).order() == 336
    assert [g.cycle_type() for g in ours] == [g.cycle_type() for g in theirs]
    assert action_equivalence(ours, theirs) is not None


def test_deg15_random_parameters():
    rng = random.Random(15)
    ts = set()
    while len(ts) < 5:
        t = Fraction(rng.randint(-40, 40), rng.randint(1, 6))
        if t:
            ts.add(t)
    for t in sorted(ts):
        for root in (1, -1):
            p = fixture("deg15", t, root).poly
            mr = monodromy(p, critical_data(p, 512))
            G = PermGroup(mr.generators())
            assert G.n == 15 and G.order() == 20160 and G.is_primitive()
