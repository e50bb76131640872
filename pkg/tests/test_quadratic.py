from fractions import Fraction

import pytest
from flint import ctx
from hypothesis import given, strategies as st

from kradical.errors import IncompatibleRadicals
from kradical.quadratic import QNumber, squarefree_part

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)


def test_squarefree_part():
    assert squarefree_part(8) == (2, 2)
    assert squarefree_part(-15) == (1, -15)
    assert squarefree_part(36) == (6, 1)


def test_sqrt_normalizes():
    assert QNumber.sqrt(8) == QNumber(0, 2, 2)
    assert QNumber.sqrt(9) == 3
    assert QNumber.sqrt(2) * QNumber.sqrt(2) == 2
    assert QNumber.sqrt(-1) ** 2 == -1


def test_rational_embeds():
    assert QNumber(Fraction(1, 2)) == Fraction(1, 2)
    assert QNumber(3, 0, 5).is_rational
    assert hash(QNumber(3, 0, 5)) == hash(QNumber(3))


def test_incompatible_radicals():
    with pytest.raises(IncompatibleRadicals):
        QNumber.sqrt(2) + QNumber.sqrt(3)


def test_str_forms():
    assert str(QNumber(Fraction(25, 64), Fraction(22, 64), 2)) == "(25+22*sqrt(2))/64"
    assert str(QNumber(0, -1, 2)) == "-sqrt(2)"
    assert str(QNumber(Fraction(-50000, 27))) == "-50000/27"


def test_inverse_and_norm():
    a = QNumber(Fraction(1, 2), Fraction(1, 2), -15)
    assert a * a - a + 4 == 0
    assert a.norm() == 4
    assert a * a.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        QNumber(0).inverse()


def test_to_acb_encloses():
    x = QNumber(Fraction(97, 64), Fraction(54, 64), 2)
    with ctx.workprec(200):
        b = x.to_acb()
        assert b.real.contains(b.real.mid())
        assert abs(complex(b.mid()) - complex(x)) < 1e-12
        assert b.rad() < 2.0**-190


@given(rationals, rationals, rationals, rationals)
def test_field_laws(a, b, c, e):
    x, y = QNumber(a, b, 2), QNumber(c, e, 2)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    assert x - x == 0
    if y:
        assert (x / y) * y == x
    assert x.conjugate().conjugate() == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
