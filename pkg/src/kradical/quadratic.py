"""Exact arithmetic in quadratic fields Q(sqrt(d)).

A :class:`QNumber` is ``x + y*sqrt(d)`` with rational ``x, y`` and a
square-free integer ``d`` (negative ``d`` is allowed, so ``sqrt(-15)`` is
``i*sqrt(15)``).  Rationals carry ``d = 1`` and ``y = 0``.  Mixing two
different non-trivial radicals raises :class:`IncompatibleRadicals`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from flint import acb, arb, fmpq

from .errors import IncompatibleRadicals


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (sign kept in ``d``)."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    m = abs(n)
    s, d = 1, 1
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            s *= f
        if m % f == 0:
            m //= f
            d *= f
        f += 1
    d *= m
    return s, sign * d


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"expected a rational, got {type(v).__name__}")


class QNumber:
    __slots__ = ("x", "y", "d")

    def __init__(self, x=0, y=0, d: int = 1):
        x = _as_fraction(x)
        y = _as_fraction(y)
        if d == 1:
            x, y = x + y, Fraction(0)
        elif d == 0 or y == 0:
            y, d = Fraction(0), 1
        else:
            s, sf = squarefree_part(d)
            if sf == 1:
                x, y, d = x + y * s, Fraction(0), 1
            else:
                y, d = y * s, sf
        self.x = x
        self.y = y
        self.d = d

    @classmethod
    def sqrt(cls, n: int) -> "QNumber":
        s, d = squarefree_part(n)
        if d == 1:
            return cls(s)
        return cls(0, s, d)

    @classmethod
    def coerce(cls, v) -> "QNumber":
        if isinstance(v, QNumber):
            return v
        return cls(_as_fraction(v))

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def _common_d(self, other: "QNumber") -> int:
        if self.d == 1:
            return other.d
        if other.d == 1 or other.d == self.d:
            return self.d
        raise IncompatibleRadicals(self.d, other.d)

    def __add__(self, other):
        try:
            other = QNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        return QNumber(self.x + other.x, self.y + other.y, d)

    __radd__ = __add__

    def __neg__(self):
        return QNumber(-self.x, -self.y, self.d)

    def __sub__(self, other):
        try:
            other = QNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QNumber.coerce(other) - self

    def __mul__(self, other):
        try:
            other = QNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        return QNumber(
            self.x * other.x + self.y * other.y * d,
            self.x * other.y + self.y * other.x,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QNumber":
        """Galois conjugate ``x - y*sqrt(d)``."""
        return QNumber(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.y * self.y * self.d

    def inverse(self) -> "QNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QNumber division by zero")
        return QNumber(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other):
        try:
            other = QNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QNumber(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def __eq__(self, other):
        try:
            other = QNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if self.y == 0 and other.y == 0:
            return self.x == other.x
        return self.x == other.x and self.y == other.y and self.d == other.d

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def to_acb(self, prec: int | None = None) -> acb:
        """Enclosure of the value as a flint ball at the current context precision."""
        re = arb(fmpq(self.x.numerator, self.x.denominator))
        if self.y == 0:
            return acb(re)
        root = acb(self.d).sqrt()
        return acb(re) + acb(arb(fmpq(self.y.numerator, self.y.denominator))) * root

    def __complex__(self):
        if self.d < 0:
            return complex(float(self.x), float(self.y) * abs(self.d) ** 0.5)
        return complex(float(self.x) + float(self.y) * self.d ** 0.5)

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        rad = f"sqrt({self.d})"
        y = self.y
        den = (self.x.denominator * y.denominator) // _gcd(self.x.denominator, y.denominator)
        xn = self.x * den
        yn = y * den
        if yn == 1:
            ypart = rad
        elif yn == -1:
            ypart = "-" + rad
        else:
            ypart = f"{yn}*{rad}"
        if xn == 0:
            body = ypart
        else:
            body = f"{xn}+{ypart}" if yn > 0 else f"{xn}{ypart}"
        if den == 1:
            return body
        return f"({body})/{den}"

    def __repr__(self):
        return f"QNumber({self})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
