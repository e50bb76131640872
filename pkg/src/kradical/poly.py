"""Univariate polynomials with exact Q(sqrt(d)) coefficients and ball images.

A :class:`Poly` is either *exact* (coefficients are :class:`QNumber`) or
*numeric-only*.  Exact polynomials produce flint ball coefficients at any
requested precision.  Numeric-only polynomials carry a source function
``prec -> list[acb]`` so they can be re-evaluated when precision is raised;
every operation on them composes sources lazily.
"""

from __future__ import annotations

from typing import Callable, Iterable

from flint import acb, acb_poly, ctx

from .errors import IncompatibleRadicals, PrecisionInsufficient
from .quadratic import QNumber

NumericSource = Callable[[int], list]


def _strip(coeffs: list[QNumber]) -> list[QNumber]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class Poly:
    """Polynomial in ``z`` with ascending coefficients.

    The zero polynomial (degree -1) only arises from arithmetic such as a
    vanishing remainder; constructing one directly requires ``allow_zero``.
    """

    __slots__ = ("_exact", "_source", "_degree", "_cache")

    def __init__(self, coeffs: Iterable = (), *, allow_zero: bool = False):
        exact = _strip([QNumber.coerce(c) for c in coeffs])
        if not exact and not allow_zero:
            raise ValueError("the zero polynomial is not a valid Poly")
        self._exact: tuple[QNumber, ...] | None = tuple(exact)
        self._source: NumericSource | None = None
        self._degree = len(exact) - 1
        self._cache: dict[int, list] = {}

    @classmethod
    def numeric(cls, source: NumericSource, *, check_prec: int = 128, allow_zero: bool = False) -> "Poly":
        """Numeric-only polynomial from a coefficient source.

        Trailing coefficients that are exactly zero balls are dropped; the
        leading coefficient must then be certified nonzero.
        """
        self = cls.__new__(cls)
        self._exact = None
        self._source = source
        self._cache = {}
        coeffs = self._coeffs_at(check_prec)
        n = len(coeffs)
        while n and coeffs[n - 1].is_zero():
            n -= 1
        if n == 0:
            if not allow_zero:
                raise ValueError("the zero polynomial is not a valid Poly")
        elif coeffs[n - 1].contains(0):
            raise PrecisionInsufficient("leading coefficient not certified nonzero", 2 * check_prec)
        self._degree = n - 1
        return self

    @classmethod
    def zero(cls) -> "Poly":
        return cls((), allow_zero=True)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    # --- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def is_exact(self) -> bool:
        return self._exact is not None

    @property
    def is_zero(self) -> bool:
        return self._degree < 0

    @property
    def exact(self) -> tuple[QNumber, ...]:
        if self._exact is None:
            raise ValueError("numeric-only polynomial has no exact coefficients")
        return self._exact

    @property
    def radical(self) -> int:
        """The square-free ``d`` of the coefficient field (1 for rational)."""
        for c in self.exact:
            if c.d != 1:
                return c.d
        return 1

    def leading(self) -> QNumber:
        return self.exact[-1]

    def _coeffs_at(self, prec: int) -> list:
        got = self._cache.get(prec)
        if got is None:
            with ctx.workprec(prec):
                if self._exact is not None:
                    got = [c.to_acb() for c in self._exact]
                else:
                    got = list(self._source(prec))
            self._cache[prec] = got
        return got

    def coeffs_acb(self, prec: int) -> list:
        """Ball enclosures of the coefficients (length ``degree + 1``)."""
        return self._coeffs_at(prec)[: self._degree + 1]

    def acb_poly(self, prec: int) -> acb_poly:
        with ctx.workprec(prec):
            return acb_poly(self.coeffs_acb(prec))

    def _numeric_source(self) -> NumericSource:
        if self._source is not None:
            deg = self._degree
            src = self._source
            return lambda prec: list(src(prec))[: deg + 1]
        exact = self._exact
        return lambda prec: [c.to_acb() for c in exact]

    # --- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        c = QNumber.coerce(other)
        return Poly([c], allow_zero=True)

    def _binary(self, other: "Poly", exact_op, ball_op) -> "Poly":
        if self.is_exact and other.is_exact:
            try:
                return Poly(exact_op(list(self._exact), list(other._exact)), allow_zero=True)
            except IncompatibleRadicals:
                pass
        a, b = self._numeric_source(), other._numeric_source()

        def source(prec):
            return ball_op(acb_poly(a(prec)), acb_poly(b(prec))).coeffs()

        return Poly.numeric(source, allow_zero=True)

    def __add__(self, other):
        other = Poly._coerce(other)

        def ex(a, b):
            n = max(len(a), len(b))
            a = a + [QNumber(0)] * (n - len(a))
            b = b + [QNumber(0)] * (n - len(b))
            return [x + y for x, y in zip(a, b)]

        return self._binary(other, ex, lambda x, y: x + y)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-Poly._coerce(other))

    def __rsub__(self, other):
        return Poly._coerce(other) - self

    def __mul__(self, other):
        other = Poly._coerce(other)

        def ex(a, b):
            if not a or not b:
                return []
            out = [QNumber(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return out

        return self._binary(other, ex, lambda x, y: x * y)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(z))``."""
        if self.is_exact and inner.is_exact:
            try:
                result = Poly.zero()
                for c in reversed(self._exact):
                    result = result * inner + c
                return result
            except IncompatibleRadicals:
                pass
        a, b = self._numeric_source(), inner._numeric_source()
        return Poly.numeric(lambda prec: acb_poly(a(prec))(acb_poly(b(prec))).coeffs(), allow_zero=True)

    def derivative(self) -> "Poly":
        if self.is_exact:
            return Poly([k * c for k, c in enumerate(self._exact)][1:], allow_zero=True)
        a = self._numeric_source()
        return Poly.numeric(lambda prec: acb_poly(a(prec)).derivative().coeffs(), allow_zero=True)

    def divmod(self, q: "Poly") -> tuple["Poly", "Poly"]:
        """Quotient and remainder with ``deg r < deg q``."""
        if q.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_exact and q.is_exact:
            try:
                return self._exact_divmod(q)
            except IncompatibleRadicals:
                pass
        a, b = self._numeric_source(), q._numeric_source()
        dq = q.degree

        def quo(prec):
            return divmod(acb_poly(a(prec)), acb_poly(b(prec)[: dq + 1]))[0].coeffs()

        def rem(prec):
            return divmod(acb_poly(a(prec)), acb_poly(b(prec)[: dq + 1]))[1].coeffs()

        return Poly.numeric(quo, allow_zero=True), Poly.numeric(rem, allow_zero=True)

    def _exact_divmod(self, q: "Poly") -> tuple["Poly", "Poly"]:
        r = list(self._exact)
        qc = q._exact
        dq = len(qc) - 1
        inv = qc[-1].inverse()
        if len(r) - 1 < dq:
            return Poly.zero(), Poly(r, allow_zero=True)
        s = [QNumber(0)] * (len(r) - dq)
        for k in range(len(r) - 1, dq - 1, -1):
            c = r[k] * inv
            s[k - dq] = c
            if c:
                for j in range(dq + 1):
                    r[k - dq + j] = r[k - dq + j] - c * qc[j]
        return Poly(s, allow_zero=True), Poly(r[:dq], allow_zero=True)

    def monic(self) -> "Poly":
        if self.is_exact:
            return self * self.leading().inverse()
        a = self._numeric_source()
        deg = self._degree
        return Poly.numeric(lambda prec: [c / a(prec)[deg] for c in a(prec)[: deg + 1]])

    def __call__(self, x):
        if isinstance(x, Poly):
            return self.compose(x)
        if isinstance(x, acb):
            return acb_poly(self.coeffs_acb(ctx.prec))(x)
        x = QNumber.coerce(x)
        result = QNumber(0)
        for c in reversed(self.exact):
            result = result * x + c
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly._coerce(other)
            except TypeError:
                return NotImplemented
        if not (self.is_exact and other.is_exact):
            return NotImplemented
        return self._exact == other._exact

    def __hash__(self):
        return hash(self._exact) if self.is_exact else id(self)

    def conjugate_radical(self) -> "Poly":
        """Apply ``sqrt(d) -> -sqrt(d)`` to every coefficient."""
        return Poly([c.conjugate() for c in self.exact], allow_zero=True)

    # --- presentation -----------------------------------------------------

    def coeff_strings(self, prec: int = 128) -> list[str]:
        if self.is_exact:
            return [str(c) for c in self._exact]
        with ctx.workprec(prec):
            return [c.mid().str(radius=False) for c in self.coeffs_acb(prec)]

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k, c in zip(range(self.degree, -1, -1), reversed(self.coeff_strings(64))):
            if c in ("0", "0.0"):
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(f"({c})")
            elif c == "1":
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        kind = "exact" if self.is_exact else "numeric"
        return f"Poly<{kind}, deg {self.degree}>({self})"


def derivative(p: Poly) -> Poly:
    return p.derivative()


def remainder(p: Poly, q: Poly) -> Poly:
    """Remainder of ``p`` modulo ``q``; exact when both inputs are exact."""
    if q.degree < 1:
        raise ValueError("divisor must have degree at least 1")
    return p.divmod(q)[1]


def compose(*polys: Poly) -> Poly:
    """``polys[0] o polys[1] o ... o polys[-1]``."""
    result = polys[-1]
    for outer in reversed(polys[:-1]):
        result = outer.compose(result)
    return result


def chebyshev(n: int) -> Poly:
    """Chebyshev polynomial ``T_n`` with ``T_n(cos t) = cos(n t)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    t0, t1 = Poly([1]), Poly.z()
    if n == 0:
        return t0
    for _ in range(n - 1):
        t0, t1 = t1, Poly([0, 2]) * t1 - t0
    return t1


def power(n: int) -> Poly:
    return Poly.monomial(n)


def affine(a, b) -> Poly:
    """``a*z + b``."""
    return Poly([b, a])


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the coefficient field (exact inputs only)."""
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    if a.is_zero:
        return a
    return a.monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lc * prod f_m^m`` with ``f_m`` squarefree, pairwise coprime.

    Returns ``[(f_m, m)]`` for the non-constant factors, ``m`` ascending.
    """
    if not p.is_exact:
        raise ValueError("squarefree decomposition needs exact coefficients")
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p.divmod(a)[0]
    c = dp.divmod(a)[0]
    d = c - b.derivative()
    m = 1
    while b.degree > 0:
        f = gcd(b, d)
        if f.degree > 0:
            out.append((f, m))
        b = b.divmod(f)[0]
        c = d.divmod(f)[0]
        d = c - b.derivative()
        m += 1
    return out


