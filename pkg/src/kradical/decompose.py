"""Functional decomposition of polynomials (Kozen-Landau).

For a monic ``p`` of degree ``n = r*s`` a decomposition ``p = g(h)`` with
``deg h = r``, ``h`` monic and ``h(0) = 0`` is unique when it exists: ``h`` is
the polynomial part of ``p**(1/s)`` expanded at infinity.  The candidate is
then confirmed by expanding ``p`` in powers of ``h`` and recomposing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from flint import acb, acb_poly, arb, ctx

from .errors import PrecisionInsufficient
from .poly import Poly, compose
from .quadratic import QNumber


@dataclass(frozen=True)
class DecompositionChain:
    """``factors[0] o factors[1] o ... o factors[-1]`` equals the input."""

    factors: tuple[Poly, ...]
    original: Poly = field(repr=False)

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.factors]

    def recompose(self) -> Poly:
        return compose(*self.factors)

    def __len__(self):
        return len(self.factors)


def _divisors(n: int) -> list[int]:
    return [r for r in range(2, n) if n % r == 0]


def _root_series(p_rev: list, s: int, r: int, one, frac):
    """First ``r`` coefficients of ``p_rev ** (1/s)`` where ``p_rev[0] == 1``."""
    alpha1 = frac(1, s) + 1
    f = [one]
    for k in range(1, r):
        acc = 0 * one
        for j in range(1, k + 1):
            if j < len(p_rev):
                acc = acc + (alpha1 * j - k) * p_rev[j] * f[k - j]
        f.append(acc * frac(1, k))
    return f


def kozen_landau_candidate(p: Poly, r: int) -> Poly:
    """The unique monic ``h`` (``h(0) = 0``, degree ``r``) that could satisfy ``p = g(h)``."""
    n = p.degree
    s = n // r
    mon = p.monic()
    a = mon.exact
    p_rev = [a[n - j] for j in range(n + 1)]
    f = _root_series(p_rev, s, r, QNumber(1), lambda x, y: QNumber(Fraction(x, y)))
    coeffs = [QNumber(0)] * (r + 1)
    for k in range(r):
        coeffs[r - k] = f[k]
    return Poly(coeffs)


def _expand_in(p: Poly, h: Poly) -> list | None:
    """Coefficients ``g_i`` with ``p = sum g_i h**i`` when every remainder is constant."""
    out = []
    rem = p
    while not rem.is_zero:
        q, rr = rem.divmod(h)
        if rr.degree > 0:
            return None
        out.append(rr.exact[0] if not rr.is_zero else QNumber(0))
        rem = q
    return out


def _exact_witness(p: Poly) -> tuple[Poly, Poly] | None:
    n = p.degree
    lc = p.leading()
    mon = p.monic()
    for r in _divisors(n):
        h = kozen_landau_candidate(p, r)
        gc = _expand_in(mon, h)
        if gc is None or len(gc) != n // r + 1:
            continue
        g = Poly(gc) * lc
        if g.compose(h) == p:
            return g, h
    return None


# --- numeric-only path -------------------------------------------------------


def _ball_witness_coeffs(p: Poly, r: int, prec: int):
    """Ball coefficients of (g, h, residual) for divisor ``r`` at precision ``prec``."""
    n = p.degree
    s = n // r
    with ctx.workprec(prec):
        a = p.coeffs_acb(prec)
        lc = a[-1]
        mon = [c / lc for c in a]
        p_rev = [mon[n - j] for j in range(n + 1)]
        f = _root_series(p_rev, s, r, acb(1), lambda x, y: acb(x) / y)
        hc = [acb(0)] * (r + 1)
        for k in range(r):
            hc[r - k] = f[k]
        h = acb_poly(hc)
        rem = acb_poly(mon)
        gc = []
        residual = []
        for _ in range(s + 1):
            q, rr = divmod(rem, h)
            cs = rr.coeffs() or [acb(0)]
            gc.append(cs[0])
            residual.extend(cs[1:])
            rem = q
        residual.extend(rem.coeffs())
        g = acb_poly(gc)
        residual.extend((g(h) - acb_poly(mon)).coeffs())
        return [c * lc for c in gc], hc, residual, max(abs(c).upper() for c in a)


def _numeric_witness(p: Poly, prec: int) -> tuple[Poly, Poly] | None:
    ambiguous = False
    for r in _divisors(p.degree):
        with ctx.workprec(prec):
            _, _, residual, scale = _ball_witness_coeffs(p, r, prec)
            scale = max(arb(1), scale)
            small = arb(2) ** (-(prec // 2)) * scale
            large = arb(2) ** (-(prec // 8)) * scale
            if all(abs(c) < small for c in residual):
                src = p

                def g_src(pr, r=r):
                    return _ball_witness_coeffs(src, r, pr)[0]

                def h_src(pr, r=r):
                    return _ball_witness_coeffs(src, r, pr)[1]

                return Poly.numeric(g_src, check_prec=prec), Poly.numeric(h_src, check_prec=prec)
            if not any(abs(c) > large for c in residual):
                ambiguous = True
    if ambiguous:
        raise PrecisionInsufficient("decomposition test inconclusive", 2 * prec)
    return None


def is_decomposable(p: Poly, precision: int = 256) -> tuple[Poly, Poly] | None:
    """Witness ``(g, h)`` with ``g(h) = p`` and ``2 <= deg h < deg p``, or ``None``.

    Divisors ``r = deg h`` are tried in increasing order, so the returned
    inner factor has the smallest possible degree (and is indecomposable).
    """
    if p.degree < 2:
        raise ValueError("is_decomposable needs degree >= 2")
    if p.is_exact:
        return _exact_witness(p)
    return _numeric_witness(p, precision)


def decompose_full(p: Poly, precision: int = 256) -> DecompositionChain:
    """Split ``p`` into indecomposable factors, outermost first."""
    if p.degree < 1:
        raise ValueError("decompose_full needs degree >= 1")
    factors: list[Poly] = []
    cur = p
    while cur.degree >= 2:
        w = is_decomposable(cur, precision)
        if w is None:
            break
        cur, inner = w
        factors.append(inner)
    factors.append(cur)
    return DecompositionChain(tuple(reversed(factors)), p)
