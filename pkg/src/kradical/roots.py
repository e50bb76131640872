"""Certified polynomial root enclosures.

Approximations come from numpy's companion eigenvalues, are refined by
Aberth-Ehrlich iteration at the working precision, and are then certified
with the Weierstrass inclusion disks

    D_i = D(z_i, n * |p(z_i) / (lc * prod_{j != i} (z_i - z_j))|).

The union of the disks holds every root and a connected component made of
``m`` disks holds exactly ``m`` roots (counted with multiplicity).  All radii
are computed in ball arithmetic, so the enclosures are rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from flint import acb, acb_poly, arb, ctx

from .errors import PrecisionInsufficient
from .poly import Poly, squarefree_decomposition


@dataclass(frozen=True)
class RootCluster:
    ball: acb
    multiplicity: int

    @property
    def center(self) -> complex:
        return complex(self.ball.mid())

    def contains(self, other: "RootCluster | acb") -> bool:
        b = other.ball if isinstance(other, RootCluster) else other
        return self.ball.contains(b)


def disk(center: acb, radius: arb) -> acb:
    """Box enclosing the disk of the given center and radius."""
    r = radius.upper() if isinstance(radius, arb) else arb(radius)
    c = center.mid()
    return acb(arb(c.real.mid(), r), arb(c.imag.mid(), r))


def _initial_guesses(coeffs: list[acb]) -> list[acb]:
    n = len(coeffs) - 1
    lead = complex(coeffs[-1].mid())
    # numpy wants descending, scaled coefficients
    c = np.array([complex(x.mid()) / lead for x in reversed(coeffs)], dtype=complex)
    if not np.all(np.isfinite(c)):
        c = None
    guesses = []
    if c is not None:
        with np.errstate(all="ignore"):
            try:
                guesses = list(np.roots(c))
            except np.linalg.LinAlgError:
                guesses = []
    if len(guesses) != n or not all(np.isfinite(guesses)):
        bound = max(abs(complex(x.mid()) / lead) ** (1.0 / (n - k)) for k, x in enumerate(coeffs[:-1]))
        bound = 2 * bound if bound > 0 else 1.0
        guesses = [bound * np.exp(2j * np.pi * (k + 0.25) / n) for k in range(n)]
    # Aberth needs pairwise distinct starting points
    scale = max(1.0, max(abs(g) for g in guesses))
    out: list[complex] = []
    for k, g in enumerate(guesses):
        while any(abs(g - h) <= 1e-12 * scale for h in out):
            g = g + 1e-9 * scale * np.exp(1j * (0.7 + 2.1 * k))
        out.append(complex(g))
    return [acb(g) for g in out]


def aberth(coeffs: list[acb], prec: int, start: list[acb] | None = None, max_iter: int | None = None) -> list[acb]:
    """Aberth-Ehrlich iteration on midpoints; returns exact-point approximations."""
    n = len(coeffs) - 1
    if n < 1:
        return []
    with ctx.workprec(prec):
        cs = [c.mid() for c in coeffs]
        p = acb_poly(cs)
        dp = p.derivative()
        z = [acb(s.mid()) for s in (start or _initial_guesses(cs))]
        if n == 1:
            return [(-cs[0] / cs[1]).mid()]
        tol = arb(2) ** (-(prec - 8))
        max_iter = max_iter or (100 + 8 * prec)
        for _ in range(max_iter):
            worst = arb(0)
            for i in range(n):
                zi = z[i]
                pv = p(zi)
                if pv.is_zero():
                    continue
                ratio = pv / dp(zi)
                s = acb(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - z[j])
                step = (ratio / (1 - ratio * s)).mid()
                if not step.is_finite():
                    continue
                z[i] = (zi - step).mid()
                rel = abs(step).mid() / max(arb(1), abs(z[i]).mid())
                if rel > worst:
                    worst = rel
            if worst < tol:
                break
        return z


def inclusion_radii(coeffs: list[acb], approx: list[acb], prec: int) -> list[arb]:
    """Upper bounds ``n * |W_i|`` of the Weierstrass inclusion radii."""
    n = len(coeffs) - 1
    with ctx.workprec(prec):
        p = acb_poly(coeffs)
        lead = coeffs[-1]
        radii = []
        for i, zi in enumerate(approx):
            den = lead
            for j, zj in enumerate(approx):
                if j != i:
                    den = den * (zi - zj)
            w = p(zi) / den
            radii.append(arb((n * abs(w)).upper()))
        return radii


def _components(approx: list[acb], radii: list[arb]) -> list[list[int]]:
    n = len(approx)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if not (abs(approx[i] - approx[j]) > radii[i] + radii[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _hull(boxes: list[acb]) -> acb:
    out = boxes[0]
    for b in boxes[1:]:
        out = out.union(b)
    return out


def certified_roots_numeric(coeffs: list[acb], prec: int) -> list[RootCluster]:
    """Root clusters of a polynomial given by ball coefficients.

    Components whose enclosures lie within ``2**(-prec/4)`` of each other
    are merged into one cluster; the multiplicity is the number of disks.
    """
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if coeffs[-1].contains(0):
        raise PrecisionInsufficient("leading coefficient not certified nonzero", 2 * prec)
    with ctx.workprec(prec):
        approx = aberth(coeffs, prec)
        radii = inclusion_radii(coeffs, approx, prec)
        comps = _components(approx, radii)
        boxes = [_hull([disk(approx[i], radii[i]) for i in comp]) for comp in comps]
        counts = [len(c) for c in comps]
        merge_gap = arb(2) ** (-(prec // 4))
        merged = True
        while merged:
            merged = False
            for a in range(len(boxes)):
                for b in range(a + 1, len(boxes)):
                    gap = _box_gap(boxes[a], boxes[b])
                    scale = max(arb(1), abs(boxes[a].mid()))
                    if gap < merge_gap * scale:
                        boxes[a] = boxes[a].union(boxes[b])
                        counts[a] += counts[b]
                        del boxes[b], counts[b]
                        merged = True
                        break
                if merged:
                    break
        for box, m in zip(boxes, counts):
            if m > 1:
                width = box.rad()
                if not (width < arb(2) ** (-(prec // 8)) * max(arb(1), abs(box.mid()))):
                    raise PrecisionInsufficient("root cluster too wide to decide multiplicity", 2 * prec)
        return _ordered([RootCluster(b, m) for b, m in zip(boxes, counts)])


def _box_gap(a: acb, b: acb) -> arb:
    """Upper-bound-ish distance between two boxes (0 when they overlap)."""
    if a.overlaps(b):
        return arb(0)
    d = abs(a.mid() - b.mid()) - a.rad() - b.rad()
    return max(arb(0), d)


def _ordered(clusters: list[RootCluster]) -> list[RootCluster]:
    return sorted(clusters, key=lambda c: (round(c.center.real, 12), round(c.center.imag, 12)))


def roots(p: Poly, precision: int = 256) -> list[RootCluster]:
    """Certified root enclosures of ``p`` with multiplicities.

    Exact inputs are split by squarefree decomposition so multiplicities are
    exact; numeric-only inputs use cluster detection.  Raises
    :class:`PrecisionInsufficient` when certification fails.
    """
    if p.degree < 1:
        raise ValueError("roots needs degree >= 1")
    if not p.is_exact:
        return certified_roots_numeric(p.coeffs_acb(precision), precision)
    out: list[RootCluster] = []
    for f, m in squarefree_decomposition(p):
        clusters = certified_roots_numeric(f.coeffs_acb(precision), precision)
        if any(c.multiplicity != 1 for c in clusters):
            raise PrecisionInsufficient("squarefree factor has unresolved roots", 2 * precision)
        out.extend(RootCluster(c.ball, m) for c in clusters)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if out[i].ball.overlaps(out[j].ball):
                raise PrecisionInsufficient("root enclosures of coprime factors overlap", 2 * precision)
    return _ordered(out)
