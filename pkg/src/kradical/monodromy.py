"""Monodromy of ``p^{-1}(w)`` by certified path tracking.

Loops are spiders from a base point ``b`` far from the critical values:
a straight ray towards each critical value ``v``, a counterclockwise polygon
inscribed in a small circle around ``v``, and the ray back.  Each sheet is
followed with interval Newton (Krawczyk) certificates: over every step
``[w0, w1]`` each sheet gets a box ``Z`` with

    K = m - Y (p(m) - W) + (1 - Y p'(Z)) (Z - m)  strictly inside  Z

where ``W`` encloses the segment, so ``Z`` holds exactly one root for every
``w`` on it.  Boxes of different sheets are disjoint, and consecutive boxes
of one sheet must meet each other and nothing else, which carries the
labeling across the step.

Permutations map a sheet index at ``b`` to the index where the lifted loop
ends.  Products read left to right, so the big counterclockwise loop around
all critical values is ``local[o0] * local[o1] * ...`` in loop order and
the loop at infinity is its inverse.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from flint import acb, acb_poly, arb, ctx

from .errors import MalformedMonodromy, PrecisionInsufficient
from .permgroup import Permutation, format_cycle_type
from .poly import Poly, squarefree_decomposition
from .quadratic import QNumber
from .roots import certified_roots_numeric, roots

THETA_CANDIDATES = 64
LOCAL_POLYGON = 8
BIG_POLYGON = 32


@dataclass(frozen=True)
class CriticalData:
    """Critical values of ``p`` and the geometry of the loops around them."""

    degree: int
    values: tuple[acb, ...]
    exact_values: tuple[QNumber | None, ...]
    multiplicities: tuple[tuple[int, ...], ...]
    base_point: complex
    loop_order: tuple[int, ...]
    precision: int
    centroid: complex = 0j
    radius: float = 1.0
    theta: float = 0.0
    loop_radii: tuple[float, ...] = ()

    def expected_cycle_type(self, k: int) -> tuple[int, ...]:
        ms = self.multiplicities[k]
        return tuple(sorted(ms, reverse=True)) + (1,) * (self.degree - sum(ms))

    def ramification_budget(self) -> int:
        return sum(m - 1 for ms in self.multiplicities for m in ms)


@dataclass(frozen=True)
class MonodromyResult:
    degree: int
    fiber: tuple[acb, ...]
    local_perms: tuple[Permutation, ...]
    infinity_perm: Permutation
    loop_order: tuple[int, ...]
    big_loop_perm: Permutation | None = None

    def ordered_product(self) -> Permutation:
        out = Permutation.identity(self.degree)
        for k in self.loop_order:
            out = out * self.local_perms[k]
        return out

    def generators(self) -> list[Permutation]:
        return [g for g in self.local_perms if not g.is_identity()] or [Permutation.identity(self.degree)]


@dataclass(frozen=True)
class Passport:
    degree: int
    entries: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def text(self) -> list[str]:
        return [format_cycle_type(e) for e in self.entries]

    def __str__(self):
        return "[" + ", ".join(self.text) + "]"


# --- critical values ---------------------------------------------------------


@dataclass
class _CritPoint:
    point: acb
    order: int  # multiplicity as a root of p - p(c)
    value: acb
    exact: QNumber | None


def _critical_points(p: Poly, prec: int) -> list[_CritPoint]:
    dp = p.derivative()
    out = []
    with ctx.workprec(prec):
        P = p.acb_poly(prec)
        if p.is_exact:
            for f, m in squarefree_decomposition(dp):
                rem = p.divmod(f)[1] if f.degree >= 1 else None
                exact = None
                if rem is not None and rem.degree <= 0:
                    exact = rem.exact[0] if not rem.is_zero else QNumber(0)
                for c in roots(f, prec):
                    val = exact.to_acb() if exact is not None else P(c.ball)
                    out.append(_CritPoint(c.ball, m + 1, val, exact))
        else:
            for c in certified_roots_numeric(dp.coeffs_acb(prec), prec):
                out.append(_CritPoint(c.ball, c.multiplicity + 1, P(c.ball), None))
    return out


def _cluster_values(points: list[_CritPoint], prec: int) -> list[list[_CritPoint]]:
    """Group critical points by critical value.

    Exact values are compared exactly; ball values are merged when they
    overlap or lie within ``2^(-prec/4)`` (relative), and every pair of
    resulting groups must be certifiably separated.
    """
    groups: list[list[_CritPoint]] = []
    with ctx.workprec(prec):
        merge_tol = arb(2) ** (-(prec // 4))
        for cp in points:
            home = None
            for g in groups:
                rep = g[0]
                if cp.exact is not None and rep.exact is not None:
                    same = cp.exact == rep.exact
                else:
                    scale = max(arb(1), abs(rep.value.mid()))
                    same = cp.value.overlaps(rep.value) or abs(cp.value.mid() - rep.value.mid()) < merge_tol * scale
                if same:
                    home = g
                    break
            if home is None:
                groups.append([cp])
            else:
                home.append(cp)
        hulls = [_group_value(g) for g in groups]
        width = arb(2) ** (-(prec // 8))
        for h in hulls:
            if not (h.rad() < width * max(arb(1), abs(h.mid()))):
                raise PrecisionInsufficient("critical value cluster too wide", 2 * prec)
        max_rad = max((h.rad() for h in hulls), default=arb(0))
        for i in range(len(hulls)):
            for j in range(i + 1, len(hulls)):
                if not (abs(hulls[i].mid() - hulls[j].mid()) > 4 * max_rad):
                    raise PrecisionInsufficient("critical values not separated", 2 * prec)
    return groups


def _group_value(g: list[_CritPoint]) -> acb:
    for cp in g:
        if cp.exact is not None:
            return cp.value
    out = g[0].value
    for cp in g[1:]:
        out = out.union(cp.value)
    return out


def _segment_distance(x: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(x - a)
    t = max(0.0, min(1.0, ((x - a) * d.conjugate()).real / abs(d) ** 2))
    return abs(x - (a + t * d))


def _loop_radii(b: complex, vs: list[complex]) -> list[float]:
    out = []
    for k, v in enumerate(vs):
        d = abs(b - v)
        for j, u in enumerate(vs):
            if j != k:
                d = min(d, abs(v - u), _segment_distance(v, b, u))
        out.append(0.5 * d)
    return out


def _choose_geometry(vs: list[complex], seed: int | None):
    c0 = sum(vs) / len(vs)
    R = 2 * max(abs(v) for v in vs) + 1
    offset = 0.5 if seed is None else random.Random(seed).random()
    best = None
    for j in range(THETA_CANDIDATES):
        theta = 2 * math.pi * (j + offset) / THETA_CANDIDATES
        b = c0 + R * cmath.exp(1j * theta)
        radii = _loop_radii(b, vs)
        score = min(radii)
        if best is None or score > best[0]:
            best = (score, theta, b, radii)
    _, theta, b, radii = best
    return c0, R, theta, b, radii


def critical_data(p: Poly, precision: int = 256, seed: int | None = None) -> CriticalData:
    """Critical values with local multiplicities, base point and loop order."""
    n = p.degree
    if n < 1:
        raise ValueError("critical_data needs degree >= 1")
    if n == 1:
        return CriticalData(1, (), (), (), 0j, (), precision)
    groups = _cluster_values(_critical_points(p, precision), precision)
    with ctx.workprec(precision):
        items = []
        for g in groups:
            val = _group_value(g)
            exact = next((cp.exact for cp in g if cp.exact is not None), None)
            mults = tuple(sorted((cp.order for cp in g), reverse=True))
            items.append((val, exact, mults))
    items.sort(key=lambda it: (round(complex(it[0].mid()).real, 9), round(complex(it[0].mid()).imag, 9)))
    values = tuple(it[0] for it in items)
    budget = sum(m - 1 for it in items for m in it[2])
    if budget != n - 1:
        raise PrecisionInsufficient(f"ramification budget {budget} != {n - 1}", 2 * precision)
    vs = [complex(v.mid()) for v in values]
    c0, R, theta, b, radii = _choose_geometry(vs, seed)
    for v, r in zip(values, radii):
        if not (float(v.rad()) < r / 8) or r <= 0:
            raise PrecisionInsufficient("loop radius too small for the critical value enclosures", 2 * precision)
    order = sorted(range(len(vs)), key=lambda k: cmath.phase((vs[k] - b) / (c0 - b)))
    return CriticalData(
        degree=n,
        values=values,
        exact_values=tuple(it[1] for it in items),
        multiplicities=tuple(it[2] for it in items),
        base_point=b,
        loop_order=tuple(order),
        precision=precision,
        centroid=c0,
        radius=R,
        theta=theta,
        loop_radii=tuple(radii),
    )


# --- certified tracking ------------------------------------------------------


def _box(center: acb, rad: float) -> acb:
    r = arb(rad)
    return acb(arb(center.real.mid(), r), arb(center.imag.mid(), r))


class _Tracker:
    MAX_STEPS = 100000

    def __init__(self, p: Poly, prec: int):
        self.prec = prec
        self.n = p.degree
        with ctx.workprec(prec):
            self.P = p.acb_poly(prec)
            self.dP = self.P.derivative()
        self.floor = 2.0 ** (-(prec // 2))

    def _newton(self, z: acb, w: acb, iters: int = 2) -> acb:
        for _ in range(iters):
            z = (z - (self.P(z) - w) / self.dP(z)).mid()
        return z

    def _polish(self, z: acb, w: acb) -> acb:
        tol = arb(2) ** (-(self.prec - 16))
        for _ in range(4 * self.prec.bit_length()):
            step = ((self.P(z) - w) / self.dP(z)).mid()
            z = (z - step).mid()
            if abs(step) < tol * (1 + abs(z)):
                break
        return z

    def _certify(self, mids: list[acb], wm: acb, radW: float, prev):
        """Krawczyk boxes around ``mids`` valid for all ``|w - wm| <= sqrt(2) radW``.

        With Taylor coefficients ``t_k`` of ``p`` at ``m`` and ``|z - m| <= r``
        on the box, ``|K - m| <= |Y (t_0 - w)| + kappa r`` where
        ``kappa = |1 - Y t_1| + |Y| sum_{k>=2} k |t_k| r^(k-1)``.  The box is
        accepted when this bound is below its half-width.  Returns ``None``
        when a sheet fails or the boxes do not link to ``prev``.
        """
        n = self.n
        cs = [complex(m) for m in mids]
        sep = [min((abs(cs[i] - cs[j]) for j in range(n) if j != i), default=math.inf) for i in range(n)]
        boxes, rhos = [], []
        sqrt2 = arb(2).sqrt()
        wdisk = arb(radW) * sqrt2
        for i, m in enumerate(mids):
            t = self.P(acb_poly([m, 1])).coeffs()
            Y = (1 / t[1]).mid()
            if not Y.is_finite():
                return None
            aY = abs(Y)
            e0 = abs(Y * (t[0] - wm)) + aY * wdisk
            rho = 3 * float(e0.upper()) + self.floor * (1 + abs(cs[i]))
            if rho > sep[i] / 3:
                return None
            r = arb(rho) * sqrt2
            tail = arb(0)
            rk = arb(1)
            for k in range(2, len(t)):
                rk = rk * r
                tail += k * abs(t[k]) * rk
            kappa = abs(1 - Y * t[1]) + aY * tail
            if not (e0 + kappa * r < arb(rho)):
                return None
            boxes.append(_box(m, rho))
            rhos.append(rho)
        if prev is not None:
            pboxes, pcs, prhos = prev
            for i in range(n):
                if not pboxes[i].overlaps(boxes[i]):
                    return None
                for j in range(n):
                    if j != i and abs(pcs[i] - cs[j]) < 2 * (prhos[i] + rhos[j]) and pboxes[i].overlaps(boxes[j]):
                        return None
        return boxes, cs, rhos

    def track(self, start: list[acb], start_boxes, vertices: list[complex]):
        """Follow the fiber along the polygon ``vertices``; tiny end boxes are returned."""
        prec = self.prec
        with ctx.workprec(prec):
            z = list(start)
            prev = start_boxes
            h = None
            steps = 0
            for a, b in zip(vertices, vertices[1:]):
                wa, wb = acb(a), acb(b)
                L = abs(b - a)
                if L == 0:
                    continue
                t = 0.0
                wc = wa
                h = L if h is None else min(L, h)
                while t < 1.0:
                    steps += 1
                    if steps > self.MAX_STEPS:
                        raise PrecisionInsufficient("path tracking did not terminate", 2 * prec)
                    dt = min(h / L, 1.0 - t)
                    t1 = 1.0 if t + dt >= 1.0 else t + dt
                    wn = wb if t1 == 1.0 else (wa + (wb - wa) * t1).mid()
                    wm = ((wc + wn) / 2).mid()
                    radW = float(abs(wn - wc).upper()) / 2 * (1 + 2.0**-40) + 1e-300
                    mids = [self._newton((zi + (wm - wc) / self.dP(zi)).mid(), wm) for zi in z]
                    cert = self._certify(mids, wm, radW, prev)
                    if cert is None:
                        h = dt * L / 2
                        if h < self.floor ** 0.5 * (1 + abs(b)):
                            raise PrecisionInsufficient("path tracking step underflow", 2 * prec)
                        continue
                    prev = cert
                    z = [self._newton((m + (wn - wm) / self.dP(m)).mid(), wn) for m in mids]
                    wc = wn
                    t = t1
                    h = min(L, dt * L * 1.5)
            end = acb(vertices[-1])
            z = [self._polish(zi, end) for zi in z]
            final = self._certify(z, end, 0.0, prev)
            if final is None:
                raise PrecisionInsufficient("could not certify the fiber at the end of a path", 2 * prec)
            return z, final

    def start_fiber(self, w: complex):
        prec = self.prec
        with ctx.workprec(prec):
            coeffs = self.P.coeffs()
            coeffs = [coeffs[0] - acb(w)] + coeffs[1:]
            clusters = certified_roots_numeric(coeffs, prec)
            if any(c.multiplicity != 1 for c in clusters) or len(clusters) != self.n:
                raise PrecisionInsufficient("base fiber not certified simple", 2 * prec)
            mids = [self._polish(acb(c.ball.mid()), acb(w)) for c in clusters]
            final = self._certify(mids, acb(w), 0.0, None)
            if final is None:
                raise PrecisionInsufficient("could not certify the base fiber", 2 * prec)
            return mids, final


def _match(ends, starts) -> Permutation:
    """``i -> j`` where end box ``i`` meets start box ``j`` and no other."""
    eb, ecs, erh = ends
    sb, scs, srh = starts
    n = len(eb)
    images = []
    for i in range(n):
        hits = [j for j in range(n) if abs(ecs[i] - scs[j]) < 2 * (erh[i] + srh[j]) + 1e-300 and eb[i].overlaps(sb[j])]
        if len(hits) != 1:
            raise PrecisionInsufficient("ambiguous sheet matching at loop end", 0)
        images.append(hits[0])
    if sorted(images) != list(range(n)):
        raise PrecisionInsufficient("sheet matching is not a bijection", 0)
    return Permutation(images)


def _circle(center: complex, start: complex, sides: int) -> list[complex]:
    u = start - center
    pts = [start] + [center + u * cmath.exp(2j * math.pi * k / sides) for k in range(1, sides)] + [start]
    return pts


def monodromy(p: Poly, cd: CriticalData | None = None, precision: int | None = None, verify_infinity: bool = True) -> MonodromyResult:
    """Local monodromy permutations around every critical value of ``p``."""
    n = p.degree
    if cd is None:
        cd = critical_data(p, precision or 256)
    prec = precision or cd.precision
    if n == 1:
        with ctx.workprec(prec):
            fib = (acb(0),)
        return MonodromyResult(1, fib, (), Permutation.identity(1), (), Permutation.identity(1))
    tracker = _Tracker(p, prec)
    b = cd.base_point
    mids, base_boxes = tracker.start_fiber(b)
    local = []
    for k, v in enumerate(cd.values):
        vc = complex(v.mid())
        r = cd.loop_radii[k]
        u = (b - vc) / abs(b - vc)
        q = vc + r * u
        ray_mids, ray_end = tracker.track(mids, base_boxes, [b, q])
        _, circ_end = tracker.track(ray_mids, ray_end, _circle(vc, q, LOCAL_POLYGON))
        local.append(_match(circ_end, ray_end))
    infinity_big = None
    product = Permutation.identity(n)
    for k in cd.loop_order:
        product = product * local[k]
    if verify_infinity:
        far = cd.centroid + 2 * cd.radius * cmath.exp(1j * cd.theta)
        ray_mids, ray_end = tracker.track(mids, base_boxes, [b, far])
        _, circ_end = tracker.track(ray_mids, ray_end, _circle(cd.centroid, far, BIG_POLYGON))
        infinity_big = _match(circ_end, ray_end)
        if infinity_big != product:
            raise MalformedMonodromy("big loop disagrees with the ordered product of local loops")
    infinity = product.inverse()
    result = MonodromyResult(
        degree=n,
        fiber=tuple(box.mid() for box in base_boxes[0]),
        local_perms=tuple(local),
        infinity_perm=infinity,
        loop_order=cd.loop_order,
        big_loop_perm=infinity_big,
    )
    _validate(result, cd)
    return result


def _validate(mr: MonodromyResult, cd: CriticalData) -> None:
    n = mr.degree
    for k, g in enumerate(mr.local_perms):
        if g.cycle_type() != cd.expected_cycle_type(k):
            raise PrecisionInsufficient(
                f"local monodromy {format_cycle_type(g.cycle_type())} does not match the critical points above it",
                2 * cd.precision,
            )
    if mr.infinity_perm.cycle_type() != (n,):
        raise MalformedMonodromy("monodromy at infinity is not a full cycle")


def passport(mr: MonodromyResult) -> Passport:
    entries = [g.cycle_type() for g in mr.local_perms if not g.is_identity()]
    entries.sort(reverse=True)
    return Passport(mr.degree, tuple(entries))
