"""Exceptional polynomials with non-solvable primitive monodromy, and checks on them.

Fixture ids: ``deg6``, ``deg10``, ``deg8-plus``, ``deg8-minus`` and
``deg15`` (with a parameter ``t != 0`` and a choice of root ``a`` of
``a^2 - a + 4``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from flint import ctx

from .classifier import KCertificate, decide_k
from .decompose import is_decomposable
from .permgroup import format_cycle_type, parse_cycle_type
from .poly import Poly, squarefree_decomposition
from .quadratic import QNumber

FIXTURE_IDS = ("deg6", "deg10", "deg8-plus", "deg8-minus", "deg15")
DEG15_RUNS = ((1, Fraction(1)), (-1, Fraction(1)), (1, Fraction(75, 4)), (-1, Fraction(75, 4)))


@dataclass(frozen=True)
class Fixture:
    id: str
    poly: Poly
    degree: int
    passport: tuple[tuple[int, ...], ...] | None
    order: int
    group: str
    minimal_k: int
    critical_values: tuple[QNumber, ...] | None = None
    params: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if not self.params:
            return self.id
        root = "+" if self.params["root"] > 0 else "-"
        return f"{self.id}(a{root}, t={self.params['t']})"


def _q(x) -> QNumber:
    return QNumber.coerce(x) if not isinstance(x, QNumber) else x


def _pp(*texts: str) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((parse_cycle_type(t) for t in texts), reverse=True))


def deg15_a(root: int = 1) -> QNumber:
    """``a = (1 +- sqrt(-15))/2``, a root of ``a^2 - a + 4``."""
    return QNumber(Fraction(1, 2), Fraction(root, 2), -15)


def deg15_coefficients(a: QNumber, t) -> list[QNumber]:
    """Coefficients of ``g_t^a``, constant term first."""
    t = _q(Fraction(t))
    one = QNumber(1)

    def c(*xs):
        return sum((_q(x) for x in xs[1:]), _q(xs[0]))

    top = {
        15: one / 15,
        14: QNumber(0),
        13: (a - 1) * t,
        12: (a + 7) * t,
        11: -(a * 5 + 21) * t**2,
        10: (a * 37 - 71) * t**2 * 2,
        9: -(a * 261 - 349) * c(t * 151598, a * 141075, -109260) * t**2 / (3 * 151598),
        8: -(a * 649 + 703) * t**3,
        7: (a * 46 + 239) * c(t * 76579, a * 198260, -462560) * t**3 * 3 / 76579,
        6: -(a * 548 - 1939) * c(t * 259891, a * 106365, -26420) * t**3 * 4 / 259891,
        5: (a * 1945 - 1581) * c(t * 7278308, a * 14685825, -113700500) * t**4 * 3 / (5 * 7278308),
        4: (a * 3233 + 2051) * c(t * 877444, a * 1339725, -2162500) * t**4 * 3 / 877444,
        3: (a * 9 - 133) * c(t**2 * (3 * 16816), -(a * t * 162040), a * -320375, t * -1260960, 23500) * t**4 * 9 / 16816,
        2: (a * 403 - 1559) * c(t * (2 * 2554), a * 9165, -39620) * t**5 * 9 / 2554,
        1: -(a * 7 + 5) * c(t * 4, a * -75, -100) * c(t * 4, a * 5, -4) * t**5 * Fraction(135, 16),
        0: (a - 8) * (t - 16) * t**6 * 675,
    }
    return [top[k] for k in range(16)]


def fixture(fid: str, t=None, root: int = 1) -> Fixture:
    if fid == "deg6":
        p = Poly.monomial(4) * Poly([25, 6, 1])
        return Fixture(fid, p, 6, _pp("4^1 1^2", "2^2 1^2"), 120, "PGL(2,5)", 5,
                       (QNumber(0), QNumber(Fraction(-50000, 27))))
    if fid == "deg10":
        p = Poly([Fraction(-81, 500), 0, 1]) ** 4 * Poly([Fraction(189, 500), 1, 1])
        return Fixture(fid, p, 10, _pp("4^2 1^2", "2^3 1^4"), 1440, "PΓL(2,9)", 6,
                       (QNumber(0), QNumber(Fraction(2**4 * 3**12, 5**15))))
    if fid in ("deg8-plus", "deg8-minus"):
        s = 1 if fid == "deg8-plus" else -1
        a = QNumber(Fraction(25, 64), Fraction(22 * s, 64), 2)
        b = QNumber(Fraction(97, 64), Fraction(54 * s, 64), 2)
        p = Poly([a, 0, 1]) ** 3 * Poly([b, 1, 1])
        return Fixture(fid, p, 8, _pp("3^2 1^2", "2^3 1^2"), 336, "PGL(2,7)", 7, None)
    if fid == "deg15":
        t = Fraction(1) if t is None else Fraction(t)
        if t == 0:
            raise ValueError("the deg15 family is only defined for t != 0")
        if root not in (1, -1):
            raise ValueError("root must be +1 or -1")
        p = Poly(deg15_coefficients(deg15_a(root), t))
        expected = {Fraction(1): _pp("2^6 1^3", "2^4 1^7", "2^4 1^7"),
                    Fraction(75, 4): _pp("4^2 2^2 1^3", "2^6 1^3")}.get(t)
        return Fixture(fid, p, 15, expected, 20160, "PGL(4,2)", 8, None, {"t": t, "root": root})
    raise KeyError(f"unknown fixture id {fid!r}")


# --- replaying the eliminations ------------------------------------------------


@dataclass
class ReplayReport:
    family: str
    checks: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def _rem(p: Poly, q: Poly) -> list[QNumber]:
    r = p.divmod(q)[1]
    return list(r.exact) if not r.is_zero else []


def _rem_coeff(p: Poly, q: Poly, k: int) -> QNumber:
    r = _rem(p, q)
    return r[k] if k < len(r) else QNumber(0)


def _deg6(a, b) -> tuple[Poly, Poly]:
    p = Poly.monomial(4) * Poly([b, a, 1])
    q = Poly([4 * _q(b), 5 * _q(a), 6])
    return p, q


def _deg10(a, b) -> tuple[Poly, Poly]:
    a, b = _q(a), _q(b)
    p = Poly([-a, 0, 1]) ** 4 * Poly([b, 1, 1])
    q = Poly([-a, 8 * b - 2 * a, 9, 10])
    return p, q


def _deg8(a, b) -> tuple[Poly, Poly]:
    a, b = _q(a), _q(b)
    p = Poly([-a, 0, 1]) ** 3 * Poly([b, 1, 1])
    q = Poly([-a, 6 * b - 2 * a, 7, 8])
    return p, q


def _is_cube(q: Poly) -> bool:
    sq = squarefree_decomposition(q)
    return len(sq) == 1 and sq[0][1] == 3


def replay_elimination(family: str, grid: int = 4) -> ReplayReport:
    """Re-check the remainder computations behind the normal forms exactly."""
    checks: list[tuple[str, bool]] = []
    if family == "deg6":
        ok = True
        vals = [Fraction(k, 2) for k in range(-grid, grid + 1)]
        for a in vals:
            for b in vals:
                p, q = _deg6(a, b)
                if q.degree < 2:
                    continue
                want = a * (96 * b - 25 * a * a) * (36 * b - 25 * a * a) / 6**5
                ok &= _rem_coeff(p, q, 1) == QNumber(want)
        checks.append(("z-coefficient of rem(p, p'/z^3) is a(96b-25a^2)(36b-25a^2)/6^5 on the grid", ok))
        checks.append(("(a, b) = (6, 25) satisfies 36b = 25a^2", 36 * 25 == 25 * 6**2))
        p, q = _deg6(6, 25)
        r = _rem(p, q)
        checks.append(("remainder at (6, 25) is the constant -2^4 5^5 / 3^3",
                       len(r) == 1 and r[0] == QNumber(Fraction(-(2**4) * 5**5, 3**3))))
        p0, _ = _deg6(0, 3)
        w = is_decomposable(p0)
        checks.append(("a = 0 gives a composition with z^2", w is not None and w[1] == Poly([0, 0, 1])))
        _, q96 = _deg6(10, Fraction(25 * 100, 96))
        checks.append(("96b = 25a^2 makes 6z^2+5az+4b a square", len(squarefree_decomposition(q96)) == 1
                       and squarefree_decomposition(q96)[0][1] == 2))
    elif family == "deg10":
        p, q = _deg10(Fraction(81, 500), Fraction(189, 500))
        checks.append(("p' = (z^2-a)^3 q_3 at (81/500, 189/500)", p.derivative() == Poly([Fraction(-81, 500), 0, 1]) ** 3 * q))
        checks.append(("rem(p, q_3) is constant at (81/500, 189/500)", len(_rem(p, q)) <= 1))
        crit = _rem(p, q)[0]
        checks.append(("critical value 2^4 3^12 / 5^15", crit == QNumber(Fraction(2**4 * 3**12, 5**15))))
        p, q = _deg10(Fraction(-27, 100), Fraction(27, 100))
        checks.append(("a = -27/100 makes q_3 a complete cube", _is_cube(q)))
        checks.append(("rem(p, q_3) is constant at the cube point", len(_rem(p, q)) <= 1))
    elif family == "deg8":
        p, q = _deg8(Fraction(-343, 1728), Fraction(-343, 1728) / 3 + Fraction(49, 144))
        checks.append(("a = -343/1728 makes q_3 a complete cube", _is_cube(q)))
        for s in (1, -1):
            a = QNumber(Fraction(-25, 64), Fraction(22 * s, 64), 2)
            b = QNumber(Fraction(97, 64), Fraction(-54 * s, 64), 2)
            quad = a * a * 4096 + a * 3200 - 343
            checks.append((f"a = (-25{'+' if s > 0 else '-'}22 sqrt2)/64 solves 4096a^2+3200a-343", quad == QNumber(0)))
            p, q = _deg8(a, b)
            checks.append((f"rem(p, q_3) constant for the {'+' if s > 0 else '-'} branch", len(_rem(p, q)) <= 1))
            checks.append(("p' = (z^2-a)^2 q_3", p.derivative() == Poly([-a, 0, 1]) ** 2 * q))
    else:
        raise KeyError(f"unknown family {family!r}")
    return ReplayReport(family, checks)


# --- full verification -------------------------------------------------------------


@dataclass
class FixtureReport:
    fixture: Fixture
    checks: list[tuple[str, object, object, bool]]
    certificate: KCertificate | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c[3] for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        if self.error:
            return self.error
        for name, want, got, ok in self.checks:
            if not ok:
                return f"{name}: expected {want}, got {got}"
        return None


def verify_fixture(fid: str, t=None, root: int = 1, precision: int = 256, seed: int | None = None) -> FixtureReport:
    fx = fixture(fid, t, root)
    if fid == "deg15" and precision < 512:
        precision = 512
    checks: list[tuple[str, object, object, bool]] = []
    try:
        cert = decide_k(fx.poly, precision=precision, seed=seed)
    except Exception as err:  # reported, not raised: this is a verification harness
        return FixtureReport(fx, checks, None, f"{type(err).__name__}: {err}")

    def check(name, want, got):
        checks.append((name, want, got, want == got))

    check("factor degrees", [fx.degree], cert.degrees)
    rec = cert.factors[0]
    check("degree", fx.degree, rec.degree)
    if rec.group is not None:
        if fx.passport is not None:
            check("passport", [format_cycle_type(e) for e in fx.passport], rec.passport.text)
        check("primitive", True, rec.group.primitive)
        check("group order", fx.order, rec.group.order)
        check("group", fx.group, rec.group.name)
    check("minimal k", fx.minimal_k, cert.overall_k)
    if fx.critical_values is not None and rec.critical is not None:
        got = rec.critical.exact_values
        ok = len(got) == len(fx.critical_values) and all(
            any(g is not None and g == w for g in got) for w in fx.critical_values
        )
        with ctx.workprec(rec.precision):
            contained = all(any(v.contains(w.to_acb()) for v in rec.critical.values) for w in fx.critical_values)
        checks.append(("critical values", [str(w) for w in fx.critical_values],
                       [str(g) if g is not None else "ball" for g in got], ok and contained))
    return FixtureReport(fx, checks, cert)


def all_fixture_runs() -> list[tuple[str, object, int]]:
    runs: list[tuple[str, object, int]] = [(f, None, 1) for f in ("deg6", "deg10", "deg8-plus", "deg8-minus")]
    runs += [("deg15", t, root) for root, t in DEG15_RUNS]
    return runs
