"""Group identification and the minimal ``k`` for a polynomial.

A primitive polynomial's monodromy group is one of a short list of
permutation groups, and at each degree the possible groups have distinct
orders.  Identification therefore needs only the degree, the exact order
and primitivity; the passport is carried along as evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .decompose import decompose_full
from .errors import MalformedMonodromy, PrecisionInsufficient, UnrecognizedGroup
from .monodromy import CriticalData, MonodromyResult, Passport, critical_data, monodromy, passport
from .permgroup import Permutation, PermGroup
from .poly import Poly

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096


@dataclass(frozen=True)
class TableRow:
    name: str
    degree: int
    order: int
    min_k: int
    tag: str
    action: str = "natural"


# (degree, order) -> row; degree and order determine the group in this list
SPECIAL_GROUPS: dict[tuple[int, int], TableRow] = {
    (6, 120): TableRow("PGL(2,5)", 6, 120, 5, "PGL(d,p)"),
    (7, 168): TableRow("PGL(3,2)", 7, 168, 7, "PGL(d,p)", "points-or-hyperplanes"),
    (8, 336): TableRow("PGL(2,7)", 8, 336, 7, "PGL(d,p)"),
    (9, 1512): TableRow("PΓL(2,8)", 9, 1512, 9, "PΓL(d,q)"),
    (10, 1440): TableRow("PΓL(2,9)", 10, 1440, 6, "PΓL(d,q)"),
    (11, 660): TableRow("PSL(2,11)", 11, 660, 11, "PSL2_11"),
    (11, 7920): TableRow("M11", 11, 7920, 11, "M11"),
    (13, 5616): TableRow("PGL(3,3)", 13, 5616, 13, "PGL(d,p)", "points-or-hyperplanes"),
    (15, 20160): TableRow("PGL(4,2)", 15, 20160, 8, "PGL(d,p)", "points-or-hyperplanes"),
    (21, 120960): TableRow("PΓL(3,4)", 21, 120960, 21, "PΓL(d,q)", "points-or-hyperplanes"),
    (23, 10200960): TableRow("M23", 23, 10200960, 23, "M23"),
    (31, 9999360): TableRow("PGL(5,2)", 31, 9999360, 31, "PGL(d,p)", "points-or-hyperplanes"),
}


def table_row(name: str) -> TableRow | None:
    key = name.replace(" ", "").replace("PGammaL", "PΓL")
    for row in SPECIAL_GROUPS.values():
        if row.name == key:
            return row
    return None


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class GroupId:
    tag: str
    name: str
    degree: int
    order: int
    primitive: bool
    passport: tuple[str, ...] = ()
    action: str = "natural"

    @property
    def recognized(self) -> bool:
        return self.tag != "Unrecognized"

    @property
    def solvable(self) -> bool:
        return self.tag in ("CyclicPrime", "DihedralBetween") or (self.tag == "Symmetric" and self.degree <= 4)

    def evidence(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "primitive": self.primitive,
            "passport": list(self.passport),
        }


def identify(G: PermGroup, pp: Passport | None = None, full_cycle: Permutation | None = None) -> GroupId:
    """Look up ``(degree, |G|)`` in the classification list."""
    n = G.n
    text = tuple(pp.text) if pp is not None else ()
    if n > 1 and not G.is_transitive():
        raise MalformedMonodromy("monodromy group is not transitive")
    if full_cycle is None:
        full_cycle = Permutation.identity(n)
        for g in G.generators:
            full_cycle = full_cycle * g
    if full_cycle.cycle_type() != (n,) or full_cycle not in G:
        raise MalformedMonodromy("no full cycle found in the monodromy group")
    order = G.order()
    primitive = True if n < 2 else G.is_primitive()

    def gid(tag, name, action="natural"):
        return GroupId(tag, name, n, order, primitive, text, action)

    if not primitive:
        return gid("Unrecognized", "imprimitive")
    if order == math.factorial(n):
        return gid("Symmetric", f"S{n}")
    if _is_prime(n) and order == n:
        return gid("CyclicPrime", f"C{n}")
    if _is_prime(n) and order == 2 * n:
        return gid("DihedralBetween", f"D{n}")
    if n % 2 == 1 and n >= 3 and order == math.factorial(n) // 2:
        return gid("Alternating", f"A{n}")
    row = SPECIAL_GROUPS.get((n, order))
    if row is not None:
        return gid(row.tag, row.name, row.action)
    return gid("Unrecognized", f"order {order} on {n} points")


def minimal_k(gid: GroupId) -> int:
    """Smallest ``k`` for which the group is [k]-solvable."""
    if not gid.recognized:
        raise UnrecognizedGroup(f"no minimal k for an unrecognized group ({gid.name})", gid.evidence())
    if gid.solvable:
        return 1
    if gid.tag in ("Symmetric", "Alternating"):
        return gid.degree
    row = SPECIAL_GROUPS[(gid.degree, gid.order)]
    return row.min_k


def recognize_power_chebyshev(p: Poly, mr: MonodromyResult) -> str | None:
    """``"Power(n)"``, ``"Chebyshev(n)"`` or ``None`` from the monodromy alone."""
    n = p.degree
    if n < 2:
        return None
    pp = passport(mr)
    if len(pp.entries) == 1 and pp.entries[0] == (n,):
        return f"Power({n})"
    if len(pp.entries) == 2 and all(set(e) <= {1, 2} for e in pp.entries):
        if PermGroup(mr.generators()).order() == 2 * n:
            return f"Chebyshev({n})"
    return None


@dataclass
class FactorRecord:
    degree: int
    poly: Poly
    group: GroupId | None
    passport: Passport | None
    group_k: int
    k_factor: int
    precision: int
    critical: CriticalData | None = None
    monodromy: MonodromyResult | None = None
    special: str | None = None

    def coeff_strings(self) -> list[str]:
        return self.poly.coeff_strings()


@dataclass
class KCertificate:
    factors: list[FactorRecord]
    precision: int
    normalizers: list[str] = field(default_factory=list)

    @property
    def overall_k(self) -> int:
        return max((f.k_factor for f in self.factors), default=1)

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.factors]


def analyze_factor(f: Poly, precision: int = DEFAULT_PRECISION, seed: int | None = None) -> FactorRecord:
    """Monodromy, group and ``k`` for one indecomposable factor at a fixed precision."""
    n = f.degree
    if n == 1:
        return FactorRecord(1, f, None, None, 1, 1, precision)
    cd = critical_data(f, precision, seed)
    mr = monodromy(f, cd)
    pp = passport(mr)
    G = PermGroup(mr.generators())
    gid = identify(G, pp, full_cycle=mr.infinity_perm)
    if not gid.recognized:
        raise UnrecognizedGroup(f"monodromy group not in the classification list: {gid.name}", gid.evidence())
    group_k = minimal_k(gid)
    k = 1 if gid.solvable else min(n, group_k)
    return FactorRecord(n, f, gid, pp, group_k, k, precision, cd, mr, recognize_power_chebyshev(f, mr))


def _with_precision(fn, precision: int, max_precision: int):
    prec = precision
    while True:
        try:
            return fn(prec), prec
        except PrecisionInsufficient as err:
            nxt = max(2 * prec, err.required_bits)
            if nxt > max_precision:
                raise
            prec = nxt


def decide_k(
    p: Poly,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
    seed: int | None = None,
) -> KCertificate:
    """Decompose ``p`` and compute the minimal ``k`` of every factor.

    Precision is doubled on :class:`PrecisionInsufficient` up to ``max_precision``.
    """
    if p.degree < 1:
        raise ValueError("decide_k needs degree >= 1")
    chain, used = _with_precision(lambda pr: decompose_full(p, pr), precision, max_precision)
    records = []
    for f in chain.factors:
        rec, pr = _with_precision(lambda pr, f=f: analyze_factor(f, pr, seed), precision, max_precision)
        used = max(used, pr)
        records.append(rec)
    return KCertificate(records, used)
