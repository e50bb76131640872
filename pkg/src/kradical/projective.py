"""Small finite fields, projective spaces and the classical groups acting on them.

Field elements are integers ``0..q-1``: the base-``p`` digits of an element
are its coefficients in the polynomial basis ``1, x, x^2, ...`` modulo a
fixed irreducible polynomial.  So in ``F_9 = F_3[i]`` the element ``a + b*i``
is ``a + 3*b``, and in ``F_4`` the element ``w`` (with ``w^2 = w + 1``) is 2.

Labelings are frozen:

* ``P^1(F_q)``: labels ``0..q-1`` are the points ``(x : 1)`` and label ``q``
  is ``oo = (1 : 0)``.
* ``P^{d-1}(F_q)`` for ``d >= 3``: vectors whose last nonzero coordinate is
  1, ordered by ``sum v_k q^k``.  Over ``F_2`` this is the binary order of the
  nonzero vectors.  Hyperplanes are labeled by their normal vectors in the
  same order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .permgroup import Permutation, PermGroup

_MODULI = {
    # q: (p, coefficients of the monic irreducible, low degree first)
    4: (2, (1, 1, 1)),      # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),   # x^3 + x + 1
    9: (3, (1, 0, 1)),      # x^2 + 1
}


class SmallField:
    """``F_q`` for ``q`` in {2, 3, 4, 5, 7, 8, 9} with precomputed tables."""

    SUPPORTED = (2, 3, 4, 5, 7, 8, 9)

    def __init__(self, q: int):
        if q not in self.SUPPORTED:
            raise ValueError(f"unsupported field size {q}")
        self.q = q
        if q in _MODULI:
            self.p, modulus = _MODULI[q]
        else:
            self.p, modulus = q, (0, 1)
        self.degree = len(modulus) - 1
        self._mod = modulus
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.neg_table = [next(b for b in range(q) if self.add_table[a][b] == 0) for a in range(q)]
        self.inv_table = [0] + [next(b for b in range(1, q) if self.mul_table[a][b] == 1) for a in range(1, q)]
        self.frob_table = [self.power(a, self.p) for a in range(q)]
        self.generator = next(g for g in range(1, q) if len({self.power(g, k) for k in range(q - 1)}) == q - 1)
        self._check_axioms()

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**k) % self.p for k in range(self.degree)]

    def _from_digits(self, ds) -> int:
        return sum(d * self.p**k for k, d in enumerate(ds))

    def _add(self, a: int, b: int) -> int:
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        m = self._mod
        for k in range(len(prod) - 1, self.degree - 1, -1):
            c = prod[k]
            if c:
                for j in range(self.degree + 1):
                    prod[k - self.degree + j] = (prod[k - self.degree + j] - c * m[j]) % self.p
        return self._from_digits(prod[: self.degree])

    def _check_axioms(self) -> None:
        q, A, M = self.q, self.add_table, self.mul_table
        for a in range(q):
            for b in range(q):
                assert A[a][b] == A[b][a] and M[a][b] == M[b][a]
                for c in range(q):
                    assert M[a][A[b][c]] == A[M[a][b]][M[a][c]]
        for a in range(1, q):
            assert M[a][self.inv_table[a]] == 1

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int) -> int:
        return self.frob_table[a]

    def power(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul_table[out][a]
        return out

    def element(self, value) -> int:
        """Convert an int (reduced mod ``p``) or a string like ``"1+i"``, ``"-i"``, ``"2w"``."""
        if isinstance(value, int):
            return self._from_digits([value % self.p] + [0] * (self.degree - 1))
        text = value.replace(" ", "")
        if not text:
            raise ValueError("empty field element")
        out = 0
        for sign, coef, sym in re.findall(r"([+-]?)(\d*)([iw]?)", text):
            if not coef and not sym:
                continue
            c = int(coef) if coef else 1
            if sign == "-":
                c = -c
            term = self.element(c)
            if sym:
                if self.degree < 2:
                    raise ValueError(f"{sym!r} is not an element of F_{self.q}")
                term = self.mul(term, self.p)  # the class of x is encoded as p
            out = self.add(out, term)
        return out

    def __repr__(self):
        return f"SmallField({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> SmallField:
    return SmallField(q)


# --- labelings ---------------------------------------------------------------


@lru_cache(maxsize=None)
def projective_points(d: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Normalized representatives of ``P^{d-1}(F_q)`` in frozen label order."""
    if d == 2:
        return tuple((x, 1) for x in range(q)) + ((1, 0),)
    pts = []
    for code in range(1, q**d):
        v = tuple((code // q**k) % q for k in range(d))
        last = max(k for k in range(d) if v[k])
        if v[last] == 1:
            pts.append(v)
    return tuple(pts)


def _normalize(F: SmallField, v) -> tuple[int, ...]:
    last = max(k for k in range(len(v)) if v[k])
    s = F.inv(v[last])
    return tuple(F.mul(s, x) for x in v)


@lru_cache(maxsize=None)
def _index(d: int, q: int) -> dict:
    return {v: i for i, v in enumerate(projective_points(d, q))}


def _mat_vec(F: SmallField, M, v) -> tuple[int, ...]:
    out = []
    for row in M:
        acc = 0
        for a, x in zip(row, v):
            acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return tuple(out)


def _det(F: SmallField, M) -> int:
    n = len(M)
    A = [list(r) for r in M]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        ic = F.inv(A[c][c])
        for r in range(c + 1, n):
            f = F.mul(A[r][c], ic)
            if f:
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    return det


def _inverse_transpose(F: SmallField, M):
    n = len(M)
    A = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        ic = F.inv(A[c][c])
        A[c] = [F.mul(ic, x) for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    inv = [row[n:] for row in A]
    return [[inv[j][i] for j in range(n)] for i in range(n)]


def matrix_permutation(M, q: int, frobenius: bool = False, action: str = "points") -> Permutation:
    """Permutation of the labeled points (or hyperplanes) induced by ``v -> M * frob(v)``."""
    F = field(q)
    M = [[F.element(x) if not isinstance(x, int) or x >= q or x < 0 else x for x in row] for row in M]
    d = len(M)
    if _det(F, M) == 0:
        raise ValueError("singular matrix")
    if action == "hyperplanes":
        M = _inverse_transpose(F, M)
    elif action != "points":
        raise ValueError(f"unknown action {action!r}")
    pts = projective_points(d, q)
    idx = _index(d, q)
    images = []
    for v in pts:
        w = tuple(F.frob(x) for x in v) if frobenius else v
        images.append(idx[_normalize(F, _mat_vec(F, M, w))])
    return Permutation(images)


def semilinear(a, b, c, d, frobenius: bool, q: int) -> Permutation:
    """``x -> (a*x' + b)/(c*x' + d)`` on ``P^1(F_q)`` where ``x'`` is ``frob(x)`` when flagged."""
    return matrix_permutation([[a, b], [c, d]], q, frobenius=frobenius)


def mobius(a, b, c, d, q: int) -> Permutation:
    """``x -> (a*x + b)/(c*x + d)`` on the labels ``[0, ..., q-1, oo]``."""
    return semilinear(a, b, c, d, False, q)


# --- classical groups --------------------------------------------------------

_NAME = re.compile(r"^\s*P(SL|GL|ΓL|GammaL)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_group_name(name: str) -> tuple[str, int, int]:
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"cannot parse group name {name!r}")
    kind = {"SL": "PSL", "GL": "PGL", "ΓL": "PΓL", "GammaL": "PΓL"}[m.group(1)]
    return kind, int(m.group(2)), int(m.group(3))


def standard_generators(kind: str, d: int, q: int, action: str = "points") -> list[Permutation]:
    if q not in SmallField.SUPPORTED or d < 2 or q**d > 10**4:
        raise ValueError(f"unsupported (d, q) = ({d}, {q})")
    F = field(q)
    gens = []
    ident = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    # transvections I + a E_ij with a running over an F_p-basis of F_q
    basis = [F.p**k for k in range(F.degree)]
    for i, j in itertools.permutations(range(d), 2):
        for a in basis:
            M = [row[:] for row in ident]
            M[i][j] = a
            gens.append(matrix_permutation(M, q, action=action))
    if kind in ("PGL", "PΓL") and q > 2:
        M = [row[:] for row in ident]
        M[0][0] = F.generator
        gens.append(matrix_permutation(M, q, action=action))
    if kind == "PΓL" and F.degree > 1:
        gens.append(matrix_permutation(ident, q, frobenius=True, action=action))
    if kind not in ("PSL", "PGL", "PΓL"):
        raise ValueError(f"unknown group kind {kind!r}")
    return [g for g in gens if not g.is_identity()] or [Permutation.identity(len(projective_points(d, q)))]


def standard_group(name: str, action: str = "points") -> PermGroup:
    """``standard_group("PGL(2,5)")`` etc. on the frozen labeling."""
    kind, d, q = parse_group_name(name)
    if action == "hyperplanes" and d < 3:
        raise ValueError("hyperplane action needs d >= 3")
    return PermGroup(standard_generators(kind, d, q, action))


def action_equivalence(gens_a: list[Permutation], gens_b: list[Permutation]) -> Permutation | None:
    """A bijection ``f`` with ``f(g_a(x)) = g_b(f(x))`` for paired generators, if any.

    Both actions must be transitive; ``f`` is determined by the image of 0.
    """
    n = gens_a[0].degree
    for target in range(n):
        f = {0: target}
        queue = [0]
        ok = True
        while queue and ok:
            x = queue.pop()
            for ga, gb in zip(gens_a, gens_b):
                y, fy = ga(x), gb(f[x])
                if y in f:
                    if f[y] != fy:
                        ok = False
                        break
                else:
                    f[y] = fy
                    queue.append(y)
        if ok and len(f) == n and len(set(f.values())) == n:
            return Permutation([f[i] for i in range(n)])
    return None


# --- generators printed for the worked examples ------------------------------


@dataclass(frozen=True)
class NamedMap:
    text: str
    perm: Permutation


def _named(text: str, perm: Permutation) -> NamedMap:
    return NamedMap(text, perm)


def paper_generators(fixture_id: str) -> list[Permutation]:
    return [m.perm for m in named_generators(fixture_id)]


def named_generators(fixture_id: str) -> list[NamedMap]:
    if fixture_id == "deg6":
        return [_named("x -> 1/x", mobius(0, 1, 1, 0, 5)), _named("x -> 2x+2", mobius(2, 2, 0, 1, 5))]
    if fixture_id == "deg10":
        return [
            _named("x -> conj(x)", semilinear(1, 0, 0, 1, True, 9)),
            _named("x -> (i conj(x) - 1)/(conj(x) + 1)", semilinear("i", "-1", 1, 1, True, 9)),
        ]
    if fixture_id == "deg8-first":
        return [_named("x -> 1/x", mobius(0, 1, 1, 0, 7)), _named("x -> 2-3x", mobius("-3", 2, 0, 1, 7))]
    if fixture_id == "deg8-second":
        return [_named("x -> 1/x", mobius(0, 1, 1, 0, 7)), _named("x -> 1-3x", mobius("-3", 1, 0, 1, 7))]
    raise KeyError(f"unknown fixture id {fixture_id!r}")
