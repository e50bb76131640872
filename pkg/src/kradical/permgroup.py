"""Permutations and permutation groups on ``{0, ..., n-1}``.

Products are read left to right: ``(a * b)(i) = b(a(i))``, i.e. apply ``a``
first.  This matches concatenation of loops in monodromy computations.
Stabilizer chains come from a deterministic Schreier-Sims; new base points
are always the smallest point moved by the element that forced them.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded

ENUMERATION_BOUND = 10**6

Perm = tuple  # raw image tuple, used inside the algorithms


def _mul(a: Perm, b: Perm) -> Perm:
    return tuple(b[x] for x in a)


def _inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _is_id(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def _cycle_lengths(a: Perm) -> list[int]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            k += 1
        out.append(k)
    return out


def _perm_order(a: Perm) -> int:
    return reduce(math.lcm, _cycle_lengths(a), 1)


class Permutation:
    """A bijection of ``{0..n-1}`` stored as its image array."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def _raw(cls, images: Perm) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation._raw(_mul(self.images, other.images))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self.images))

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return _is_id(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(_cycle_lengths(self.images), reverse=True))

    def order(self) -> int:
        return _perm_order(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation{body}"


def cycle_type(g: Permutation) -> tuple[int, ...]:
    return g.cycle_type()


def format_cycle_type(ct: Sequence[int]) -> str:
    """Text form ``"a^i b^j"`` with bases descending, e.g. ``"4^1 1^2"``."""
    counts = Counter(ct)
    return " ".join(f"{k}^{counts[k]}" for k in sorted(counts, reverse=True))


def parse_cycle_type(text: str) -> tuple[int, ...]:
    parts = []
    for item in text.split():
        base, _, mult = item.partition("^")
        parts.extend([int(base)] * int(mult or 1))
    return tuple(sorted(parts, reverse=True))


class _Chain:
    def __init__(self, n: int, gens: list[Perm]):
        self.n = n
        self.base: list[int] = []
        self.strong: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        self._build(gens)

    def _orbit_transversal(self, level: int) -> dict[int, Perm]:
        b = self.base[level]
        ident = tuple(range(self.n))
        trans = {b: ident}
        queue = deque([b])
        gens = self.strong[level]
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for s in gens:
                y = s[x]
                if y not in trans:
                    trans[y] = _mul(ux, s)
                    queue.append(y)
        return trans

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            beta = g[self.base[level]]
            u = self.trans[level].get(beta)
            if u is None:
                return g, level
            g = _mul(g, _inv(u))
        return g, len(self.base)

    def _new_base_point(self, g: Perm) -> None:
        moved = next(i for i, x in enumerate(g) if i != x and i not in self.base)
        self.base.append(moved)
        self.strong.append([])
        self.trans.append({})

    def _build(self, gens: list[Perm]) -> None:
        gens = [g for g in gens if not _is_id(g)]
        if not gens:
            return
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._new_base_point(g)
        for level in range(len(self.base)):
            self.strong[level] = [g for g in gens if all(g[b] == b for b in self.base[:level])]
        i = len(self.base) - 1
        while i >= 0:
            self.trans[i] = self._orbit_transversal(i)
            ok = True
            for beta, ub in list(self.trans[i].items()):
                for s in self.strong[i]:
                    gamma = s[beta]
                    sch = _mul(_mul(ub, s), _inv(self.trans[i][gamma]))
                    if _is_id(sch):
                        continue
                    h, j = self.strip(sch, i + 1)
                    if j == len(self.base) and _is_id(h):
                        continue
                    if j == len(self.base):
                        self._new_base_point(h)
                    for level in range(i + 1, j + 1):
                        self.strong[level].append(h)
                    i = j
                    ok = False
                    break
                if not ok:
                    break
            if ok:
                i -= 1
            else:
                # levels above the restart point get rebuilt on the way back up
                continue

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans) if self.base else 1


class PermGroup:
    """Permutation group given by generators; the stabilizer chain is built lazily."""

    def __init__(self, generators: Iterable[Permutation], n: int | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if n is None:
            if not gens:
                raise ValueError("degree needed for a group without generators")
            n = gens[0].degree
        if any(g.degree != n for g in gens):
            raise ValueError("generators act on different degrees")
        self.n = n
        self.generators = gens
        self._chain: _Chain | None = None
        self._elements: list[Perm] | None = None

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.n, [g.images for g in self.generators])
        return self._chain

    @property
    def base(self) -> list[int]:
        return list(self.chain.base)

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        h, j = self.chain.strip(g.images)
        return j == len(self.chain.base) and _is_id(h)

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    queue.append(y)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.n

    def minimal_block(self, b: int) -> list[int]:
        """Finest block system joining ``0`` and ``b``, as a class label per point."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(b)] = find(0)
        queue = deque([(0, b)])
        gens = [g.images for g in self.generators]
        while queue:
            x, y = queue.popleft()
            for g in gens:
                u, v = find(g[x]), find(g[y])
                if u != v:
                    parent[v] = u
                    queue.append((u, v))
        return [find(x) for x in range(self.n)]

    def is_primitive(self) -> bool:
        if self.n < 2:
            raise ValueError("primitivity needs at least two points")
        if not self.is_transitive():
            return False
        for b in range(1, self.n):
            if len(set(self.minimal_block(b))) != 1:
                return False
        return True

    def block_systems(self) -> list[list[int]]:
        """Distinct non-trivial minimal block systems through point 0."""
        out = []
        for b in range(1, self.n):
            labels = self.minimal_block(b)
            if len(set(labels)) > 1 and labels not in out:
                out.append(labels)
        return out

    def _raw_elements(self, bound: int = ENUMERATION_BOUND) -> list[Perm]:
        if self._elements is None:
            if self.order() > bound:
                raise BoundExceeded(f"group order {self.order()} exceeds the enumeration bound {bound}")
            chain = self.chain
            elems = [tuple(range(self.n))]
            for level in reversed(range(len(chain.base))):
                reps = list(chain.trans[level].values())
                elems = [_mul(e, u) for e in elems for u in reps]
            self._elements = elems
        return self._elements

    def elements(self, bound: int = ENUMERATION_BOUND) -> Iterator[Permutation]:
        for e in self._raw_elements(bound):
            yield Permutation._raw(e)

    def _conj_orbit(self, x: Perm) -> set[Perm]:
        gens = [(g.images, _inv(g.images)) for g in self.generators]
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g, gi in gens:
                c = _mul(_mul(gi, y), g)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen

    def conjugacy_class(self, g: Permutation) -> set[Permutation]:
        return {Permutation._raw(x) for x in self._conj_orbit(g.images)}

    def conjugacy_classes(self, bound: int = ENUMERATION_BOUND) -> list[tuple[Permutation, int]]:
        """``(representative, size)`` per class; the representative is the class minimum."""
        assigned: set[Perm] = set()
        out = []
        for e in sorted(self._raw_elements(bound)):
            if e in assigned:
                continue
            cls = self._conj_orbit(e)
            assigned |= cls
            out.append((Permutation._raw(min(cls)), len(cls)))
        return out

    def derived_subgroup(self) -> "PermGroup":
        gens = self.generators
        comms = []
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = a.inverse() * b.inverse() * a * b
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def normal_closure(self, elements: Iterable[Permutation]) -> "PermGroup":
        sub = PermGroup(list(elements), self.n)
        changed = True
        while changed:
            changed = False
            for x in list(sub.generators):
                for g in self.generators:
                    c = x.conjugate(g)
                    if c not in sub:
                        sub = PermGroup(sub.generators + [c], self.n)
                        changed = True
        return sub

    def __repr__(self):
        return f"PermGroup(n={self.n}, gens={len(self.generators)})"


def order(G: PermGroup) -> int:
    return G.order()


def is_transitive(G: PermGroup) -> bool:
    return G.is_transitive()


def is_primitive(G: PermGroup) -> bool:
    return G.is_primitive()


def conjugacy_classes(G: PermGroup, bound: int = ENUMERATION_BOUND) -> list[tuple[Permutation, int]]:
    return G.conjugacy_classes(bound)


def rigidity_count(
    G: PermGroup, c1: Permutation, c2: Permutation, c3: Permutation, bound: int = ENUMERATION_BOUND
) -> tuple[int, int]:
    """Count ``(s1, s2)`` in ``C1 x C2`` with ``(s1*s2)^-1`` in ``C3``.

    Returns the raw number of such pairs and the number of orbits of the
    solution set under simultaneous conjugation by ``G``.
    """
    if G.order() > bound:
        raise BoundExceeded(f"group order {G.order()} exceeds the enumeration bound {bound}")
    k1 = G._conj_orbit(c1.images)
    k2 = G._conj_orbit(c2.images)
    k3 = G._conj_orbit(c3.images)
    sols = set()
    for s1 in k1:
        for s2 in k2:
            if _inv(_mul(s1, s2)) in k3:
                sols.add((s1, s2))
    gens = [(g.images, _inv(g.images)) for g in G.generators]
    seen: set = set()
    orbits = 0
    for s in sols:
        if s in seen:
            continue
        orbits += 1
        seen.add(s)
        queue = deque([s])
        while queue:
            a, b = queue.popleft()
            for g, gi in gens:
                t = (_mul(_mul(gi, a), g), _mul(_mul(gi, b), g))
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return len(sols), orbits


# --- smallest index of a proper subgroup -----------------------------------

MIN_INDEX_BOUND = 10**5

# short words in two generators; their orders must divide the subgroup order
_WORDS = ("a", "b", "ab", "aab", "abb", "aabb", "abab", "aaab", "abbb", "aabab", "ababb", "aaabb", "aabbb")


def _word_orders_lcm(a: Perm, b: Perm) -> int:
    ai, bi = a, b
    result = 1
    for w in _WORDS:
        g = None
        for ch in w:
            x = ai if ch == "a" else bi
            g = x if g is None else _mul(g, x)
        result = math.lcm(result, _perm_order(g))
    ab_inv = _mul(a, _inv(b))
    return math.lcm(result, _perm_order(ab_inv))


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, math.isqrt(k) + 1))


def _smallest_faithful_degree_bound(order_: int) -> int:
    """Smallest ``m`` with ``order_ | m!`` (a simple group embeds in ``S_m``)."""
    m, f = 1, 1
    while f % order_:
        m += 1
        f *= m
    return m


def _closure(gens: Iterable[Perm], n: int, cap: int) -> frozenset | None:
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in elems:
                    elems.add(y)
                    if len(elems) > cap:
                        return None
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def _has_subgroup_of_order_exhaustive(G: PermGroup, target: int) -> bool:
    """Cyclic extension over all subgroups whose order divides ``target``."""
    elems = G._raw_elements()
    n = G.n
    cyclic: dict[frozenset, Perm] = {}
    for e in elems:
        o = _perm_order(e)
        if target % o == 0:
            cyc = _closure([e], n, target)
            if cyc is not None:
                cyclic.setdefault(cyc, e)
    layer = set(cyclic)
    seen = set(layer)
    while layer:
        if any(len(h) == target for h in layer):
            return True
        nxt = set()
        for h in layer:
            for cyc, gen in cyclic.items():
                if cyc <= h:
                    continue
                if target % len(h) or target % len(cyc):
                    continue
                k = _closure(list(h) + [gen], n, target)
                if k is None or target % len(k) or k in seen:
                    continue
                seen.add(k)
                nxt.add(k)
        layer = nxt
    return False


def _has_subgroup_of_order_two_generated(G: PermGroup, target: int, reps: list[Perm]) -> bool:
    elems = G._raw_elements()
    for a in reps:
        if target % _perm_order(a):
            continue
        for b in elems:
            if target % _perm_order(b):
                continue
            if target % _word_orders_lcm(a, b):
                continue
            if PermGroup([Permutation._raw(a), Permutation._raw(b)], G.n).order() == target:
                return True
    return False


def min_faithful_index(G: PermGroup, bound: int = MIN_INDEX_BOUND) -> int:
    """Smallest index of a proper subgroup of a transitive simple group ``G``.

    Indices below ``n`` (the point-stabilizer index) are searched from the
    lower bound ``min{m : |G| divides m!}``: first among two-generated
    subgroups with a Lagrange filter on short-word orders, then, to rule an
    index out, by exhaustive cyclic extension.
    """
    N = G.order()
    if N > bound:
        raise BoundExceeded(f"group order {N} exceeds the subgroup-scan bound {bound}")
    if not G.is_transitive():
        raise ValueError("min_faithful_index expects a transitive group")
    # every nontrivial subgroup has a conjugate containing a prime-order class
    # representative; large primes first since they pin the subgroup down fastest
    reps = [r.images for r, _ in G.conjugacy_classes() if _is_prime(r.order())]
    reps.sort(key=lambda e: -_perm_order(e))
    for m in range(_smallest_faithful_degree_bound(N), G.n):
        if N % m:
            continue
        target = N // m
        if _has_subgroup_of_order_two_generated(G, target, reps):
            return m
        if _has_subgroup_of_order_exhaustive(G, target):
            return m
    return G.n
