"""Permutation groups on {0, ..., n-1}.

Permutations are plain tuples of images.  Groups act on the right and
products compose left to right: ``compose(a, b)`` maps ``x`` to
``b[a[x]]``, so ``x^(ab) = (x^a)^b``.  This is the only convention used in
the package (see ``ACTION``).

Stabilizer chains come from a deterministic Schreier-Sims: base points are
chosen as the smallest point moved by the element that forces a new level,
and transversals are grown in breadth-first order, so every derived object
(orders, transversals, random elements for a fixed seed) is reproducible.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Iterator, Sequence

ACTION = "right"
MAX_DEGREE = 10**6

Perm = tuple


class PermError(ValueError):
    pass


class NotAHomomorphism(PermError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def check_perm(a: Sequence[int]) -> Perm:
    a = tuple(int(x) for x in a)
    if sorted(a) != list(range(len(a))):
        raise PermError("not a permutation: %r" % (a,))
    return a


def compose(a: Perm, b: Perm) -> Perm:
    """Product ``a*b``: first ``a``, then ``b``."""
    if len(a) != len(b):
        raise PermError("degree mismatch: %d != %d" % (len(a), len(b)))
    return tuple(map(b.__getitem__, a))


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def power(a: Perm, e: int) -> Perm:
    if e < 0:
        a, e = inverse(a), -e
    out = identity(len(a))
    while e:
        if e & 1:
            out = compose(out, a)
        a = compose(a, a)
        e >>= 1
    return out


def conjugate(a: Perm, s: Perm) -> Perm:
    """``a^s = s^-1 a s``."""
    return compose(compose(inverse(s), a), s)


def cycles(a: Perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(a)):
        if i in seen or a[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = a[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = a[j]
        out.append(tuple(cyc))
    return out


def perm_order(a: Perm) -> int:
    from math import lcm

    out = 1
    for c in cycles(a):
        out = lcm(out, len(c))
    return out


def from_cycles(n: int, *cycs: Sequence[int]) -> Perm:
    img = list(range(n))
    for c in cycs:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return check_perm(img)


def closure(gens: Iterable[Perm], degree: int) -> set[Perm]:
    """All elements of the group generated by ``gens`` (brute force)."""
    gens = list(gens)
    one = identity(degree)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class _Level:
    __slots__ = ("point", "gens", "trans", "checked")

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[Perm] = []
        self.trans: dict[int, Perm] = {point: identity(n)}
        self.checked: set[tuple[int, int]] = set()

    def extend(self, g: Perm) -> None:
        self.gens.append(g)
        queue = deque(self.trans)
        while queue:
            x = queue.popleft()
            ux = self.trans[x]
            for s in self.gens:
                y = s[x]
                if y not in self.trans:
                    self.trans[y] = compose(ux, s)
                    queue.append(y)


class PermGroup:
    """A permutation group given by generators, with a lazily built chain.

    ``base_prefix`` forces the first base points (used for point
    stabilizers); the remaining base points are chosen automatically.
    """

    def __init__(self, gens: Iterable[Sequence[int]], degree: int | None = None,
                 base_prefix: Sequence[int] = ()):
        gens = [check_perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise PermError("degree required for an empty generating set")
            degree = len(gens[0])
        if degree < 1 or degree > MAX_DEGREE:
            raise PermError("degree %d outside [1, %d]" % (degree, MAX_DEGREE))
        for g in gens:
            if len(g) != degree:
                raise PermError("generator of degree %d in group of degree %d"
                                % (len(g), degree))
        self.degree = degree
        self.generators = gens
        self._prefix = tuple(base_prefix)
        self._levels: list[_Level] | None = None

    def __repr__(self):
        return "PermGroup(degree=%d, ngens=%d)" % (self.degree, len(self.generators))

    # -- chain ------------------------------------------------------------
    @property
    def levels(self) -> list[_Level]:
        if self._levels is None:
            self._levels = self._schreier_sims()
        return self._levels

    def _sift(self, g: Perm, start: int, levels: list[_Level]) -> tuple[Perm, int]:
        for j in range(start, len(levels)):
            L = levels[j]
            u = L.trans.get(g[L.point])
            if u is None:
                return g, j
            g = compose(g, inverse(u))
        return g, len(levels)

    def _schreier_sims(self) -> list[_Level]:
        n = self.degree
        levels: list[_Level] = [_Level(b, n) for b in self._prefix]
        for g in self.generators:
            if is_identity(g):
                continue
            if all(g[L.point] == L.point for L in levels):
                levels.append(_Level(min(i for i in range(n) if g[i] != i), n))
            for L in levels:
                L.extend(g)
                if g[L.point] != L.point:
                    break
        i = len(levels) - 1
        while i >= 0:
            L = levels[i]
            found = None
            for x in list(L.trans):
                for gi, s in enumerate(L.gens):
                    if (x, gi) in L.checked:
                        continue
                    L.checked.add((x, gi))
                    ux = L.trans[x]
                    sg = compose(compose(ux, s), inverse(L.trans[s[x]]))
                    h, j = self._sift(sg, i + 1, levels)
                    if j < len(levels) or not is_identity(h):
                        found = (h, j)
                        break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            h, j = found
            if j == len(levels):
                levels.append(_Level(min(x for x in range(n) if h[x] != x), n))
            for lv in range(i + 1, j + 1):
                levels[lv].extend(h)
            i = j
        return levels

    @property
    def base(self) -> list[int]:
        return [L.point for L in self.levels]

    def basic_orbits(self) -> list[list[int]]:
        return [list(L.trans) for L in self.levels]

    def order(self) -> int:
        out = 1
        for L in self.levels:
            out *= len(L.trans)
        return out

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        h, j = self._sift(g, 0, self.levels)
        return j == len(self.levels) and is_identity(h)

    __contains__ = contains

    def strong_generators(self) -> list[Perm]:
        seen, out = set(), []
        for L in self.levels:
            for g in L.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def elements(self) -> Iterator[Perm]:
        """Every element exactly once, in chain order."""
        levels = self.levels
        one = identity(self.degree)

        def rec(idx: int, acc: Perm) -> Iterator[Perm]:
            if idx < 0:
                yield acc
                return
            for u in levels[idx].trans.values():
                yield from rec(idx - 1, compose(acc, u))

        yield from rec(len(levels) - 1, one)

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.degree)
        for L in reversed(self.levels):
            pts = list(L.trans)
            g = compose(g, L.trans[pts[rng.randrange(len(pts))]])
        return g

    # -- orbits and stabilizers --------------------------------------------
    def _check_point(self, x: int) -> None:
        if not 0 <= x < self.degree:
            raise PermError("point %d out of range for degree %d" % (x, self.degree))

    def orbit(self, x: int) -> list[int]:
        self._check_point(x)
        seen = {x}
        out = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in self.generators:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    out.append(z)
                    queue.append(z)
        return out

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.degree):
            if x not in seen:
                o = self.orbit(x)
                seen.update(o)
                out.append(sorted(o))
        return out

    def point_stabilizer(self, x: int) -> "PermGroup":
        self._check_point(x)
        g = PermGroup(self.generators, self.degree, base_prefix=(x,))
        levels = g.levels
        gens = levels[1].gens if len(levels) > 1 else []
        stab = PermGroup(gens, self.degree)
        stab._levels = levels[1:]
        return stab

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_2_transitive(self) -> bool:
        if self.degree < 2:
            raise PermError("2-transitivity needs degree >= 2")
        if not self.is_transitive():
            return False
        stab = self.point_stabilizer(0)
        return len(stab.orbit(1)) == self.degree - 1 if stab.generators else self.degree == 2

    def is_block_system(self, partition: Sequence[Iterable[int]]) -> bool:
        cells = [frozenset(c) for c in partition]
        where: dict[int, int] = {}
        for ci, c in enumerate(cells):
            if not c:
                raise PermError("empty cell in partition")
            for x in c:
                if x in where or not 0 <= x < self.degree:
                    raise PermError("malformed partition at point %r" % (x,))
                where[x] = ci
        if len(where) != self.degree:
            raise PermError("partition does not cover the domain")
        for g in self.generators:
            for c in cells:
                img = {g[x] for x in c}
                target = cells[where[next(iter(img))]]
                if img != target:
                    return False
        return True

    def induced_action(self, perms: Sequence[Perm]) -> "PermGroup":
        """Convenience: a new group from permutations of another domain."""
        return PermGroup(perms, len(perms[0]) if perms else 1)


class Homomorphism:
    """A homomorphism from a permutation group, defined by generator images.

    Construction verifies that the images extend to a homomorphism: the
    group generated by the pairs ``(g_i, h_i)`` acting on the disjoint union
    of both domains must project isomorphically onto the source.  Evaluation
    sifts through that graph group's chain, which expresses any source
    element as a product of transversal elements and reads off the image.
    """

    def __init__(self, domain: PermGroup, images: Sequence[Sequence[int]]):
        images = [check_perm(h) for h in images]
        if len(images) != len(domain.generators):
            raise PermError("need one image per generator (%d != %d)"
                            % (len(images), len(domain.generators)))
        n = domain.degree
        m = len(images[0]) if images else 1
        self.domain = domain
        self.images = images
        self.image_degree = m
        gens = [g + tuple(n + x for x in h) for g, h in zip(domain.generators, images)]
        self._graph = PermGroup(gens, n + m)
        bad = [b for b in self._graph.base if b >= n]
        if bad:
            raise NotAHomomorphism("generator images do not extend to a homomorphism "
                                   "(non-trivial kernel of the graph projection)")
        self._n = n

    def __call__(self, g: Sequence[int]) -> Perm:
        n, m = self._n, self.image_degree
        g = tuple(g)
        img = identity(m)
        for L in self._graph.levels:
            u = L.trans.get(g[L.point])
            if u is None:
                raise PermError("element is not in the domain group")
            g = compose(g, inverse(u[:n]))
            img = compose(tuple(x - n for x in u[n:]), img)
        if not is_identity(g):
            raise PermError("element is not in the domain group")
        return img

    def image_group(self) -> PermGroup:
        return PermGroup(self.images, self.image_degree)

    def kernel_scan(self, elements: Iterable[Perm]) -> list[Perm]:
        one = identity(self.image_degree)
        return [g for g in elements if self(g) == one]


def hom_by_images(domain_gens: Sequence[Sequence[int]], image_perms: Sequence[Sequence[int]],
                  degree: int | None = None) -> Homomorphism:
    return Homomorphism(PermGroup(domain_gens, degree), image_perms)
