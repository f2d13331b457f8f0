"""The coset graph Cos(G, P, RQ), explored locally.

Vertices are right cosets.  A Left vertex ``P g`` with ``g = f p`` is
labelled by ``f^p`` (N is regular on the cosets of P).  A Right vertex
``RQ g`` with ``g = f t_v M`` is labelled by ``(w, c)`` where ``w = v M``
and ``c`` is the lexicographically least element of the coset ``R f^M``;
``RQ g = RQ c t_w``.  The vector ``w`` is constant on N-orbits.

``Lx ~ Ry`` iff ``y x^-1`` lies in ``RQ P = R P``, i.e. iff the N-part of
``y x^-1`` is in R.

The whole graph has ``|T|^k`` vertices on each side, so everything here
works on balls of radius at most 3.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .catalog import AffineElement, Catalog
from .perm import PermGroup
from .rsub import RData
from .wreath import TwElement, Wreath, ftuple

LEFT, RIGHT = 0, 1
MAX_RADIUS = 3
MAX_VERTICES = 10**6


class GraphError(RuntimeError):
    pass


class BallTooLarge(GraphError):
    pass


@dataclass(frozen=True, order=True)
class VertexId:
    side: int
    w: int
    label: bytes

    def f(self) -> np.ndarray:
        return np.frombuffer(self.label, dtype=np.int32)

    @property
    def is_left(self) -> bool:
        return self.side == LEFT


class CosetGraph:
    def __init__(self, cat: Catalog, r: RData, threads: int = 1):
        self.cat = cat
        self.r = r
        self.W = Wreath(cat)
        self.k = cat.k
        self.tmul = self.W.tmul
        self.R = r.elements
        self.R_keys = {row.tobytes() for row in self.R}
        self.threads = max(1, int(threads))
        self.neg = cat.neg_idx
        self.add = cat.add_idx
        self._translations = [AffineElement(x, cat.identity_matrix) for x in cat.vectors]

    # -- labels -------------------------------------------------------------
    def left_id(self, f: np.ndarray) -> VertexId:
        return VertexId(LEFT, -1, ftuple(f).tobytes())

    def right_id(self, w: int, c: np.ndarray) -> VertexId:
        return VertexId(RIGHT, int(w), ftuple(c).tobytes())

    def canonical_left(self, g: TwElement) -> VertexId:
        return self.left_id(self.W.twist(g.f, g.p))

    def canonical_right(self, g: TwElement) -> VertexId:
        cat = self.cat
        v, M = cat.decompose(g.p)
        w = cat.vindex[cat.vec_mat(v, M)]
        fM = self.W.twist(g.f, AffineElement((0, 0), M))
        return self.right_id(w, kernels.coset_lexmin(self.tmul, self.R, fM))

    def canonical(self, g: TwElement, side: int) -> VertexId:
        return self.canonical_left(g) if side == LEFT else self.canonical_right(g)

    def in_R(self, f: np.ndarray) -> bool:
        return ftuple(f).tobytes() in self.R_keys

    def in_RQ(self, g: TwElement) -> bool:
        return g.p.v == (0, 0) and self.in_R(g.f)

    def rep(self, x: VertexId) -> TwElement:
        if x.side == LEFT:
            return self.W.embed_N(x.f())
        return TwElement(ftuple(x.f()), self._translations[x.w])

    @property
    def u(self) -> VertexId:
        return self.canonical_left(self.W.identity)

    @property
    def v(self) -> VertexId:
        return self.canonical_right(self.W.identity)

    # -- adjacency ------------------------------------------------------------
    def adjacent(self, a: VertexId, b: VertexId) -> bool:
        if a.side == RIGHT:
            a, b = b, a
        if a.side != LEFT or b.side != RIGHT:
            return False
        W = self.W
        h = W.mul(self.rep(b), W.inv(self.rep(a)))
        return self.in_R(h.f)

    def adjacent_via_left(self, a: VertexId, b: VertexId) -> bool:
        """Same predicate through ``x y^-1`` in ``P R``."""
        if a.side == RIGHT:
            a, b = b, a
        W = self.W
        h = W.mul(self.rep(a), W.inv(self.rep(b)))
        return self.in_R(W.twist(h.f, h.p))

    def neighbors(self, x: VertexId) -> list[VertexId]:
        f = x.f()
        if x.side == LEFT:
            out = [self.right_id(w, kernels.coset_lexmin(self.tmul, self.R,
                                                         ftuple(f[self.add[self.neg[w]]])))
                   for w in range(self.k)]
        else:
            members = kernels.coset_members(self.tmul, self.R, ftuple(f))
            shifted = members[:, self.add[x.w]]
            out = [self.left_id(row) for row in shifted]
        out.sort()
        return out

    def neighbors_by_transversal(self, x: VertexId) -> list[VertexId]:
        """Reference enumeration through full group multiplication."""
        W = self.W
        g = self.rep(x)
        if x.side == LEFT:
            out = [self.canonical_right(W.mul(W.embed_P(t), g)) for t in self._translations]
        else:
            out = [self.canonical_left(W.mul(W.embed_N(r), g)) for r in self.R]
        out.sort()
        return out

    def act(self, x: VertexId, g: TwElement) -> VertexId:
        """Image of the coset ``x`` under right multiplication by ``g``."""
        return self.canonical(self.W.mul(self.rep(x), g), x.side)

    def fixes(self, g: TwElement, x: VertexId) -> bool:
        return self.act(x, g) == x

    # -- stabilizers of the base vertices --------------------------------------
    def stabilizer_gens_u(self) -> list[TwElement]:
        return [self.W.embed_P(g) for g in self.cat.P_gens]

    def stabilizer_gens_v(self) -> list[TwElement]:
        W = self.W
        return ([W.embed_N(b) for b in self.r.basis_elements()]
                + [W.embed_P(AffineElement((0, 0), M)) for M in self.cat.Q_gens])

    # -- balls -------------------------------------------------------------------
    def ball(self, center: VertexId, radius: int) -> "Ball":
        if radius < 0 or radius > MAX_RADIUS:
            raise GraphError("radius %d outside [0, %d]" % (radius, MAX_RADIUS))
        depth = {center: 0}
        layers = [[center]]
        adjacency: dict[VertexId, list[VertexId]] = {}
        for d in range(radius):
            frontier = layers[-1]
            if self.threads > 1 and len(frontier) > 1:
                with ThreadPoolExecutor(self.threads) as ex:
                    results = list(ex.map(self.neighbors, frontier))
            else:
                results = [self.neighbors(x) for x in frontier]
            nxt = set()
            for x, nb in zip(frontier, results):
                adjacency[x] = nb
                for y in nb:
                    if y not in depth:
                        nxt.add(y)
            layer = sorted(nxt)
            for y in layer:
                depth[y] = d + 1
            if len(depth) > MAX_VERTICES:
                raise BallTooLarge("ball exceeds %d vertices" % MAX_VERTICES)
            layers.append(layer)
        return Ball(center, radius, layers, depth, adjacency)


@dataclass
class Ball:
    center: VertexId
    radius: int
    layers: list[list[VertexId]]
    depth: dict[VertexId, int]
    adjacency: dict[VertexId, list[VertexId]]

    @property
    def vertices(self) -> list[VertexId]:
        return [x for layer in self.layers for x in layer]

    def __len__(self):
        return len(self.depth)

    def closed(self) -> list[VertexId]:
        return [x for layer in self.layers[:-1] for x in layer] if self.radius else []

    def is_bipartite(self) -> bool:
        return all(x.side != y.side for x, nb in self.adjacency.items() for y in nb)

    def degrees(self) -> set[int]:
        return {len(nb) for nb in self.adjacency.values()}

    def index(self) -> dict[VertexId, int]:
        return {x: i for i, x in enumerate(self.vertices)}


# -- checks ----------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def count(self) -> int:
        return sum(1 for i in range(len(self.parent)) if self.find(i) == i)


def two_arc_orbit_check(G: CosetGraph, center: VertexId,
                        stab_gens: Sequence[TwElement]) -> dict:
    """Orbits of the given stabilizer generators on 1- and 2-arcs from ``center``."""
    for g in stab_gens:
        if not G.fixes(g, center):
            raise GraphError("stabilizer generator does not fix the centre")
    first = G.neighbors(center)
    arcs: list[tuple[VertexId, VertexId]] = []
    for a in first:
        for b in G.neighbors(a):
            if b != center:
                arcs.append((a, b))
    where = {arc: i for i, arc in enumerate(arcs)}
    one = {a: i for i, a in enumerate(first)}
    uf2, uf1 = _UnionFind(len(arcs)), _UnionFind(len(first))
    for g in stab_gens:
        images: dict[VertexId, VertexId] = {}
        for a in first:
            images[a] = G.act(a, g)
            uf1.union(one[a], one[images[a]])
        for i, (a, b) in enumerate(arcs):
            j = where.get((images[a], G.act(b, g)))
            if j is None:
                raise GraphError("image of a 2-arc left the arc set")
            uf2.union(i, j)
    return {"one_arcs": len(first), "one_arc_orbits": uf1.count(),
            "count": len(arcs), "orbit_count": uf2.count()}


def n_orbit_invariant(x: VertexId) -> int:
    if x.side != RIGHT:
        raise GraphError("the N-orbit invariant is defined on Right vertices")
    return x.w


def star_quotient_check(G: CosetGraph, ball: Ball, samples: int = 500,
                        seed: int = 0x5EED) -> dict:
    if ball.radius < 1 or ball.center.side != LEFT:
        raise GraphError("need a ball of radius >= 1 around a Left vertex")
    rng = random.Random(seed)
    W = G.W
    constant = True
    rights = [x for x in ball.vertices if x.side == RIGHT]
    for x in rights:
        g = G.rep(x)
        for _ in range(samples):
            y = G.canonical_right(W.mul(g, W.embed_N(W.random_N(rng))))
            if y.w != x.w:
                constant = False
                break
    nb = ball.adjacency[ball.center]
    values = sorted(n_orbit_invariant(y) for y in nb)
    left_classes = 1  # N is regular on the Left side
    right_classes = sorted({n_orbit_invariant(y) for y in rights})
    edges = {(0, n_orbit_invariant(y)) for x, ys in ball.adjacency.items() if x.side == LEFT
             for y in ys}
    star = (left_classes == 1 and len(right_classes) == G.k
            and edges == {(0, w) for w in range(G.k)})
    return {"invariant_constant": constant, "samples_per_vertex": samples,
            "neighbor_values_distinct": values == list(range(G.k)),
            "right_classes": len(right_classes), "left_classes": left_classes,
            "quotient_edges": len(edges), "star": star,
            "quotient": "K_{1,%d}" % G.k if star else None}


def is_primitive(group: PermGroup) -> bool:
    """Minimal-block test: every block containing {0, x} is the whole domain."""
    n = group.degree
    if not group.is_transitive():
        return False
    for x in range(1, n):
        uf = _UnionFind(n)
        uf.union(0, x)
        queue = [(0, x)]
        while queue:
            a, b = queue.pop()
            for g in group.generators:
                ga, gb = uf.find(g[a]), uf.find(g[b])
                if ga != gb:
                    uf.union(ga, gb)
                    queue.append((g[a], g[b]))
        if uf.count() != 1:
            return False
    return True


def block_action_check(G: CosetGraph) -> dict:
    """The group induced on the block of u (the Left labels f_t)."""
    cat, W = G.cat, G.W
    nT = len(cat.T_elements)

    def point_of(x: VertexId) -> int:
        f = x.f()
        if not W.is_constant(f):
            raise GraphError("image of the block left the block")
        return int(f[0])

    def induced(g: TwElement) -> tuple:
        return tuple(point_of(G.act(G.left_id(W.c_hat(t)), g)) for t in range(nT))

    nhat = [induced(W.embed_N(W.c_hat(cat.T_index[t]))) for t in cat.T_group.generators]
    pgen = [induced(W.embed_P(g)) for g in cat.P_gens]
    full = PermGroup(nhat + pgen, nT)
    N_img = PermGroup(nhat, nT)
    P_img = PermGroup(pgen, nT)
    kernel_order = cat.P_group.order() // P_img.order()
    ker_phi = sum(1 for g in cat.Q_group.elements() if cat.phi(g) == tuple(range(cat.n_proj)))
    one = tuple(range(nT))
    vker_trivial = all(induced(W.embed_P(AffineElement(v, cat.identity_matrix))) == one
                       for v in cat.translation_gens)
    stab = full.point_stabilizer(0)
    return {
        "points": nT,
        "order": full.order(),
        "expected_order": nT * nT,
        "nhat_order": N_img.order(),
        "nhat_regular": N_img.order() == nT and N_img.is_transitive(),
        "stabilizer_order": stab.order(),
        "identity_fixed_by_P": all(g[0] == 0 for g in pgen),
        "kernel_order": kernel_order,
        "expected_kernel_order": cat.k * ker_phi,
        "translations_in_kernel": vker_trivial,
        "primitive": is_primitive(full),
    }


def pi_cell_key(G: CosetGraph, f: np.ndarray) -> bytes:
    """Cell of the Left vertex ``P f`` in the partition Pi.

    The cell of ``u`` is ``{P f_t}``; its image under ``f`` is
    ``{P f_t f}``, so cells are the left cosets ``Nhat f``.  The key is the
    member whose first coordinate is the identity.
    """
    t = int(G.W.tinv[int(f[0])])
    return G.W.n_mul(G.W.c_hat(t), ftuple(f)).tobytes()


def pi_block_check(G: CosetGraph, ball: Ball, samples: int = 200, seed: int = 0x5EED) -> dict:
    if ball.center.side != LEFT or ball.radius < 2:
        raise GraphError("need a ball of radius >= 2 around a Left vertex")
    W = G.W
    cells: dict[bytes, list[VertexId]] = {}
    for x in ball.vertices:
        if x.side == LEFT:
            cells.setdefault(pi_cell_key(G, x.f()), []).append(x)
    nT = len(G.cat.T_elements)
    pi = [G.left_id(W.c_hat(t)) for t in range(nT)]
    u_cell = pi_cell_key(G, ball.center.f())
    shares = all(pi_cell_key(G, y.f()) == u_cell for y in pi)
    rng = random.Random(seed)
    multi = [c for c in cells.values() if len(c) > 1]
    tested = [pi] + multi
    ok = True
    for _ in range(samples):
        g = W.random(rng)
        for cell in tested:
            keys = {pi_cell_key(G, G.act(x, g).f()) for x in cell}
            if len(keys) != 1:
                ok = False
                break
        if not ok:
            break
    return {"cells_in_ball": len(cells), "cells_with_several_vertices": len(multi),
            "full_cells": sum(1 for c in cells.values() if len(c) == nT),
            "block_size": nT, "u_shares_cell_with_f_t": shares,
            "samples": samples, "block_property": ok}
