"""The ingredient groups for q^2:SL(2,q).

* ``V = F_q^2`` as row vectors, ordered lexicographically on field codes with
  the zero vector moved to the end (``z_1, ..., z_k`` with ``z_k = 0``).
* ``Q = SL(2,q)`` acting on the right, ``x -> x M``.
* ``P = V : Q``; ``AffineElement(v, m)`` is the product ``t_v * m`` (translate
  first), i.e. the map ``x -> (x + v) m``.
* ``T = PSL(2,q)`` on the projective line, points ``[1:0]`` then ``[x:1]``
  in field order, and ``phi(M)`` is the induced permutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from . import perm as P_
from .linalg import GF, prime_power
from .perm import Homomorphism, PermGroup

Vec = tuple
Mat2 = tuple  # (a, b, c, d) for [[a, b], [c, d]]

SUPPORTED_GRAPH_Q = (4, 5, 7, 8, 9)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class AffineElement:
    v: Vec
    m: Mat2

    def to_json(self) -> dict:
        a, b, c, d = self.m
        return {"v": list(self.v), "m": [[a, b], [c, d]]}


def order_psl2(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def order_sl2(q: int) -> int:
    return q * (q * q - 1)


class Catalog:
    """Field, vector ordering, P, Q, T and phi for a fixed q."""

    def __init__(self, p: int, m: int):
        q = p ** m
        if prime_power(p) != (p, 1):
            raise CatalogError("%d is not prime" % p)
        if q < 4:
            raise CatalogError("q = %d < 4: PSL(2,q) is not a non-abelian simple group" % q)
        self.F = F = GF(p, m)
        self.p, self.m, self.q = p, m, q
        self.k = q * q
        nz = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
        self.vectors: list[Vec] = nz + [(0, 0)]
        self.vindex = {v: i for i, v in enumerate(self.vectors)}
        self.zero = self.k - 1
        k = self.k
        add = np.zeros((k, k), dtype=np.int32)
        for i, x in enumerate(self.vectors):
            for j, y in enumerate(self.vectors):
                add[i, j] = self.vindex[(F.add(x[0], y[0]), F.add(x[1], y[1]))]
        self.add_idx = add
        self.neg_idx = np.array([self.vindex[(F.neg(x[0]), F.neg(x[1]))] for x in self.vectors],
                                dtype=np.int32)
        self.Q_gens: list[Mat2] = ([(1, t, 0, 1) for t in F.basis]
                                   + [(1, 0, t, 1) for t in F.basis])
        self.translation_gens: list[Vec] = [(t, 0) for t in F.basis] + [(0, t) for t in F.basis]
        self.P_gens: list[AffineElement] = (
            [AffineElement(v, self.identity_matrix) for v in self.translation_gens]
            + [AffineElement((0, 0), M) for M in self.Q_gens])
        self.n_proj = q + 1

    @classmethod
    def for_q(cls, q: int) -> "Catalog":
        pm = prime_power(q)
        if pm is None:
            raise CatalogError("%d is not a prime power" % q)
        return cls(*pm)

    def __repr__(self):
        return "Catalog(q=%d)" % self.q

    # -- SL(2,q) ------------------------------------------------------------
    identity_matrix: Mat2 = (1, 0, 0, 1)

    def mat_mul(self, A: Mat2, B: Mat2) -> Mat2:
        F = self.F
        a, b, c, d = A
        e, f, g, h = B
        return (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
                F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))

    def mat_inv(self, A: Mat2) -> Mat2:
        F = self.F
        a, b, c, d = A
        if self.det(A) != 1:
            raise CatalogError("matrix %r not in SL(2,%d)" % (A, self.q))
        return (d, F.neg(b), F.neg(c), a)

    def det(self, A: Mat2) -> int:
        F = self.F
        a, b, c, d = A
        return F.sub(F.mul(a, d), F.mul(b, c))

    def vec_mat(self, x: Vec, A: Mat2) -> Vec:
        F = self.F
        a, b, c, d = A
        return (F.add(F.mul(x[0], a), F.mul(x[1], c)), F.add(F.mul(x[0], b), F.mul(x[1], d)))

    def vec_add(self, x: Vec, y: Vec) -> Vec:
        return (self.F.add(x[0], y[0]), self.F.add(x[1], y[1]))

    def vec_neg(self, x: Vec) -> Vec:
        return (self.F.neg(x[0]), self.F.neg(x[1]))

    @cached_property
    def Q_elements(self) -> list[Mat2]:
        q = self.q
        out = [M for M in itertools.product(range(q), repeat=4) if self.det(M) == 1]
        if len(out) != order_sl2(q):
            raise CatalogError("SL(2,%d) enumeration gave %d elements" % (q, len(out)))
        return out

    @cached_property
    def Q_index(self) -> dict[Mat2, int]:
        return {M: i for i, M in enumerate(self.Q_elements)}

    def vector_perm(self, A: Mat2) -> tuple:
        """Permutation of vector indices induced by ``x -> x A``."""
        return tuple(self.vindex[self.vec_mat(x, A)] for x in self.vectors)

    def perm_to_matrix(self, g) -> Mat2:
        r1 = self.vectors[g[self.vindex[(1, 0)]]]
        r2 = self.vectors[g[self.vindex[(0, 1)]]]
        return (r1[0], r1[1], r2[0], r2[1])

    @cached_property
    def vec_act(self) -> np.ndarray:
        """``vec_act[i, j]`` = index of ``z_j Q_elements[i]``."""
        return np.array([self.vector_perm(M) for M in self.Q_elements], dtype=np.int32)

    # -- P = V : Q -------------------------------------------------------------
    def affine_mul(self, g: AffineElement, h: AffineElement) -> AffineElement:
        w = self.vec_mat(h.v, self.mat_inv(g.m))
        return AffineElement(self.vec_add(g.v, w), self.mat_mul(g.m, h.m))

    def affine_inv(self, g: AffineElement) -> AffineElement:
        return AffineElement(self.vec_neg(self.vec_mat(g.v, g.m)), self.mat_inv(g.m))

    def affine_act(self, g: AffineElement, x: Vec) -> Vec:
        return self.vec_mat(self.vec_add(x, g.v), g.m)

    def decompose(self, g: AffineElement) -> tuple[Vec, Mat2]:
        """``g = t_v * m`` with ``t_v`` in V and ``m`` in Q."""
        return g.v, g.m

    def recompose(self, v: Vec, A: Mat2) -> AffineElement:
        return self.affine_mul(AffineElement(v, self.identity_matrix), AffineElement((0, 0), A))

    def affine_perm(self, g: AffineElement) -> tuple:
        return tuple(self.vindex[self.affine_act(g, x)] for x in self.vectors)

    def random_affine(self, rng) -> AffineElement:
        return AffineElement(self.vectors[rng.randrange(self.k)],
                             self.Q_elements[rng.randrange(len(self.Q_elements))])

    @cached_property
    def P_group(self) -> PermGroup:
        return PermGroup([self.affine_perm(g) for g in self.P_gens], self.k)

    @cached_property
    def Q_group(self) -> PermGroup:
        return PermGroup([self.vector_perm(M) for M in self.Q_gens], self.k)

    # -- T and phi ---------------------------------------------------------------
    def proj_index(self, x: Vec) -> int:
        a, b = x
        if b == 0:
            if a == 0:
                raise CatalogError("zero vector has no projective point")
            return 0
        return 1 + self.F.mul(a, self.F.inv(b))

    @cached_property
    def proj_points(self) -> list[Vec]:
        return [(1, 0)] + [(x, 1) for x in range(self.q)]

    def phi_direct(self, A: Mat2) -> tuple:
        """Projective action of A on the q+1 points."""
        return tuple(self.proj_index(self.vec_mat(x, A)) for x in self.proj_points)

    @cached_property
    def phi(self) -> Homomorphism:
        return Homomorphism(self.Q_group, [self.phi_direct(M) for M in self.Q_gens])

    def phi_of(self, A: Mat2) -> tuple:
        return self.phi(self.vector_perm(A))

    @cached_property
    def T_group(self) -> PermGroup:
        return PermGroup([self.phi_direct(M) for M in self.Q_gens], self.n_proj)

    @cached_property
    def T_elements(self) -> list[tuple]:
        """Elements of T sorted by image sequence; index 0 is the identity."""
        return sorted(self.T_group.elements())

    @cached_property
    def T_index(self) -> dict[tuple, int]:
        return {t: i for i, t in enumerate(self.T_elements)}

    @cached_property
    def tmul(self) -> np.ndarray:
        els = self.T_elements
        idx = self.T_index
        n = len(els)
        out = np.zeros((n, n), dtype=np.int32)
        arr = np.array(els, dtype=np.int64)
        for i, a in enumerate(els):
            # row i: a * b for every b, i.e. b[a[x]]
            prods = arr[:, list(a)]
            out[i] = [idx[tuple(r)] for r in prods.tolist()]
        return out

    @cached_property
    def tinv(self) -> np.ndarray:
        return np.argmax(self.tmul == 0, axis=1).astype(np.int32)

    @cached_property
    def phi_table(self) -> list[tuple]:
        """``phi`` of every element of ``Q_elements``."""
        return [self.phi_direct(M) for M in self.Q_elements]

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj_table[i, t]`` = index of ``t^phi(Q_elements[i])``."""
        els = self.T_elements
        idx = self.T_index
        out = np.zeros((len(self.Q_elements), len(els)), dtype=np.int32)
        cache: dict[tuple, np.ndarray] = {}
        for i, s in enumerate(self.phi_table):
            row = cache.get(s)
            if row is None:
                row = np.array([idx[P_.conjugate(t, s)] for t in els], dtype=np.int32)
                cache[s] = row
            out[i] = row
        return out

    def conj_t(self, t: tuple, A: Mat2) -> tuple:
        return P_.conjugate(t, self.phi_direct(A))

    # -- stabilizer of z_1 -------------------------------------------------------
    @cached_property
    def Q1_group(self) -> PermGroup:
        return self.Q_group.point_stabilizer(0)

    @cached_property
    def Q1_gens(self) -> list[Mat2]:
        return [self.perm_to_matrix(g) for g in self.Q1_group.generators]

    def to_json(self) -> dict:
        return {
            "field": self.F.spec.to_json(),
            "k": self.k,
            "vector_order": [list(v) for v in self.vectors],
            "projective_points": [list(x) for x in self.proj_points],
            "P_gens": [g.to_json() for g in self.P_gens],
            "Q_gens": [[[a, b], [c, d]] for a, b, c, d in self.Q_gens],
            "T_gens": [list(t) for t in self.T_group.generators],
            "orders": {"P": self.P_group.order(), "Q": self.Q_group.order(),
                       "T": self.T_group.order()},
        }


@dataclass
class HypothesisReport:
    q: int
    two_transitive: bool
    degree: int
    degree_is_p_power: bool
    stabilizer_order: int
    centre_order: int
    centre_ok: bool
    image_order: int
    psl_order: int
    phi_ok: bool
    kernel_order: int

    @property
    def ok(self) -> bool:
        return self.two_transitive and self.degree_is_p_power and self.centre_ok and self.phi_ok

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def centre(group: PermGroup) -> list[tuple]:
    """Brute-force centre: elements commuting with every generator."""
    gens = group.generators
    return [z for z in group.elements()
            if all(P_.compose(z, g) == P_.compose(g, z) for g in gens)]


def make_catalog(p: int, m: int) -> Catalog:
    c = Catalog(p, m)
    return c


def check_hypothesis(c: Catalog) -> HypothesisReport:
    P = c.P_group
    deg = P.degree
    r = deg
    while r % c.p == 0:
        r //= c.p
    Q1 = c.Q1_group
    Z = centre(Q1)
    T = c.T_group
    kernel = [g for g in c.Q_group.elements() if P_.is_identity(c.phi(g))]
    return HypothesisReport(
        q=c.q,
        two_transitive=P.is_2_transitive(),
        degree=deg,
        degree_is_p_power=(r == 1 and deg > 1),
        stabilizer_order=Q1.order(),
        centre_order=len(Z),
        centre_ok=len(Z) > 1 and len(Z) % c.p == 0,
        image_order=T.order(),
        psl_order=order_psl2(c.q),
        phi_ok=T.order() == order_psl2(c.q),
        kernel_order=len(kernel),
    )
