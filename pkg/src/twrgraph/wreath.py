"""Element arithmetic in G = T twr_phi P.

An element is stored as ``(f, p)`` meaning the product ``f * p`` with ``f``
in the base group N and ``p`` in P.  ``f`` is recorded by its values on the
transversal ``z_1, ..., z_k`` (the vectors of V), each value an index into
``Catalog.T_elements``.

P acts on N by ``f^g(x) = f(g x)``.  For ``g = t_v M`` and a transversal
element ``z_i`` we have ``g z_i = z_j M`` with ``z_j = v + z_i M^-1``, so

    f^g(z_i) = f(z_j)^phi(M).

Hence ``(f1 p1)(f2 p2) = (f1 * f2^(p1^-1)) (p1 p2)``.
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass

import numpy as np

from . import kernels
from .catalog import AffineElement, Catalog


@dataclass(frozen=True, eq=False)
class TwElement:
    f: np.ndarray
    p: AffineElement

    def key(self) -> tuple:
        return (self.f.tobytes(), self.p)

    def __eq__(self, other):
        return isinstance(other, TwElement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def ftuple(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.int32)


class Wreath:
    """The group G for one catalog."""

    def __init__(self, cat: Catalog):
        self.cat = cat
        self.k = cat.k
        self.tmul = np.ascontiguousarray(cat.tmul)
        self.tinv = cat.tinv
        self.conj_tab = cat.conj_table
        self.one_f = ftuple(np.zeros(self.k))
        self.one_p = AffineElement((0, 0), cat.identity_matrix)
        self._idx_cache: dict[AffineElement, tuple[np.ndarray, np.ndarray]] = {}

    # -- N ---------------------------------------------------------------
    def n_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return kernels.tuple_mul(self.tmul, a, b)

    def n_inv(self, a: np.ndarray) -> np.ndarray:
        return ftuple(self.tinv[a])

    def _twist_data(self, g: AffineElement) -> tuple[np.ndarray, np.ndarray]:
        hit = self._idx_cache.get(g)
        if hit is None:
            cat = self.cat
            mi = cat.Q_index[g.m]
            minv = cat.Q_index[cat.mat_inv(g.m)]
            idx = np.ascontiguousarray(cat.add_idx[cat.vindex[g.v], cat.vec_act[minv]])
            hit = (idx, np.ascontiguousarray(self.conj_tab[mi]))
            if len(self._idx_cache) < 200_000:
                self._idx_cache[g] = hit
        return hit

    def twist(self, f: np.ndarray, g: AffineElement) -> np.ndarray:
        """``f^g`` for ``g`` in P."""
        idx, conj = self._twist_data(g)
        return kernels.tuple_twist(conj, f, idx)

    def shift(self, f: np.ndarray, w_index: int) -> np.ndarray:
        """``f^(t_w)``: coordinate ``i`` becomes ``f(z_i + w)``."""
        return ftuple(f[self.cat.add_idx[w_index]])

    # -- G -----------------------------------------------------------------
    @property
    def identity(self) -> TwElement:
        return TwElement(self.one_f, self.one_p)

    def embed_N(self, f) -> TwElement:
        return TwElement(ftuple(f), self.one_p)

    def embed_P(self, p: AffineElement) -> TwElement:
        return TwElement(self.one_f, p)

    def normal_form(self, g: TwElement) -> tuple[np.ndarray, AffineElement]:
        return g.f, g.p

    def mul(self, a: TwElement, b: TwElement) -> TwElement:
        cat = self.cat
        f = self.n_mul(a.f, self.twist(b.f, cat.affine_inv(a.p)))
        return TwElement(f, cat.affine_mul(a.p, b.p))

    def inv(self, a: TwElement) -> TwElement:
        cat = self.cat
        return TwElement(self.twist(self.n_inv(a.f), a.p), cat.affine_inv(a.p))

    def conj(self, a: TwElement, b: TwElement) -> TwElement:
        """``a^b = b^-1 a b``."""
        return self.mul(self.mul(self.inv(b), a), b)

    def prod(self, *xs: TwElement) -> TwElement:
        out = self.identity
        for x in xs:
            out = self.mul(out, x)
        return out

    def random_N(self, rng: Random) -> np.ndarray:
        nT = len(self.cat.T_elements)
        return ftuple([rng.randrange(nT) for _ in range(self.k)])

    def random(self, rng: Random) -> TwElement:
        return TwElement(self.random_N(rng), self.cat.random_affine(rng))

    # -- subgroups of N --------------------------------------------------------
    def in_T_i(self, f: np.ndarray, i: int) -> bool:
        nz = np.nonzero(f)[0]
        return nz.size == 0 or (nz.size == 1 and int(nz[0]) == i)

    def in_N_k(self, f: np.ndarray) -> bool:
        return int(f[self.k - 1]) == 0

    def c_hat(self, t: int) -> np.ndarray:
        """The diagonal element ``f_t`` (all coordinates equal to ``t``)."""
        return ftuple(np.full(self.k, t))

    def is_constant(self, f: np.ndarray) -> bool:
        return bool(np.all(f == f[0]))

    def factor_action(self, g: TwElement) -> tuple:
        """Permutation ``i -> j`` of factor indices with ``(T_i)^g = T_j``.

        Only the P-part matters: for ``p = t_v M``, ``T_i^p = T_j`` where
        ``z_j = (z_i - v) M``.  This is the affine action of P on V
        transported along ``z Q -> -z``.
        """
        cat = self.cat
        v, M = cat.decompose(g.p)
        return tuple(cat.vindex[cat.vec_mat(cat.vec_add(z, cat.vec_neg(v)), M)]
                     for z in cat.vectors)

    # -- serialization ------------------------------------------------------------
    def f_perms(self, f: np.ndarray) -> list[tuple]:
        els = self.cat.T_elements
        return [els[int(i)] for i in f]

    def to_json(self, g: TwElement) -> dict:
        a, b, c, d = g.p.m
        return {"f": [list(t) for t in self.f_perms(g.f)], "v": list(g.p.v),
                "m": [[a, b], [c, d]]}

    def from_json(self, d: dict) -> TwElement:
        idx = self.cat.T_index
        f = ftuple([idx[tuple(t)] for t in d["f"]])
        (a, b), (c, e) = d["m"]
        return TwElement(f, AffineElement(tuple(d["v"]), (a, b, c, e)))


@dataclass
class CHatReport:
    v_centralises: bool
    kerphi_centralises: bool
    q_twists: bool
    q_acts_nontrivially: bool

    @property
    def ok(self) -> bool:
        return self.v_centralises and self.kerphi_centralises and self.q_twists \
            and self.q_acts_nontrivially

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def verify_c_hat(W: Wreath) -> CHatReport:
    """Check the diagonal subgroup against V ker(phi) and Q.

    (a) ``f_t^g = f_t`` for translation generators and for kernel elements of
    phi; (b) ``f_t^g = f_(t^phi(g))`` for Q generators; (c) Q moves some f_t.
    """
    cat = W.cat
    Tgens = [cat.T_index[t] for t in cat.T_group.generators]
    ker = [cat.perm_to_matrix(g) for g in cat.Q_group.elements()
           if cat.phi(g) == tuple(range(cat.n_proj))]
    v_ok = all(np.array_equal(W.twist(W.c_hat(t), AffineElement(v, cat.identity_matrix)),
                              W.c_hat(t))
               for t in Tgens for v in cat.translation_gens)
    ker_ok = all(np.array_equal(W.twist(W.c_hat(t), AffineElement((0, 0), M)), W.c_hat(t))
                 for t in Tgens for M in ker)
    qi = cat.Q_index
    tw_ok = all(np.array_equal(W.twist(W.c_hat(t), AffineElement((0, 0), M)),
                               W.c_hat(int(cat.conj_table[qi[M], t])))
                for t in range(len(cat.T_elements)) for M in cat.Q_gens)
    nontriv = any(not np.array_equal(W.twist(W.c_hat(t), AffineElement((0, 0), M)), W.c_hat(t))
                  for t in Tgens for M in cat.Q_gens)
    return CHatReport(v_ok, ker_ok, tw_ok, nontriv)
