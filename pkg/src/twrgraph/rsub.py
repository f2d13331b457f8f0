"""The subgroup R <= N_k with R ~ V as Q-modules and RQ ~ P.

Pipeline: an element ``u`` of order p in T fixed by phi(Q_1); its
translates ``u_x = u^phi(g_x)`` (one per non-zero vector, placed in
coordinate ``x``) span the permutation module W; an injective Q-map
``V -> W`` found by solving the equivariance equations gives R.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from . import perm as P_
from .catalog import AffineElement, Catalog
from .wreath import Wreath

T_ENUMERATION = "sorted image sequences"


class RConstructionError(RuntimeError):
    pass


def find_u1(cat: Catalog) -> int:
    """Index (in ``T_elements``) of the first order-p element fixed by phi(Q_1).

    Candidates from phi(Q_1) are tried first, then all of T.
    """
    fix = [cat.phi_direct(M) for M in cat.Q1_gens]
    image = sorted(set(cat.phi_direct(cat.perm_to_matrix(g)) for g in cat.Q1_group.elements()))

    def good(t):
        return (not P_.is_identity(t) and P_.perm_order(t) == cat.p
                and all(P_.conjugate(t, s) == t for s in fix))

    for t in image:
        if good(t):
            return cat.T_index[t]
    for t in cat.T_elements:
        if good(t):
            return cat.T_index[t]
    raise RConstructionError("no element of order %d in T centralised by phi(Q_1)" % cat.p)


def vector_transversal(cat: Catalog) -> dict[int, tuple]:
    """``g_x`` in Q with ``z_1 g_x = x`` for every non-zero vector index x."""
    out = {0: cat.identity_matrix}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for M in cat.Q_gens:
            j = cat.vindex[cat.vec_mat(cat.vectors[i], M)]
            if j not in out:
                out[j] = cat.mat_mul(out[i], M)
                queue.append(j)
    if len(out) != cat.k - 1:
        raise RConstructionError("Q is not transitive on non-zero vectors")
    return out


def build_translates(cat: Catalog, u: int, checks: int = 100, seed: int = la.SEED) -> list[int]:
    """``u_x`` for the non-zero vectors, in vector order (T indices)."""
    trans = vector_transversal(cat)
    qi = cat.Q_index
    ux = [int(cat.conj_table[qi[trans[x]], u]) for x in range(cat.k - 1)]
    rng = random.Random(seed)
    for _ in range(checks):
        M = cat.Q_elements[rng.randrange(len(cat.Q_elements))]
        x = cat.vindex[cat.vec_mat(cat.vectors[0], M)]
        if int(cat.conj_table[qi[M], u]) != ux[x]:
            raise RConstructionError("translate of u depends on the coset representative")
    return ux


def v_module(cat: Catalog) -> la.ModuleAction:
    """V as an F_p-module of dimension 2m (coefficient coordinates)."""
    return la.ModuleAction(cat.p, 2 * cat.m, [v_matrix(cat, M) for M in cat.Q_gens])


def v_coords(cat: Catalog, x: tuple) -> list[int]:
    return cat.F.to_coeffs(x[0]) + cat.F.to_coeffs(x[1])


def v_basis(cat: Catalog) -> list[tuple]:
    return [(b, 0) for b in cat.F.basis] + [(0, b) for b in cat.F.basis]


def v_matrix(cat: Catalog, M) -> np.ndarray:
    return np.array([v_coords(cat, cat.vec_mat(b, M)) for b in v_basis(cat)], dtype=np.int64)


def w_perm(cat: Catalog, M) -> tuple:
    return cat.vector_perm(M)[: cat.k - 1]


def w_module(cat: Catalog) -> la.ModuleAction:
    """Permutation module on the non-zero vectors."""
    return la.permutation_module([w_perm(cat, M) for M in cat.Q_gens], cat.k - 1, cat.p)


def f_map(cat: Catalog) -> np.ndarray:
    """The Q-map ``W -> V``, ``e_x -> x``."""
    return np.array([v_coords(cat, x) for x in cat.vectors[:-1]], dtype=np.int64)


@dataclass
class RData:
    cat: Catalog
    u1: int
    u: list[int]
    embedding: np.ndarray          # 2m x (k-1): psi on coefficient coordinates
    metadata: dict = field(default_factory=dict)

    @property
    def basis(self) -> np.ndarray:
        return self.embedding

    def __post_init__(self):
        cat = self.cat
        tm = cat.tmul
        self._pow = np.zeros((cat.k - 1, cat.p), dtype=np.int32)
        for x, t in enumerate(self.u):
            acc = 0
            for e in range(cat.p):
                self._pow[x, e] = acc
                acc = int(tm[acc, t])

    def element(self, w) -> np.ndarray:
        """The N-element with coordinate x equal to ``u_x^(w_x)``, trivial at z_k."""
        w = np.asarray(w, dtype=np.int64) % self.cat.p
        f = np.zeros(self.cat.k, dtype=np.int32)
        f[:-1] = self._pow[np.arange(self.cat.k - 1), w]
        return f

    def psi_coords(self, c) -> np.ndarray:
        return self.element(la.mat_mul(np.asarray(c).reshape(1, -1), self.embedding, self.cat.p)[0])

    def psi(self, x: tuple) -> np.ndarray:
        return self.psi_coords(v_coords(self.cat, x))

    @property
    def elements(self) -> np.ndarray:
        """All of R as a (q^2, k) array, row i = psi(z_i)."""
        if not hasattr(self, "_all"):
            self._all = np.ascontiguousarray(
                np.stack([self.psi(x) for x in self.cat.vectors]).astype(np.int32))
        return self._all

    def basis_elements(self) -> list[np.ndarray]:
        return [self.element(r) for r in self.embedding]

    def to_json(self) -> dict:
        cat = self.cat
        els = cat.T_elements
        return {
            "q": cat.q,
            "u1": list(els[self.u1]),
            "u": [list(els[t]) for t in self.u],
            "R_basis": [list(map(int, r)) for r in self.embedding],
            "psi": la.matrix_to_json(self.embedding, cat.p),
            "metadata": self.metadata,
        }


def construct_R(cat: Catalog) -> RData:
    u1 = find_u1(cat)
    ux = build_translates(cat, u1)
    X = la.submodule_copy_of(v_module(cat), w_module(cat))
    if X is None:
        raise RConstructionError("no injective Q-map V -> W for q = %d" % cat.q)
    meta = {
        "vector_order": "lexicographic on field codes, zero vector last",
        "T_enumeration": T_ENUMERATION,
        "seed": la.SEED,
        "modulus": list(cat.F.spec.modulus),
        "hom_space_dim": len(la.equivariant_hom_space(v_module(cat), w_module(cat))),
    }
    return RData(cat, u1, ux, X, meta)


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.ok else "fail", "detail": self.detail}


def check_R(cat: Catalog, r: RData, W: Wreath | None = None) -> list[Check]:
    """The invariants of R, in a fixed order."""
    W = W or Wreath(cat)
    p, k = cat.p, cat.k
    out: list[Check] = []
    orders = {P_.perm_order(cat.T_elements[t]) for t in r.u}
    out.append(Check("u_x have order p", orders == {p}, {"orders": sorted(orders)}))
    fix = all(P_.conjugate(cat.T_elements[r.u1], cat.phi_direct(M)) == cat.T_elements[r.u1]
              for M in cat.Q1_gens)
    out.append(Check("u_1 fixed by phi(Q_1)", fix))
    permutes = all(int(cat.conj_table[cat.Q_index[M], r.u[x]])
                   == r.u[cat.vindex[cat.vec_mat(cat.vectors[x], M)]]
                   for M in cat.Q_gens for x in range(k - 1))
    out.append(Check("Q permutes the u_x", permutes))
    B = r.basis_elements()
    one = W.one_f
    commute = all(np.array_equal(W.n_mul(a, b), W.n_mul(b, a)) for a in B for b in B)
    exp_p = True
    for a in B:
        acc = one
        for _ in range(p):
            acc = W.n_mul(acc, a)
        exp_p &= bool(np.array_equal(acc, one))
    out.append(Check("R elementary abelian", commute and exp_p))
    out.append(Check("R <= N_k", all(W.in_N_k(b) for b in B)))
    Wm = w_module(cat)
    compat = all(np.array_equal(W.twist(r.element(row), AffineElement((0, 0), M)),
                                r.element(la.mat_mul(row.reshape(1, -1), Pg, p)[0]))
                 for row in r.embedding for M, Pg in zip(cat.Q_gens, Wm.mats))
    out.append(Check("conjugation matches permutation module", compat))
    dim = 2 * cat.m
    rk = la.rank(r.embedding, p)
    stacked = np.vstack([r.embedding] + [la.mat_mul(r.embedding, Pg, p) for Pg in Wm.mats])
    inv_rank = la.rank(stacked, p)
    out.append(Check("R normalised by Q", rk == dim and inv_rank == dim,
                     {"rank": rk, "rank_with_conjugates": inv_rank}))
    Rall = r.elements
    distinct = len({row.tobytes() for row in Rall})
    out.append(Check("|R| = |V|", distinct == k, {"order": distinct, "expected": k}))
    out.append(Check("R meets the diagonal trivially",
                     sum(W.is_constant(row) for row in Rall) == 1))
    out.append(_psi_hom_check(cat, r, W))
    Vm = v_module(cat)
    equiv = la.is_equivariant(r.embedding, Vm, Wm)
    qact = all(np.array_equal(r.psi(cat.vec_mat(x, M)),
                              W.twist(r.psi(x), AffineElement((0, 0), M)))
               for M in cat.Q_gens for x in cat.vectors)
    out.append(Check("psi is a Q-module isomorphism", equiv and qact and rk == dim))
    rq = verify_RQ_iso_P(cat, r, W)
    out.append(Check("RQ isomorphic to P", rq["ok"], rq))
    return out


def _psi_hom_check(cat: Catalog, r: RData, W: Wreath) -> Check:
    vecs = cat.vectors
    second = vecs if cat.k ** 2 <= 10**5 else v_basis(cat)
    bad = None
    for x in vecs:
        px = r.psi(x)
        for y in second:
            if not np.array_equal(r.psi(cat.vec_add(x, y)), W.n_mul(px, r.psi(y))):
                bad = (list(x), list(y))
                break
        if bad:
            break
    zero_ok = bool(np.array_equal(r.psi((0, 0)), W.one_f))
    return Check("psi additive", bad is None and zero_ok,
                 {"pairs": "all" if second is vecs else "all x basis", "first_failure": bad})


def theta(W: Wreath, r: RData, g: AffineElement):
    """``t_v M -> psi(v) M``, the candidate isomorphism P -> RQ."""
    v, M = W.cat.decompose(g)
    return W.mul(W.embed_N(r.psi(v)), W.embed_P(AffineElement((0, 0), M)))


def verify_RQ_iso_P(cat: Catalog, r: RData, W: Wreath | None = None) -> dict:
    W = W or Wreath(cat)
    gens = cat.P_gens
    failure = None
    for a in gens:
        for b in gens:
            if theta(W, r, cat.affine_mul(a, b)) != W.mul(theta(W, r, a), theta(W, r, b)):
                failure = [a.to_json(), b.to_json()]
                break
        if failure:
            break
    order_ok = len(r.elements) * cat.Q_group.order() == cat.P_group.order()
    return {"ok": failure is None and order_ok, "pairs_checked": len(gens) ** 2,
            "first_failure": failure, "order_count": order_ok}


def build_R(cat: Catalog) -> RData:
    r = construct_R(cat)
    bad = [c.name for c in check_R(cat, r) if not c.ok]
    if bad:
        raise RConstructionError("R fails: %s" % ", ".join(bad))
    return r


def corrupt(r: RData) -> RData:
    """A copy of ``r`` whose first basis vector is perturbed (fault injection)."""
    X = r.embedding.copy()
    X[0, int(np.argmax(X[0] == 0))] = 1
    return RData(r.cat, r.u1, list(r.u), X, dict(r.metadata, fault="R_basis[0] perturbed"))


def bilinear_cross_check(cat: Catalog, r: RData) -> dict:
    """Compare R with the complement of ker F under the standard form."""
    p = cat.p
    Fm = f_map(cat)
    Wm, Vm = w_module(cat), v_module(cat)
    out = {"F_equivariant": la.is_equivariant(Fm, Wm, Vm), "rank_F": la.rank(Fm, p)}
    K = la.kernel(Fm, p)
    out["kernel_dim"] = int(K.shape[0])
    try:
        la.orthocomplement(K, cat.k - 1, p)
        out["nondegenerate"] = True
    except la.DegenerateForm as exc:
        out.update(nondegenerate=False, radical_dim=int(exc.radical.shape[0]),
                   radical_equals_R=la.same_subspace(exc.radical, r.embedding, p))
    perp = la.null_space(K, p)
    out["complement_dim"] = int(perp.shape[0])
    images = [X for X in la.equivariant_hom_space(Vm, Wm) if la.rank(X, p) == Vm.dim]
    out["equals_an_embedding_image"] = any(la.same_subspace(X, perp, p) for X in images)
    out["equals_R"] = la.same_subspace(r.embedding, perp, p)
    # action of Q restricted to the complement, in the complement's basis
    mats = []
    for Pg in Wm.mats:
        img = la.mat_mul(perp, Pg, p)
        rows = [la.solve(perp, row, p) for row in img]
        if any(x is None for x in rows):
            out["invariant"] = False
            return out
        mats.append(np.array(rows))
    out["invariant"] = True
    sub = la.ModuleAction(p, perp.shape[0], mats)
    out["isomorphic_to_V"] = (perp.shape[0] == Vm.dim
                              and la.submodule_copy_of(Vm, sub) is not None)
    return out


def connectivity_premise(cat: Catalog, r: RData, W: Wreath | None = None) -> Check:
    """R is not centralised by V ker(phi): some basis element moves under a generator."""
    W = W or Wreath(cat)
    ident = tuple(range(cat.n_proj))
    ker = [cat.perm_to_matrix(g) for g in cat.Q_group.elements() if cat.phi(g) == ident]
    gens = ([AffineElement(v, cat.identity_matrix) for v in cat.translation_gens]
            + [AffineElement((0, 0), M) for M in ker])
    witness = None
    for i, b in enumerate(r.basis_elements()):
        for g in gens:
            if not np.array_equal(W.twist(b, g), b):
                witness = {"basis_index": i, "moved_by": g.to_json()}
                break
        if witness:
            break
    # the centraliser of V is the diagonal; R meets it trivially
    diag = sum(1 for row in r.elements if W.is_constant(row))
    return Check("R not centralised by V ker(phi)", witness is not None,
                 {"witness": witness, "diagonal_elements_in_R": diag,
                  "conclusion": "connected (theory-backed)" if witness else None})
