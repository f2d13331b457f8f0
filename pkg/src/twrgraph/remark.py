"""ASL(5,2): the induced module from the Levi quotient of a vector stabilizer.

G = SL(5,2) acts on the 31 non-zero row vectors of F_2^5.  The stabilizer
of ``x = e_0`` is ``2^4:SL(4,2)``; an element ``h`` of it has first row
``e_0`` and its lower-right 4x4 block ``D`` gives the Levi quotient map.
W is the module induced from a 4-dimensional module of that quotient, built
on the right cosets ``G_x g_y`` (``x g_y = y``): the block of ``g`` in
position ``(y, y g)`` is the Levi image of ``g_y g g_(yg)^-1``.

The Levi quotient SL(4,2) has two 4-dimensional "natural" modules,
``w -> w D`` and its dual ``w -> w D^-T``; both are computed.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from . import linalg as la
from .perm import PermGroup

N = 5
Mat = tuple  # rows as bitmasks


def vec_mat(x: int, A: Mat) -> int:
    out = 0
    for i in range(N):
        if x >> i & 1:
            out ^= A[i]
    return out


def mat_mul(A: Mat, B: Mat) -> Mat:
    return tuple(vec_mat(r, B) for r in A)


def to_array(A: Mat, n: int = N) -> np.ndarray:
    return np.array([[r >> j & 1 for j in range(n)] for r in A], dtype=np.int64)


def from_array(M) -> Mat:
    return tuple(int(sum(int(v) << j for j, v in enumerate(row))) for row in np.asarray(M))


def mat_inv(A: Mat) -> Mat:
    M = np.hstack([to_array(A), np.eye(N, dtype=np.int64)])
    R, piv = la.rref(M, 2)
    if piv[:N] != list(range(N)):
        raise ValueError("singular matrix")
    return from_array(R[:, N:])


IDENTITY: Mat = tuple(1 << i for i in range(N))
GENS: list[Mat] = [
    tuple((1 << 0 | 1 << 1) if i == 0 else 1 << i for i in range(N)),   # I + E_01
    tuple(1 << ((i + 1) % N) for i in range(N)),                        # cyclic shift
]
BASE_VECTOR = 1


def vector_perm(A: Mat) -> tuple:
    return tuple(vec_mat(y, A) - 1 for y in range(1, 2**N))


def sl52_group() -> PermGroup:
    return PermGroup([vector_perm(g) for g in GENS], 2**N - 1)


def transversal() -> dict[int, Mat]:
    out = {BASE_VECTOR: IDENTITY}
    queue = deque([BASE_VECTOR])
    while queue:
        y = queue.popleft()
        for g in GENS:
            z = vec_mat(y, g)
            if z not in out:
                out[z] = mat_mul(out[y], g)
                queue.append(z)
    return out


def levi(h: Mat) -> np.ndarray:
    if h[0] != BASE_VECTOR:
        raise ValueError("element does not fix the base vector")
    return to_array(h)[1:, 1:]


def levi_dual(h: Mat) -> np.ndarray:
    D = levi(h)
    inv = la.solve_matrix_inverse(D, 2)
    return inv.T % 2


def induced_matrix(g: Mat, trans: dict[int, Mat], rho) -> np.ndarray:
    pts = sorted(trans)
    pos = {y: i for i, y in enumerate(pts)}
    d = 4
    M = np.zeros((d * len(pts), d * len(pts)), dtype=np.int64)
    for y in pts:
        z = vec_mat(y, g)
        h = mat_mul(mat_mul(trans[y], g), mat_inv(trans[z]))
        i, j = pos[y], pos[z]
        M[d * i:d * i + d, d * j:d * j + d] = rho(h)
    return M


def induced_module(rho) -> la.ModuleAction:
    trans = transversal()
    return la.ModuleAction(2, 4 * len(trans), [induced_matrix(g, trans, rho) for g in GENS])


def natural_module() -> la.ModuleAction:
    return la.ModuleAction(2, N, [to_array(g) for g in GENS])


def stabilizer_centre_order() -> dict:
    """|G_x| and |Z(G_x)| via the commutant of G_x on F_2^5."""
    G = sl52_group()
    x = BASE_VECTOR - 1
    Gx = G.point_stabilizer(x)
    mats = [from_array(np.array([[(g[(1 << i) - 1] + 1) >> j & 1 for j in range(N)]
                                  for i in range(N)])) for g in Gx.generators]
    A = la.ModuleAction(2, N, [to_array(m) for m in mats])
    comm = la.equivariant_hom_space(A, A)
    centre = []
    for c in itertools.product(range(2), repeat=len(comm)):
        Z = sum((ci * B for ci, B in zip(c, comm)), np.zeros((N, N), dtype=np.int64)) % 2
        if la.rank(Z, 2) < N:
            continue
        if vector_perm(from_array(Z)) in Gx:
            centre.append(Z)
    return {"order": G.order(), "stabilizer_order": Gx.order(),
            "commutant_dim": len(comm), "centre_order": len(centre)}


def remark_report() -> dict:
    """Hom dimensions for both Levi modules plus the stabilizer centre.

    ``hom_dim`` is taken with the dual Levi module (the quotient action on
    column vectors, i.e. G acting on points of the dual space).  With the
    row-vector quotient ``w -> w D`` the natural module is itself a quotient
    of V restricted to G_x, so that hom space is 1-dimensional by Frobenius
    reciprocity; both numbers are reported.
    """
    V = natural_module()
    out = stabilizer_centre_order()
    dims = {}
    for name, rho in (("levi_dual", levi_dual), ("levi_natural", levi)):
        Wm = induced_module(rho)
        out["W_dim"] = Wm.dim
        dims[name] = len(la.equivariant_hom_space(V, Wm))
    out["hom_dim"] = dims["levi_dual"]
    out["hom_dim_by_levi_module"] = dims
    out["ok"] = (out["hom_dim"] == 0 and out["W_dim"] == 124 and out["centre_order"] == 1
                 and out["stabilizer_order"] == 322560)
    return out
