"""Pure numpy versions of the compiled kernels (same signatures)."""

import numpy as np


def tuple_mul(tmul, a, b):
    return tmul[a, b].astype(np.int32, copy=False)


def tuple_twist(conj, f, idx):
    return conj[f[idx]].astype(np.int32, copy=False)


def coset_members(tmul, rset, f):
    return tmul[rset, f[None, :]].astype(np.int32, copy=False)


def coset_lexmin(tmul, rset, f):
    cand = tmul[rset, f[None, :]]
    order = np.lexsort(cand.T[::-1])
    return cand[order[0]].astype(np.int32, copy=False)
