import random

import numpy as np

from twrgraph import linalg as la
from twrgraph import remark as rm


def random_element(rng, length=12):
    g = rm.IDENTITY
    for _ in range(length):
        g = rm.mat_mul(g, rm.GENS[rng.randrange(2)])
    return g


def test_sl52_order():
    assert rm.sl52_group().order() == 9999360


def test_transversal():
    t = rm.transversal()
    assert len(t) == 31
    for y, g in t.items():
        assert rm.vec_mat(rm.BASE_VECTOR, g) == y


def test_induced_matrices_form_a_representation():
    trans = rm.transversal()
    rng = random.Random(0)
    for rho in (rm.levi, rm.levi_dual):
        for _ in range(5):
            g, h = random_element(rng), random_element(rng)
            lhs = rm.induced_matrix(rm.mat_mul(g, h), trans, rho)
            rhs = la.mat_mul(rm.induced_matrix(g, trans, rho), rm.induced_matrix(h, trans, rho), 2)
            assert np.array_equal(lhs, rhs)


def test_levi_is_homomorphism_on_stabilizer():
    rng = random.Random(1)
    trans = rm.transversal()

    def stab_element():
        g = random_element(rng)
        return rm.mat_mul(g, rm.mat_inv(trans[rm.vec_mat(rm.BASE_VECTOR, g)]))

    for _ in range(20):
        h, k = stab_element(), stab_element()
        assert np.array_equal(rm.levi(rm.mat_mul(h, k)),
                              la.mat_mul(rm.levi(h), rm.levi(k), 2))


def test_remark_report():
    d = rm.remark_report()
    assert d["W_dim"] == 124
    assert d["stabilizer_order"] == 322560
    assert d["centre_order"] == 1
    assert d["hom_dim"] == 0
    # the row-vector Levi module is a quotient of V restricted to G_x
    assert d["hom_dim_by_levi_module"]["levi_natural"] == 1
    assert d["ok"]
