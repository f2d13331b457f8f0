import random

import numpy as np
import pytest

from twrgraph import linalg as la
from twrgraph.catalog import SUPPORTED_GRAPH_Q, AffineElement, Catalog
from twrgraph.perm import conjugate, perm_order
from twrgraph.rsub import (bilinear_cross_check, build_R, build_translates, check_R,
                           connectivity_premise, corrupt, find_u1, vector_transversal)
from twrgraph.wreath import Wreath

from conftest import catalog, rdata


def test_u1_q4(cat4):
    c = cat4
    u = c.T_elements[find_u1(c)]
    assert perm_order(u) == 2
    image = {c.phi_direct(c.perm_to_matrix(g)) for g in c.Q1_group.elements()}
    assert u in image  # inside the Klein four-group phi(Q_1)
    assert all(conjugate(u, s) == u for s in image)


def test_u1_q5(cat5):
    c = cat5
    u = c.T_elements[find_u1(c)]
    assert perm_order(u) == 5
    assert all(conjugate(u, c.phi_direct(M)) == u for M in c.Q1_gens)


def test_u1_is_first_in_brute_scan(cat4, cat5):
    for c in (cat4, cat5):
        fixed = [i for i, t in enumerate(c.T_elements)
                 if perm_order(t) == c.p
                 and all(conjugate(t, c.phi_direct(c.perm_to_matrix(g))) == t
                         for g in c.Q1_group.elements())]
        assert find_u1(c) in fixed


def test_translates(cat4):
    c = cat4
    u = find_u1(c)
    ux = build_translates(c, u)
    assert len(ux) == 15 and ux[0] == u
    assert {perm_order(c.T_elements[t]) for t in ux} == {2}
    trans = vector_transversal(c)
    for x, g in trans.items():
        assert c.vec_mat(c.vectors[0], g) == c.vectors[x]


@pytest.mark.parametrize("q", SUPPORTED_GRAPH_Q)
def test_R_invariants(q):
    c = catalog(q)
    r = rdata(q)
    checks = check_R(c, r)
    assert [ch.name for ch in checks if not ch.ok] == []
    assert r.embedding.shape == (2 * c.m, c.k - 1)
    assert len(r.elements) == q * q
    W = Wreath(c)
    assert all(W.in_N_k(b) for b in r.basis_elements())
    assert connectivity_premise(c, r, W).ok
    assert any(not W.is_constant(b) for b in r.basis_elements())


def test_R_closure_oracle(cat4):
    """The subgroup generated by the basis, by brute-force closure in N, has order 16."""
    W = Wreath(cat4)
    r = rdata(4)
    gens = r.basis_elements()
    seen = {W.one_f.tobytes(): W.one_f}
    frontier = [W.one_f]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = W.n_mul(a, b)
                if c.tobytes() not in seen:
                    seen[c.tobytes()] = c
                    nxt.append(c)
        frontier = nxt
    assert set(seen) == {row.tobytes() for row in r.elements}


def test_psi_exhaustive_q4(cat4):
    c = cat4
    r = rdata(4)
    W = Wreath(c)
    assert np.array_equal(r.psi((0, 0)), W.one_f)
    for x in c.vectors:
        for y in c.vectors:
            assert np.array_equal(r.psi(c.vec_add(x, y)), W.n_mul(r.psi(x), r.psi(y)))
        for M in c.Q_gens:
            assert np.array_equal(r.psi(c.vec_mat(x, M)),
                                  W.twist(r.psi(x), AffineElement((0, 0), M)))


def test_RQ_isomorphic_to_P_on_random_pairs(cat5):
    from twrgraph.rsub import theta
    c = cat5
    r = rdata(5)
    W = Wreath(c)
    rng = random.Random(1)
    for _ in range(300):
        a, b = c.random_affine(rng), c.random_affine(rng)
        assert theta(W, r, c.affine_mul(a, b)) == W.mul(theta(W, r, a), theta(W, r, b))


def test_fault_injection_fails_at_normalised():
    c = catalog(4)
    bad = corrupt(rdata(4))
    first = next(ch.name for ch in check_R(c, bad) if not ch.ok)
    assert first == "R normalised by Q"


def test_build_R_raises_nothing_for_q4():
    r = build_R(catalog(4))
    assert r.metadata["hom_space_dim"] >= 1


@pytest.mark.parametrize("q", [4, 5, 7])
def test_bilinear_route(q):
    d = bilinear_cross_check(catalog(q), rdata(q))
    assert d["F_equivariant"]
    assert d["rank_F"] == 2 * catalog(q).m
    assert d["kernel_dim"] == q * q - 1 - 2 * catalog(q).m
    assert d["complement_dim"] == 2 * catalog(q).m
    assert d["invariant"] and d["isomorphic_to_V"] and d["equals_R"]


def test_rdata_json(cat4):
    d = rdata(4).to_json()
    assert d["q"] == 4 and len(d["u"]) == 15 and len(d["R_basis"]) == 4
    M = la.matrix_from_json(d["psi"])
    assert np.array_equal(M, rdata(4).embedding)
