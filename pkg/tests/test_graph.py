import random

import numpy as np
import pytest

from twrgraph.catalog import AffineElement
from twrgraph.graph import (LEFT, MAX_RADIUS, RIGHT, CosetGraph, GraphError, block_action_check,
                            n_orbit_invariant, pi_block_check, star_quotient_check,
                            two_arc_orbit_check)
from twrgraph.wreath import TwElement

from conftest import catalog, rdata


def random_RQ(G, rng):
    r = G.R[rng.randrange(len(G.R))]
    M = G.cat.Q_elements[rng.randrange(len(G.cat.Q_elements))]
    return TwElement(np.ascontiguousarray(r), AffineElement((0, 0), M))


def test_base_vertices(G4):
    W = G4.W
    assert G4.u.side == LEFT and np.array_equal(G4.u.f(), W.one_f)
    assert G4.v.side == RIGHT and G4.v.w == G4.cat.zero and np.array_equal(G4.v.f(), W.one_f)
    f = W.random_N(random.Random(1))
    assert np.array_equal(G4.canonical_left(W.embed_N(f)).f(), f)
    for r in G4.R:
        assert G4.canonical_right(W.embed_N(r)) == G4.v


def test_left_label_coset_invariance(G4):
    W, c = G4.W, G4.cat
    rng = random.Random(2)
    for _ in range(1000):
        g = W.random(rng)
        h = W.embed_P(c.random_affine(rng))
        assert G4.canonical_left(W.mul(h, g)) == G4.canonical_left(g)


@pytest.mark.parametrize("q", [4, 5])
def test_right_label_oracle(q):
    G = CosetGraph(catalog(q), rdata(q))
    W = G.W
    rng = random.Random(q)
    same = 0
    for i in range(1000):
        g1 = W.random(rng)
        g2 = W.mul(random_RQ(G, rng), g1) if i % 2 else W.random(rng)
        equal = G.canonical_right(g1) == G.canonical_right(g2)
        member = G.in_RQ(W.mul(g2, W.inv(g1)))
        assert equal == member
        same += equal
    assert same >= 500


def test_left_label_oracle(G4):
    W = G4.W
    rng = random.Random(8)
    for i in range(500):
        g1 = W.random(rng)
        g2 = W.mul(W.embed_P(G4.cat.random_affine(rng)), g1) if i % 2 else W.random(rng)
        h = W.mul(g2, W.inv(g1))
        in_P = not h.f.any()
        assert (G4.canonical_left(g1) == G4.canonical_left(g2)) == in_P


def test_u_adjacent_to_translates(G4):
    W, c = G4.W, G4.cat
    assert G4.adjacent(G4.u, G4.v)
    nb = {G4.canonical_right(W.embed_P(AffineElement(w, c.identity_matrix))) for w in c.vectors}
    assert len(nb) == 16
    assert all(G4.adjacent(G4.u, y) for y in nb)
    assert nb == set(G4.neighbors(G4.u))


def test_neighbor_counts_and_sides(G4, G5):
    for G, k in ((G4, 16), (G5, 25)):
        for x in (G.u, G.v):
            nb = G.neighbors(x)
            assert len(nb) == len(set(nb)) == k
            assert all(y.side != x.side for y in nb)
            assert nb == sorted(nb)
            assert nb == G.neighbors_by_transversal(x)


def test_adjacency_symmetry_and_enumeration(G4):
    b = G4.ball(G4.u, 2)
    for x in b.closed():
        for y in b.adjacency[x]:
            assert G4.adjacent(x, y) and G4.adjacent(y, x) and G4.adjacent_via_left(x, y)
            assert x in G4.neighbors(y)


def test_ball_sizes(G4):
    assert len(G4.ball(G4.u, 0)) == 1
    b1 = G4.ball(G4.u, 1)
    assert len(b1) == 17 and b1.is_bipartite()
    with pytest.raises(GraphError):
        G4.ball(G4.u, MAX_RADIUS + 1)


def test_ball_determinism_across_threads():
    c, r = catalog(4), rdata(4)
    sizes = []
    orders = []
    for threads in (1, 3, 1):
        G = CosetGraph(c, r, threads=threads)
        b = G.ball(G.u, 2)
        sizes.append(len(b))
        orders.append(b.vertices)
    assert sizes[0] == sizes[1] == sizes[2]
    assert orders[0] == orders[1] == orders[2]


def test_act_is_right_action(G4):
    W = G4.W
    rng = random.Random(4)
    x = G4.neighbors(G4.u)[3]
    for _ in range(50):
        g, h = W.random(rng), W.random(rng)
        assert G4.act(G4.act(x, g), h) == G4.act(x, W.mul(g, h))


def test_stabilizer_generators_fix_base(G4):
    assert all(G4.fixes(g, G4.u) for g in G4.stabilizer_gens_u())
    assert all(G4.fixes(g, G4.v) for g in G4.stabilizer_gens_v())
    with pytest.raises(GraphError):
        two_arc_orbit_check(G4, G4.v, G4.stabilizer_gens_u())


def test_two_arcs_q4(G4):
    for center, gens in ((G4.u, G4.stabilizer_gens_u()), (G4.v, G4.stabilizer_gens_v())):
        d = two_arc_orbit_check(G4, center, gens)
        assert d == {"one_arcs": 16, "one_arc_orbits": 1, "count": 240, "orbit_count": 1}


def test_star_quotient_q4(G4):
    assert G4.cat.vectors[n_orbit_invariant(G4.v)] == (0, 0)
    with pytest.raises(GraphError):
        n_orbit_invariant(G4.u)
    d = star_quotient_check(G4, G4.ball(G4.u, 1), samples=100)
    assert d["invariant_constant"] and d["neighbor_values_distinct"]
    assert d["star"] and d["quotient"] == "K_{1,16}"


def test_block_action_q4(G4):
    d = block_action_check(G4)
    assert d["points"] == 60 and d["order"] == 3600
    assert d["nhat_regular"] and d["stabilizer_order"] == 60
    assert d["identity_fixed_by_P"]
    assert d["kernel_order"] == d["expected_kernel_order"] == 16
    assert d["translations_in_kernel"] and d["primitive"]


def test_pi_block_q4(G4):
    d = pi_block_check(G4, G4.ball(G4.u, 2), samples=50)
    assert d["u_shares_cell_with_f_t"] and d["block_property"]
    with pytest.raises(GraphError):
        pi_block_check(G4, G4.ball(G4.u, 1))


def test_pi_cells_detect_wrong_partition(G4):
    """Right cosets f Nhat do not form a block: the check must be able to fail."""
    from twrgraph import graph as gmod
    W = G4.W
    orig = gmod.pi_cell_key

    def right_key(G, f):
        t = int(W.tinv[int(f[0])])
        return W.n_mul(np.ascontiguousarray(f, dtype=np.int32), W.c_hat(t)).tobytes()

    gmod.pi_cell_key = right_key
    try:
        d = gmod.pi_block_check(G4, G4.ball(G4.u, 2), samples=50)
    finally:
        gmod.pi_cell_key = orig
    assert not d["block_property"]
