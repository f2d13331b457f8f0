import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twrgraph.perm import (NotAHomomorphism, PermError, PermGroup, Homomorphism, check_perm,
                           closure, compose, conjugate, cycles, from_cycles, identity, inverse,
                           is_identity, perm_order, power)


def test_compose_is_left_to_right():
    a = from_cycles(3, (0, 1))
    b = from_cycles(3, (1, 2))
    # x -> a -> b : 0 -> 1 -> 2
    assert compose(a, b)[0] == 2
    assert compose(b, a)[0] == 1


def test_identity_and_inverse_laws():
    rng = random.Random(1)
    for _ in range(50):
        a = list(range(16)); rng.shuffle(a)
        b = list(range(16)); rng.shuffle(b)
        a, b = tuple(a), tuple(b)
        assert compose(a, identity(16)) == a
        assert compose(a, compose(b, inverse(b))) == a
        assert is_identity(compose(a, inverse(a)))


def test_five_cycle_order():
    c = from_cycles(5, (0, 1, 2, 3, 4))
    assert is_identity(power(c, 5))
    assert perm_order(c) == 5
    assert cycles(c) == [(0, 1, 2, 3, 4)]


def test_conjugate_convention():
    a = from_cycles(4, (0, 1))
    s = from_cycles(4, (1, 2))
    # a^s = s^-1 a s moves s-images of a's points
    assert conjugate(a, s) == from_cycles(4, (0, 2))


def test_check_perm_rejects_non_permutation():
    with pytest.raises(PermError):
        check_perm((0, 0, 1))


def test_a5_order_matches_closure():
    gens = [from_cycles(5, (0, 1, 2, 3, 4)), from_cycles(5, (2, 3, 4))]
    G = PermGroup(gens, 5)
    assert G.order() == 60 == len(closure(gens, 5))
    assert len(G.orbit(0)) == 5
    assert G.is_2_transitive()


def test_empty_generating_set():
    G = PermGroup([], 4)
    assert G.order() == 1
    assert list(G.elements()) == [identity(4)]


def test_cyclic_group_not_2_transitive():
    G = PermGroup([from_cycles(4, (0, 1, 2, 3))], 4)
    assert G.is_transitive()
    assert not G.is_2_transitive()


def test_sl24_on_nonzero_vectors(cat4):
    Q = cat4.Q_group
    assert Q.order() == 60
    assert len(closure(Q.generators, Q.degree)) == 60
    stab = Q.point_stabilizer(0)
    assert stab.order() == 4
    assert stab.order() * len(Q.orbit(0)) == Q.order()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=7), st.integers(min_value=1, max_value=3),
       st.integers(min_value=0, max_value=10**6))
def test_order_agrees_with_closure(n, ngens, seed):
    rng = random.Random(seed)
    gens = []
    for _ in range(ngens):
        p = list(range(n)); rng.shuffle(p)
        gens.append(tuple(p))
    G = PermGroup(gens, n)
    elems = closure(gens, n)
    assert G.order() == len(elems)
    assert set(G.elements()) == elems
    for g in itertools.islice(elems, 20):
        assert g in G
    x = rng.randrange(n)
    assert G.point_stabilizer(x).order() * len(G.orbit(x)) == G.order()


def test_membership_rejects_outsider():
    G = PermGroup([from_cycles(4, (0, 1, 2, 3))], 4)
    assert from_cycles(4, (0, 1)) not in G


def test_block_systems():
    G = PermGroup([from_cycles(4, (0, 1, 2, 3))], 4)
    assert G.is_block_system([[0], [1], [2], [3]])
    assert G.is_block_system([[0, 1, 2, 3]])
    assert G.is_block_system([[0, 2], [1, 3]])
    assert not G.is_block_system([[0, 1], [2, 3]])
    assert not PermGroup([from_cycles(4, (0, 1, 2, 3)), from_cycles(4, (0, 1))], 4) \
        .is_block_system([[0, 2], [1, 3]])


def test_identity_homomorphism():
    gens = [from_cycles(5, (0, 1, 2, 3, 4)), from_cycles(5, (2, 3, 4))]
    G = PermGroup(gens, 5)
    h = Homomorphism(G, gens)
    for g in gens:
        assert h(g) == g


def test_bad_images_rejected():
    gens = [from_cycles(5, (0, 1, 2, 3, 4)), from_cycles(5, (2, 3, 4))]
    G = PermGroup(gens, 5)
    with pytest.raises(NotAHomomorphism):
        Homomorphism(G, [from_cycles(2, (0, 1)), identity(2)])


@pytest.mark.parametrize("q,kernel", [(4, 1), (5, 2)])
def test_phi_kernel(q, kernel):
    from twrgraph.catalog import Catalog
    c = Catalog.for_q(q)
    ker = [g for g in c.Q_group.elements() if is_identity(c.phi(g))]
    assert len(ker) == kernel
