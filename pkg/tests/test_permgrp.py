import math
import random
from itertools import permutations

import pytest

from schlafli.permgrp import (
    PermGroup,
    SmallGroup,
    act_on_points,
    act_on_set,
    all_subgroups,
    compose,
    identity,
    inverse,
    perm_from_json,
    perm_order,
    perm_to_json,
    sylow3,
)


def cycle(n, *points):
    img = list(range(n))
    for a, b in zip(points, points[1:]):
        img[a] = b
    img[points[-1]] = points[0]
    return tuple(img)


def symmetric(n):
    return PermGroup(n, [cycle(n, 0, 1), tuple(range(1, n)) + (0,)])


def test_compose_convention():
    p = cycle(3, 0, 1)
    q = cycle(3, 1, 2)
    # (p*q)(x) = p(q(x))
    assert compose(p, q) == (1, 2, 0)
    assert compose(q, p) == (2, 0, 1)
    assert compose(p, inverse(p)) == identity(3)


def test_symmetric_group_orders():
    for n in range(2, 7):
        assert symmetric(n).order == math.factorial(n)


def test_trivial_group():
    g = PermGroup.trivial(27)
    assert g.order == 1
    assert g.orbit_structure() == [1] * 27


def test_membership_matches_enumeration_small():
    random.seed(7)
    for _ in range(5):
        n = 6
        gens = [tuple(random.sample(range(n), n)) for _ in range(2)]
        g = PermGroup(n, gens)
        if g.order > 1000:
            continue
        elems = g.elements()
        assert len(elems) == g.order
        for p in permutations(range(n)):
            assert (p in g) == (p in elems)


def test_orbit_stabilizer_counting():
    g = symmetric(6)
    orb = g.object_orbit(frozenset({0, 1}), act_on_set)
    stab = g.stabilizer(frozenset({0, 1}), act_on_set)
    assert len(orb) * stab.order == g.order
    assert len(orb) == 15
    # transversal really maps the object onto each orbit member
    for img, rep in orb.items():
        assert act_on_set(rep, frozenset({0, 1})) == img


def test_stabilizer_in_trivial_group():
    g = PermGroup.trivial(5)
    stab = g.stabilizer(frozenset({0, 1}), act_on_set)
    assert stab.order == 1


def test_orbits_partition():
    g = PermGroup(6, [cycle(6, 0, 1, 2)])
    assert g.orbit_structure() == [1, 1, 1, 3]
    assert g.orbit_structure(points={0, 1, 3}) == [1, 2]


def test_all_subgroups_cyclic3():
    g = PermGroup(3, [cycle(3, 0, 1, 2)])
    assert len(all_subgroups(g)) == 2


def test_all_subgroups_s3():
    g = symmetric(3)
    subs = all_subgroups(g)
    # exhaustive closure oracle: 1 trivial, three of order 2, one of order 3, S3
    assert sorted(s.order for s in subs) == [1, 2, 2, 2, 3, 6]
    # closed under conjugation
    keyed = {frozenset(s.elements()) for s in subs}
    for s in subs:
        for g_el in g.elements():
            conj = frozenset(
                compose(g_el, compose(x, inverse(g_el))) for x in s.elements()
            )
            assert conj in keyed


def test_all_subgroups_s4_against_known_count():
    # S4 has 30 subgroups in total (11 conjugacy classes)
    g = symmetric(4)
    subs = all_subgroups(g)
    assert len(subs) == 30
    for s in subs:
        assert g.order % s.order == 0


def test_all_subgroups_bound():
    with pytest.raises(ValueError):
        all_subgroups(symmetric(7), bound=1000)


def test_sylow3():
    s3 = symmetric(3)
    p = sylow3(s3)
    assert p.order == 3
    assert sylow3(PermGroup.trivial(4)).order == 1
    s6 = symmetric(6)
    p6 = sylow3(s6)
    assert p6.order == 9
    assert all(g in s6 for g in p6.generators)


def test_small_group_table():
    sg = SmallGroup.from_permgroup(symmetric(3))
    assert len(sg) == 6
    # closure of a transposition and a 3-cycle is everything
    i1 = sg.index[cycle(3, 0, 1)]
    i2 = sg.index[cycle(3, 0, 1, 2)]
    assert len(sg.closure({i1, i2})) == 6
    assert len(sg.normalizer(frozenset({sg.id_idx}))) == 6


def test_perm_order():
    assert perm_order(identity(5)) == 1
    assert perm_order(cycle(6, 0, 1, 2)) == 3
    assert perm_order(compose(cycle(6, 0, 1), cycle(6, 2, 3, 4))) == 6


def test_perm_json_roundtrip():
    p = cycle(4, 0, 2)
    assert perm_from_json(perm_to_json(p), 4) == p
    with pytest.raises(ValueError):
        perm_from_json("[0, 0, 1]", 3)


def test_fixed_objects():
    g = PermGroup(4, [cycle(4, 0, 1)])
    objs = [frozenset({0, 1}), frozenset({2, 3}), frozenset({0, 2})]
    assert g.fixed_objects(objs, act_on_set) == [frozenset({0, 1}), frozenset({2, 3})]


def test_orbits_on_objects():
    g = symmetric(4)
    pairs = [frozenset(s) for s in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]]
    orbs = g.orbits_on(pairs, act_on_set)
    assert [len(o) for o in orbs] == [6]
