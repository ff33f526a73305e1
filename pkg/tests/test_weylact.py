from itertools import permutations

import pytest

from schlafli import lines27 as L
from schlafli import weylact as W
from schlafli.permgrp import PermGroup, act_on_set, perm_order


def test_weyl_order():
    assert W.build_weyl().order == 51840


def test_roots():
    assert len(W.roots()) == 72


def test_generators_preserve_intersections():
    for g in W.build_weyl().generators:
        assert W.preserves_intersections(g)


def test_s6_embedding_contained():
    w = W.build_weyl()
    transposition = W.s6_index_permutation({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    six_cycle = W.s6_index_permutation({1: 2, 2: 3, 3: 4, 4: 5, 5: 6, 6: 1})
    assert transposition in w and six_cycle in w
    s6 = PermGroup(27, [transposition, six_cycle])
    assert s6.order == 720  # the action on the 27 labels is faithful


def test_weyl_preserves_tritangent_planes():
    planes = set(L.tritangent_planes())
    for g in W.build_weyl().generators:
        for pl in planes:
            assert frozenset(g[x] for x in pl) in planes


def test_named_subgroup_orders():
    for tag, order in W.EXPECTED_ORDERS.items():
        assert W.named(tag).order == order


def test_u_t_abstract_type():
    assert W.u_t_is_s3_cubed()


def test_u_t3sylow_elementary_abelian_of_exponent_3():
    syl = W.named("U_t3sylow")
    assert syl.order == 27
    for e in syl.elements():
        assert perm_order(e) in (1, 3)
    elems = list(syl.elements())
    from schlafli.permgrp import compose

    assert all(compose(x, y) == compose(y, x) for x in elems for y in elems)


def test_d18_is_dihedral():
    assert W.is_dihedral_of_order_18(W.named("D18_first_kind"))


def test_stab_pair_orbits_on_pairs():
    rep = W.orbit_report(W.named("stab_pair"))
    assert rep["steiner_pairs"] == [1, 2, 27, 36, 54]
    # the length-2 orbit consists of the two complementary pairs
    stab = W.named("stab_pair")
    fixed_lines = W.standard_triplet_linesets()[0]
    orbits = stab.orbits_on(W.pair_objects(), W.act_on_lineset)
    two = next(o for o in orbits if len(o) == 2)
    for lineset in two:
        assert not (lineset & fixed_lines)


def test_u_t_orbit_structures():
    rep = W.orbit_report(W.named("U_t"))
    assert rep["lines"] == [9, 9, 9]
    assert rep["decompositions"] == [1, 12, 27]
    assert rep["triplets"] == [1] * 6 + [27] * 6 + [72]


def test_transitivity_on_pairs_and_triplets():
    rep = W.orbit_report(W.build_weyl())
    assert rep["steiner_pairs"] == [120]
    assert rep["triplets"] == [240]
    assert rep["decompositions"] == [40]
    assert rep["double_sixes"] == [36]


def test_trivial_group_report():
    rep = W.orbit_report(PermGroup.trivial(27))
    assert rep["lines"] == [1] * 27


def test_stabilized_objects():
    u_t = W.named("U_t")
    so = W.stabilized_objects(u_t)
    trip_sets = tuple(W.standard_triplet_linesets())
    assert set(so["triplets"]) == {
        tuple(trip_sets[i] for i in perm) for perm in permutations(range(3))
    }
    assert so["sixers"] == []
    so_w = W.stabilized_objects(W.build_weyl())
    assert all(v == [] for v in so_w.values())
    so_triv = W.stabilized_objects(PermGroup.trivial(27))
    assert len(so_triv["triplets"]) == 240
    assert len(so_triv["sixers"]) == 72


def test_decomposition_pair_types():
    std = frozenset(p.lines for p in L.standard_triplet())
    type_a = frozenset(p.lines for p in L.st_three_pairs((1, 4), (2, 5), (3, 6)))
    type_b1 = frozenset(p.lines for p in L.st_three_pairs((1, 2), (3, 4), (5, 6)))
    type_b2 = frozenset(p.lines for p in L.st_two_triples((1, 2, 4), (3, 5, 6)))
    assert W.decomposition_pair_type(std, type_a) == "A"
    assert W.decomposition_pair_type(std, type_b1) == "B"
    assert W.decomposition_pair_type(std, type_b2) == "B"
    with pytest.raises(ValueError):
        W.decomposition_pair_type(std, std)


def test_type_a_intersection_matrix_matches_display():
    t = L.standard_triplet()
    tp = L.st_three_pairs((1, 4), (2, 5), (3, 6))
    I = W.intersection_matrix(t, tp)
    a, b, c = L.a, L.b, L.c
    expected = [
        [{a(1), b(2), c(1, 2)}, {a(2), b(3), c(2, 3)}, {a(3), b(1), c(1, 3)}],
        [{a(4), b(5), c(4, 5)}, {a(5), b(6), c(5, 6)}, {a(6), b(4), c(4, 6)}],
        [{c(1, 5), c(2, 4), c(3, 6)}, {c(1, 4), c(2, 6), c(3, 5)}, {c(1, 6), c(2, 5), c(3, 4)}],
    ]
    assert [[set(x) for x in row] for row in I] == expected


def test_first_kind_partition_certificate():
    parts = W.first_kind_partition()
    assert len(parts) == 3
    assert frozenset().union(*parts) == frozenset(range(27))
    d18 = W.named("D18_first_kind")
    assert d18.orbit_structure() == [9, 9, 9]
    assert set(d18.orbits()) == set(parts)
