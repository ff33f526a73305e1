import random
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest

from schlafli import galcoh as G
from schlafli import lines27 as L
from schlafli import weylact as W
from schlafli.exactalg import FiniteAbelianGroup
from schlafli.permgrp import PermGroup


def triplet_sets(t):
    return tuple(p.lines for p in t)


def test_h1_named_values():
    assert G.h1_structure(W.named("U_t")) == FiniteAbelianGroup((3,))
    assert G.h1_structure(W.named("U_tt")) == FiniteAbelianGroup((3, 3))
    assert G.h1_structure(PermGroup.trivial(27)).is_trivial
    assert G.h1_structure(W.named("D18_first_kind")).is_trivial
    assert G.h1_structure(W.named("U_tt_prime")).is_trivial


def test_h1_rejects_non_configuration_group():
    bad = tuple([1, 0] + list(range(2, 27)))  # swaps a1, a2 only: breaks c12 incidences
    with pytest.raises(G.NotConfigurationGroup):
        G.h1(PermGroup(27, [bad]))


def test_principal_kernel_rank():
    assert G.principal_kernel().rank == 20


def test_model_case_internals():
    assert G.principality_criterion()
    assert G.line_times_orbit_divisors() == {72}
    assert G.nd0_generators_check()


def test_class_map_generator_and_symmetries():
    u_t = W.named("U_t")
    t = triplet_sets(L.standard_triplet())
    cl = G.class_map(u_t, t)
    assert cl.order == 3
    rot1 = (t[1], t[2], t[0])
    rot2 = (t[2], t[0], t[1])
    swap = (t[1], t[0], t[2])
    assert G.class_map(u_t, rot1).components == cl.components
    assert G.class_map(u_t, rot2).components == cl.components
    assert G.class_map(u_t, swap).components == (-cl).components


def test_class_map_requires_invariance():
    u_t = W.named("U_t")
    other = triplet_sets(L.st_two_triples((1, 2, 4), (3, 5, 6)))
    with pytest.raises(ValueError):
        G.class_map(u_t, other)


def test_two_triplet_class_bijection():
    u_tt = W.named("U_tt")
    inv = W.stabilized_objects(u_tt)["triplets"]
    assert len(inv) == 24  # four decompositions, six orderings each
    decs = {frozenset(t) for t in inv}
    assert len(decs) == 4
    by_class = {}
    for t in inv:
        c = G.class_map(u_tt, t)
        assert not c.is_zero
        by_class.setdefault(c.components, []).append(t)
    # modulo cyclic rotation: each of the 8 nonzero elements hit exactly once
    assert len(by_class) == 8
    for members in by_class.values():
        assert len(members) == 3
        base = members[0]
        rotations = {
            (base[0], base[1], base[2]),
            (base[1], base[2], base[0]),
            (base[2], base[0], base[1]),
        }
        assert set(members) == rotations


def test_parallelogram_rule():
    assert G.parallelogram_check()


def test_restriction_bijective_from_u_t_to_u_tt():
    res = G.restriction(W.named("U_tt"), W.named("U_t"))
    assert res.is_injective()
    assert not res.is_bijective()  # Z/3 into Z/3 x Z/3


def test_restriction_to_trivial_is_zero():
    u_t = W.named("U_t")
    res = G.restriction(PermGroup.trivial(27), u_t)
    cl = G.class_map(u_t, triplet_sets(L.standard_triplet()))
    assert res.apply(cl).is_zero


def test_pic_rank_fixed():
    assert G.pic_rank_fixed(PermGroup.trivial(27)) == 7
    assert G.pic_rank_fixed(W.named("U_t")) == 1
    assert G.pic_rank_fixed(W.named("U_tt")) != 7


def test_weyl_trace_set():
    traces = G.weyl_trace_set()
    assert 7 in traces  # identity
    assert len(traces) <= 25
    assert all(-7 <= t <= 7 for t in traces)


def test_class_map_restriction_compatible():
    # restricting the standard class from U_t to U_tt agrees with computing
    # the class directly inside U_tt
    u_t, u_tt = W.named("U_t"), W.named("U_tt")
    t = triplet_sets(L.standard_triplet())
    direct = G.class_map(u_tt, t)
    via_res = G.restriction(u_tt, u_t).apply(G.class_map(u_t, t))
    assert direct.components == via_res.components


# -- the exhaustive subgroup sweep -------------------------------------------


@pytest.fixture(scope="module")
def sweep():
    subs = W.u_t_subgroups()
    data = []
    ds_objects = W.double_six_objects()
    trip_objects = W.triplet_objects()
    for s in subs:
        inv = G.h1(s).invariant_factors
        fixes_ds = any(
            all(W.act_on_sixer_pair(g, d) == d for g in s.generators)
            for d in ds_objects
        )
        data.append((s, inv, fixes_ds))
    return data, trip_objects


def test_sweep_h1_range(sweep):
    data, _ = sweep
    census = Counter(inv for _, inv, _ in data)
    assert set(census) <= {(), (3,), (3, 3)}
    assert census[(3, 3)] == 4  # the two-triplet stabilizer and conjugates


def test_sweep_double_six_dichotomy(sweep):
    # every subgroup stabilizes a double-six or has nonzero cohomology
    data, _ = sweep
    for s, inv, fixes_ds in data:
        assert fixes_ds or inv != ()


def test_sweep_triplet_existence_for_3_groups(sweep):
    # nontrivial cohomology forces an invariant triplet
    data, trip_objects = sweep
    for s, inv, _ in data:
        if inv:
            assert any(
                all(W.act_on_lineset_tuple(g, t) == t for g in s.generators)
                for t in trip_objects
            )


def test_sweep_restriction_bijective_and_rank(sweep):
    data, _ = sweep
    u_t = W.named("U_t")
    for s, inv, _ in data:
        if inv == (3,):
            assert G.pic_rank_fixed(s) == 1
            assert G.restriction(s, u_t).is_bijective()


def test_sweep_injectivity_corollary(sweep):
    # (ii) restrictions from H with H^1 = Z/3 to subgroups with nonzero
    # cohomology are injective; (iii) below (3,3) only 0 or (3,3) occur
    data, _ = sweep
    by_elems = {frozenset(s.elements()): (s, inv) for s, inv, _ in data}
    threes = [(s, e) for e, (s, inv) in by_elems.items() if inv == (3,)]
    random.seed(11)
    for s, elems in threes:
        subsets = [
            (s2, inv2)
            for e2, (s2, inv2) in by_elems.items()
            if e2 < elems and inv2 != ()
        ]
        for s2, inv2 in subsets:
            assert G.restriction(s2, s).is_injective()
    for e, (s, inv) in by_elems.items():
        if inv == (3, 3):
            for e2, (s2, inv2) in by_elems.items():
                if e2 <= e:
                    if inv2 == (3, 3):
                        assert e2 == e
                    elif inv2 != ():
                        raise AssertionError("below (3,3) only 0 or (3,3) occur")


def test_sweep_functoriality(sweep):
    data, _ = sweep
    u_t = W.named("U_t")
    random.seed(5)
    by_elems = [(frozenset(s.elements()), s) for s, inv, _ in data]
    chains = []
    for elems, s in by_elems:
        if 1 < s.order < 216:
            for elems2, s2 in by_elems:
                if elems2 < elems:
                    chains.append((s2, s))
    for s2, s in random.sample(chains, min(12, len(chains))):
        lhs = G.restriction(s2, u_t)
        mid = G.restriction(s, u_t)
        low = G.restriction(s2, s)
        for c in G.h1(u_t).structure.elements():
            cls = G.BrauerClass(G.h1(u_t), c)
            assert lhs.apply(cls).components == low.apply(mid.apply(cls)).components


def test_swinnerton_dyer_range_includes_2_groups():
    # subgroups of the order-8 two-triplet stabilizer supply 2-group cases
    allowed = {(), (2,), (2, 2), (3,), (3, 3)}
    from schlafli.permgrp import all_subgroups

    for s in all_subgroups(W.named("U_tt_prime")):
        assert G.h1(s).invariant_factors in allowed
    for tag in W.EXPECTED_ORDERS:
        assert G.h1(W.named(tag)).invariant_factors in allowed


def test_h1_report_shape():
    rep = G.h1_report(W.named("U_t"))
    assert rep["group_order"] == 216
    assert rep["h1_invariant_factors"] == [3]
    assert rep["orbit_structure"] == [9, 9, 9]
    assert rep["pic_fixed_rank"] == 1
    assert rep["stabilized"]["triplets"] == 6
