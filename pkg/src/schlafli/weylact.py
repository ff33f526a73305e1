"""W(E6) as the automorphism group of the 27-line configuration, its named
subgroups, and their actions on the configuration objects.

The group is generated by reflections in the roots of the orthogonal
complement of the canonical class — computed from the Picard classes, not
entered by hand — and certified by its order, 51840.  Named subgroups are
stabilizers of the standard displayed objects (the type-I pair on (1,2,3),
the decomposition St_(123)(456) and its type-A/type-B partners, a
first-kind-trihedron partition); their orders are certified against the
expected 432 / 216 / 27 / 3 / 8 / 18.
"""

from __future__ import annotations

from functools import cache
from itertools import combinations

from . import lines27 as L
from .permgrp import (
    PermGroup,
    act_on_set,
    act_on_set_of_sets,
    compose,
    sylow3,
)

N = L.N_LINES


# -- actions on configuration objects ---------------------------------------
# pairs, decompositions and triplets are identified with their line sets
# (pair_by_lines certifies this is faithful)


def act_on_lineset(g, s):
    return frozenset(g[x] for x in s)


def act_on_lineset_tuple(g, t):
    return tuple(frozenset(g[x] for x in s) for s in t)


def act_on_sixer_pair(g, sp):
    return frozenset(frozenset(g[x] for x in s) for s in sp)


def pair_objects():
    return [p.lines for p in L.steiner_pairs()]


def decomposition_objects():
    return [frozenset(p.lines for p in d.pairs) for d in L.decompositions()]


def triplet_objects():
    return [tuple(p.lines for p in t) for t in L.triplets()]


def double_six_objects():
    return [d.sixer_pair for d in L.double_sixes()]


def sixer_objects():
    return list(L.sixers())


# -- construction of W(E6) ----------------------------------------------------


@cache
def roots() -> tuple[tuple[int, ...], ...]:
    """Roots of the Picard lattice: r.r = -2, r.K = 0; computed as the
    distinct differences of skew line classes."""
    cls = L.pic_classes()
    mm = L.meet_matrix()
    out = set()
    for x in range(N):
        for y in range(N):
            if x != y and mm[x][y] == 0:
                out.add(tuple(a - b for a, b in zip(cls[x], cls[y])))
    for r in out:
        assert L.pairing(r, r) == -2
        assert L.pairing(r, L.CANONICAL_CLASS) == 0
    return tuple(sorted(out))


def reflection_perm(root: tuple[int, ...]) -> tuple[int, ...]:
    """The permutation of the 27 line classes induced by x -> x + (x.r) r."""
    cls = L.pic_classes()
    index = {c: i for i, c in enumerate(cls)}
    img = []
    for c in cls:
        t = L.pairing(c, root)
        image = tuple(a + t * b for a, b in zip(c, root))
        img.append(index[image])
    return tuple(img)


@cache
def build_weyl() -> PermGroup:
    """The full group of intersection-preserving permutations of the lines."""
    rs = roots()
    gens = [reflection_perm(r) for r in rs[: len(rs) // 2]]
    g = PermGroup(N, gens)
    if g.order != 51840:
        raise AssertionError(f"automorphism group has order {g.order}, expected 51840")
    mm = L.meet_matrix()
    for gen in g.generators:
        for x in range(N):
            for y in range(N):
                assert mm[gen[x]][gen[y]] == mm[x][y]
    return g


def s6_index_permutation(pi: dict[int, int]) -> tuple[int, ...]:
    """The line permutation induced by relabelling the blow-up indices."""
    img = [0] * N
    for i in range(1, 7):
        img[L.a(i)] = L.a(pi[i])
        img[L.b(i)] = L.b(pi[i])
    for i, j in combinations(range(1, 7), 2):
        img[L.c(i, j)] = L.c(pi[i], pi[j])
    return tuple(img)


def preserves_intersections(p: tuple[int, ...]) -> bool:
    mm = L.meet_matrix()
    return all(mm[p[x]][p[y]] == mm[x][y] for x in range(N) for y in range(N))


# -- named subgroups -----------------------------------------------------------

EXPECTED_ORDERS = {
    "stab_pair": 432,
    "U_t": 216,
    "U_t3sylow": 27,
    "U_tt": 3,
    "U_tt_prime": 8,
    "D18_first_kind": 18,
}


@cache
def standard_triplet_linesets() -> tuple[frozenset[int], ...]:
    return tuple(p.lines for p in L.standard_triplet())


@cache
def named(tag: str) -> PermGroup:
    w = build_weyl()
    if tag == "stab_pair":
        group = w.stabilizer(standard_triplet_linesets()[0], act_on_lineset)
    elif tag == "U_t":
        group = w.stabilizer(standard_triplet_linesets(), act_on_lineset_tuple)
    elif tag == "U_t3sylow":
        group = sylow3(named("U_t"))
    elif tag == "U_tt":
        group = _both_triplet_stabilizer(L.st_three_pairs((1, 4), (2, 5), (3, 6)))
    elif tag == "U_tt_prime":
        group = _both_triplet_stabilizer(L.st_three_pairs((1, 2), (3, 4), (5, 6)))
    elif tag == "D18_first_kind":
        group = _first_kind_partition_stabilizer()
    else:
        raise KeyError(f"unknown named subgroup {tag!r}")
    if group.order != EXPECTED_ORDERS[tag]:
        raise AssertionError(
            f"{tag}: order {group.order}, expected {EXPECTED_ORDERS[tag]}"
        )
    return group


def _both_triplet_stabilizer(second_triplet) -> PermGroup:
    """Elements of U_t preserving each line set of a second triplet."""
    targets = tuple(p.lines for p in second_triplet)
    u_t = named("U_t")
    elems = [
        e
        for e in u_t.elements()
        if all(act_on_lineset(e, s) == s for s in targets)
    ]
    return PermGroup.from_elements(N, elems)


@cache
def first_kind_partition() -> tuple[frozenset[int], ...]:
    """A partition of the 27 lines into the line sets of three first-kind
    trihedra, built as the orbits of the first order-9 element with cycle
    type [9,9,9] found by breadth-first search over generator words."""
    from .permgrp import identity, perm_order

    w = build_weyl()
    seen = {identity(N)}
    frontier = [identity(N)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in w.generators:
                x = compose(g, e)
                if x in seen:
                    continue
                seen.add(x)
                nxt.append(x)
                if perm_order(x) == 9:
                    orbits = PermGroup(N, [x]).orbits()
                    if [len(o) for o in orbits] == [9, 9, 9]:
                        for o in orbits:
                            _assert_first_kind_lineset(o)
                        return tuple(sorted(orbits, key=sorted))
        frontier = nxt
    raise AssertionError("no [9,9,9] element of order 9 found")


def _assert_first_kind_lineset(lineset: frozenset[int]) -> None:
    # a first-kind trihedron line set contains exactly its three row planes
    # (a conjugate plane would be a fourth tritangent plane inside it)
    inside = [pl for pl in L.tritangent_planes() if pl <= lineset]
    if len(inside) != 3 or frozenset().union(*inside) != lineset:
        raise AssertionError("orbit is not the line set of a first-kind trihedron")


def _first_kind_partition_stabilizer() -> PermGroup:
    """Elements preserving each of the three first-kind 9-sets."""
    group = build_weyl()
    for s in first_kind_partition():
        group = group.stabilizer(s, act_on_set)
    return group


@cache
def u_t_subgroups() -> tuple[PermGroup, ...]:
    """The complete subgroup list of the triplet stabilizer (not up to
    conjugacy); 904 subgroups, kept as a regression constant."""
    from .permgrp import all_subgroups

    subs = tuple(all_subgroups(named("U_t")))
    assert len(subs) == 904
    return subs


def is_dihedral_of_order_18(g: PermGroup) -> bool:
    """Order 18 with a 9-cycle inverted by an involution."""
    from .permgrp import inverse, perm_order

    if g.order != 18:
        return False
    elems = g.elements()
    rot = next((e for e in elems if perm_order(e) == 9), None)
    if rot is None:
        return False
    invs = [e for e in elems if perm_order(e) == 2]
    return any(compose(s, compose(rot, s)) == inverse(rot) for s in invs)


def u_t_is_s3_cubed() -> bool:
    """Certifies U_t = S3 x S3 x S3 constructively: there are exactly three
    normal nonabelian subgroups of order 6; they commute elementwise, meet
    pairwise trivially, and their product is the whole group."""
    from .permgrp import SmallGroup, perm_order

    u_t = named("U_t")
    sg = SmallGroup.from_permgroup(u_t)
    n = len(sg.elements)
    twos = [i for i in range(n) if perm_order(sg.elements[i]) == 2]
    threes = [i for i in range(n) if perm_order(sg.elements[i]) == 3]
    factors = set()
    for x in threes:
        for y in twos:
            h = sg.closure({x, y})
            if len(h) != 6:
                continue
            if sg.normalizer(h) != frozenset(range(n)):
                continue
            hp = [sg.elements[i] for i in h]
            if all(compose(u, v) == compose(v, u) for u in hp for v in hp):
                continue
            factors.add(h)
    if len(factors) != 3:
        return False
    f1, f2, f3 = list(factors)
    for u, v in ((f1, f2), (f1, f3), (f2, f3)):
        if u & v != {sg.id_idx}:
            return False
        for x in u:
            for y in v:
                if sg.table[x][y] != sg.table[y][x]:
                    return False
    products = {
        sg.table[x][sg.table[y][z]] for x in f1 for y in f2 for z in f3
    }
    return len(products) == 216


# -- reports -------------------------------------------------------------------


def orbit_report(g: PermGroup) -> dict:
    """Orbit structures of g on every class of configuration objects."""
    return {
        "lines": g.orbit_structure(),
        "steiner_pairs": sorted(len(o) for o in g.orbits_on(pair_objects(), act_on_lineset)),
        "decompositions": sorted(
            len(o) for o in g.orbits_on(decomposition_objects(), act_on_set_of_sets)
        ),
        "triplets": sorted(
            len(o) for o in g.orbits_on(triplet_objects(), act_on_lineset_tuple)
        ),
        "double_sixes": sorted(
            len(o) for o in g.orbits_on(double_six_objects(), act_on_sixer_pair)
        ),
    }


def stabilized_objects(g: PermGroup) -> dict:
    """The g-invariant double-sixes, Steiner pairs, triplets and sixers."""
    return {
        "double_sixes": g.fixed_objects(double_six_objects(), act_on_sixer_pair),
        "steiner_pairs": g.fixed_objects(pair_objects(), act_on_lineset),
        "triplets": g.fixed_objects(triplet_objects(), act_on_lineset_tuple),
        "sixers": g.fixed_objects(sixer_objects(), act_on_set),
    }


def decomposition_pair_type(d1, d2) -> str:
    """'A' if the 3x3 intersection-size matrix is all 3s, 'B' for the 5/2
    pattern; accepts Decomposition objects or frozensets of line sets."""
    s1 = sorted(_line_sets(d1), key=sorted)
    s2 = sorted(_line_sets(d2), key=sorted)
    if frozenset(map(frozenset, s1)) == frozenset(map(frozenset, s2)):
        raise ValueError("decompositions must differ")
    body = sorted(tuple(sorted(len(a & b) for b in s2)) for a in s1)
    if body == [(3, 3, 3)] * 3:
        return "A"
    if body == [(2, 2, 5)] * 3:
        return "B"
    raise AssertionError(f"unexpected intersection pattern {body}")


def intersection_matrix(t1, t2) -> list[list[frozenset[int]]]:
    """I[i][j] = lines common to the i-th pair of t1 and j-th pair of t2."""
    s1 = _ordered_line_sets(t1)
    s2 = _ordered_line_sets(t2)
    return [[a & b for b in s2] for a in s1]


def _line_sets(d):
    if hasattr(d, "line_sets"):
        return d.line_sets
    if isinstance(d, frozenset):
        return d
    return frozenset(p.lines for p in d)


def _ordered_line_sets(t):
    if isinstance(t, tuple):
        return [p.lines if hasattr(p, "lines") else frozenset(p) for p in t]
    return sorted(_line_sets(t), key=sorted)
