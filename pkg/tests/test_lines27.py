from collections import Counter
from itertools import combinations

import pytest

from schlafli import lines27 as L


def test_labels():
    assert len(L.LABELS) == 27
    assert L.LABELS[L.a(1)] == "a1"
    assert L.LABELS[L.b(6)] == "b6"
    assert L.LABELS[L.c(2, 1)] == "c12"


def test_intersection_examples():
    assert L.intersection(L.a(1), L.a(1)) == -1
    # independent evaluation of the diag(1,-1^6) pairing on standard classes
    def pair(u, v):
        return u[0] * v[0] - sum(x * y for x, y in zip(u[1:], v[1:]))

    a1 = (0, 1, 0, 0, 0, 0, 0)
    b1 = (2, 0, -1, -1, -1, -1, -1)
    b2 = (2, -1, 0, -1, -1, -1, -1)
    c12 = (1, -1, -1, 0, 0, 0, 0)
    c34 = (1, 0, 0, -1, -1, 0, 0)
    assert pair(a1, b1) == 0 and L.intersection(L.a(1), L.b(1)) == 0
    assert pair(a1, b2) == 1 and L.intersection(L.a(1), L.b(2)) == 1
    assert pair(c12, c34) == 1 and L.intersection(L.c(1, 2), L.c(3, 4)) == 1


def test_line_classes_are_lines():
    k = L.CANONICAL_CLASS
    for cls in L.pic_classes():
        assert L.pairing(cls, cls) == -1
        assert L.pairing(cls, k) == -1


def test_tritangent_planes():
    planes = L.tritangent_planes()
    assert len(planes) == 45
    assert frozenset({L.a(1), L.b(2), L.c(1, 2)}) in planes
    assert frozenset({L.a(1), L.a(2), L.c(1, 2)}) not in planes
    # every line lies in exactly 5 planes (45*3/27)
    cnt = Counter(x for pl in planes for x in pl)
    assert all(cnt[x] == 5 for x in range(27))


def test_each_line_meets_ten_others():
    mm = L.meet_matrix()
    for x in range(27):
        assert sum(1 for y in range(27) if mm[x][y] == 1 and x != y) == 10


def test_steiner_pair_census():
    pairs = L.steiner_pairs()
    assert len(pairs) == 120
    by_type = Counter(p.schlafli_type for p in pairs)
    assert by_type == {"I": 20, "II": 10, "III": 90}


def test_displayed_type_I_symbol():
    # rows (a_i, b_j, c_ij), (b_k, c_jk, a_j), (c_ik, a_k, b_i) for (1,2,3)
    p = L.pair_type_I(1, 2, 3)
    assert p in L.steiner_pairs()
    assert p.lines == frozenset(
        [L.a(1), L.a(2), L.a(3), L.b(1), L.b(2), L.b(3), L.c(1, 2), L.c(1, 3), L.c(2, 3)]
    )


def test_pair_rows_and_columns_are_planes():
    planes = set(L.tritangent_planes())
    for p in L.steiner_pairs():
        assert p.row_planes <= planes and p.column_planes <= planes
        assert len(p.row_planes | p.column_planes) == 6
        assert len(p.lines) == 9


def test_pair_determined_by_lines():
    assert len(L.pair_by_lines()) == 120


def test_decompositions_and_triplets():
    decs, trips = L.decompositions_and_triplets()
    assert len(decs) == 40
    assert len(trips) == 240
    kinds = Counter(d.kind for d in decs)
    assert kinds == {"St_(ijk)(lmn)": 10, "St_(ij)(kl)(mn)": 30}
    for d in decs:
        all_lines = set()
        for p in d.pairs:
            assert not (all_lines & p.lines)
            all_lines |= p.lines
        assert len(all_lines) == 27


def test_standard_decomposition_contains_type_II_cross_pair():
    t1, t2, t3 = L.standard_triplet()
    assert t3.schlafli_type == "II"
    assert t3.lines == frozenset(L.c(i, j) for i in (1, 2, 3) for j in (4, 5, 6))


def test_st_three_pairs_form_decomposition():
    trip = L.st_three_pairs((1, 4), (2, 5), (3, 6))
    lines = set()
    for p in trip:
        assert p.schlafli_type == "III"
        lines |= p.lines
    assert len(lines) == 27


def test_sixers_and_double_sixes():
    assert len(L.sixers()) == 72
    assert len(L.double_sixes()) == 36
    a_row = frozenset(L.a(i) for i in range(1, 7))
    b_row = frozenset(L.b(i) for i in range(1, 7))
    assert a_row in L.sixers()
    assert L.partner_of(a_row) == b_row
    assert frozenset((a_row, b_row)) in {d.sixer_pair for d in L.double_sixes()}


def test_double_six_matrix_structure():
    mm = L.meet_matrix()
    for ds in L.double_sixes():
        r1, r2 = ds.matrix
        for i in range(6):
            assert mm[r1[i]][r2[i]] == 0
            for j in range(6):
                if i != j:
                    assert mm[r1[i]][r2[j]] == 1
                    assert mm[r1[i]][r1[j]] == 0


def test_double_sixes_within_displayed_pairs():
    t1 = L.pair_type_I(1, 2, 3)
    t2 = L.pair_type_I(4, 5, 6)
    found = L.double_sixes_within(t1, t2)
    assert len(found) == 3
    A = [L.a(i) for i in range(1, 7)]
    B = [L.b(i) for i in range(1, 7)]
    C = {(i, j): L.c(i, j) for i in range(1, 7) for j in range(i + 1, 7)}
    expected = [
        frozenset(
            (frozenset(A), frozenset(B))
        ),
        frozenset(
            (
                frozenset([A[0], A[1], A[2], C[(5, 6)], C[(4, 6)], C[(4, 5)]]),
                frozenset([C[(2, 3)], C[(1, 3)], C[(1, 2)], B[3], B[4], B[5]]),
            )
        ),
        frozenset(
            (
                frozenset([C[(2, 3)], C[(1, 3)], C[(1, 2)], A[3], A[4], A[5]]),
                frozenset([B[0], B[1], B[2], C[(5, 6)], C[(4, 6)], C[(4, 5)]]),
            )
        ),
    ]
    assert {ds.sixer_pair for ds in found} == set(expected)
    for x, y in combinations(found, 2):
        assert len(x.lines & y.lines) == 6


def test_double_sixes_within_rejects_overlap():
    t1 = L.pair_type_I(1, 2, 3)
    with pytest.raises(ValueError):
        L.double_sixes_within(t1, t1)


def test_trihedron_kinds():
    # a row-trihedron of any Steiner pair is of the third kind and its three
    # conjugate planes are the columns
    p = L.steiner_pairs()[0]
    tri = p.row_planes
    assert L.trihedron_kind(tri) == "third"
    assert set(L.conjugate_planes(tri)) == set(p.column_planes)
    kinds = Counter(L.trihedron_kind(t) for t in L.trihedra())
    assert kinds["third"] == 240  # two per Steiner pair
    assert kinds["first"] > 0
    with pytest.raises(ValueError):
        L.trihedron_kind(frozenset([frozenset({0, 1, 2})]))


def test_enneahedra_counts():
    enn = L.enneahedra()
    assert len(enn) == 200
    mult = Counter(m for _, m in enn)
    assert mult == {4: 40, 1: 160}
    assert len(L.enneahedra_first_kind()) == 40
    for planes, _ in enn:
        assert len(planes) == 9
        covered = set()
        for pl in planes:
            covered |= pl
        assert len(covered) == 27


def test_decomposition_intersection_patterns():
    # for any two distinct decompositions the 3x3 intersection-size matrix is
    # all 3s or (up to permutation) the 5/2 pattern
    decs = L.decompositions()
    from_standard = {"A": 0, "B": 0}
    std = next(
        d
        for d in decs
        if L.pair_type_I(1, 2, 3) in d.pairs and L.pair_type_I(4, 5, 6) in d.pairs
    )
    for d1, d2 in combinations(decs, 2):
        sets1 = sorted(d1.line_sets, key=sorted)
        sets2 = sorted(d2.line_sets, key=sorted)
        body = sorted(
            tuple(sorted(len(s1 & s2) for s2 in sets2)) for s1 in sets1
        )
        assert body in ([(3, 3, 3)] * 3, [(2, 2, 5)] * 3)
        if std in (d1, d2):
            from_standard["A" if body == [(3, 3, 3)] * 3 else "B"] += 1
    assert from_standard == {"A": 12, "B": 27}
