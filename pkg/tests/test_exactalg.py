import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schlafli.exactalg import (
    FiniteAbelianGroup,
    FiniteQuotient,
    InfiniteQuotientError,
    IntMatrix,
    Lattice,
    LatticeError,
    hnf_columns,
    kernel_basis,
    lattice_intersect,
    quotient_structure,
    snf,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-30, 30), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


def brute_force_snf_2x2(m):
    """Independent oracle for 2x2 Smith forms: d1 = gcd of all entries,
    d1*d2 = |det|."""
    entries = [x for row in m for x in row]
    d1 = math.gcd(*entries)
    det = abs(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    d2 = det // d1 if d1 else 0
    return [d1, d2]


def test_snf_identity():
    u, s, v = snf(IntMatrix.identity(2))
    assert s == IntMatrix.identity(2)


def test_snf_2x2_example():
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    expected = brute_force_snf_2x2([[2, 4], [6, 8]])
    assert expected == [2, 4]
    u, s, v = snf(m)
    assert [s[0, 0], s[1, 1]] == expected
    assert s[0, 1] == s[1, 0] == 0


def test_snf_zero_matrix():
    u, s, v = snf(IntMatrix.zero(2, 2))
    assert s == IntMatrix.zero(2, 2)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_properties(rows):
    m = IntMatrix.from_rows(rows)
    u, s, v = snf(m)
    assert u * m * v == s
    assert u.det() in (1, -1)
    assert v.det() in (1, -1)
    diag = [s[i, i] for i in range(min(s.rows, s.cols))]
    assert s.is_diagonal()
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0


@settings(max_examples=100, deadline=None)
@given(small_matrices, small_matrices)
def test_hnf_canonical_under_regeneration(rows_a, rows_b):
    # appending lattice combinations of existing generators never changes
    # the canonical basis
    m = IntMatrix.from_rows(rows_a)
    cols = m.columns()
    extra = [tuple(2 * x - y for x, y in zip(cols[0], cols[-1]))]
    ext = IntMatrix.from_columns([list(c) for c in cols] + [list(extra[0])])
    assert hnf_columns(m) == hnf_columns(ext)


def test_kernel_basis():
    m = IntMatrix.from_rows([[1, 2, 3]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert m.apply(v) == (0,)


def test_lattice_intersect_trivial_cases():
    z2 = Lattice.standard(2)
    assert lattice_intersect(z2, z2).basis == z2.basis
    a = Lattice.from_generators(2, [(1, 0)])
    b = Lattice.from_generators(2, [(0, 1)])
    assert lattice_intersect(a, b).rank == 0


def test_lattice_intersect_derived_example():
    a = Lattice.from_generators(2, [(2, 0), (0, 1)])
    b = Lattice.from_generators(2, [(1, 1)])
    # oracle: enumerate small multiples of (1,1) and keep those lying in a
    members = [k for k in range(1, 10) if a.contains((k, k))]
    assert members == [2, 4, 6, 8]
    got = lattice_intersect(a, b)
    assert got == Lattice.from_generators(2, [(2, 2)])


def test_lattice_intersect_dimension_mismatch():
    with pytest.raises(LatticeError):
        lattice_intersect(Lattice.standard(2), Lattice.standard(3))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=3),
    st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=3),
)
def test_lattice_intersect_properties(ga, gb):
    a = Lattice.from_generators(3, ga)
    b = Lattice.from_generators(3, gb)
    ab = lattice_intersect(a, b)
    assert ab == lattice_intersect(b, a)
    assert lattice_intersect(a, a) == a
    assert ab.is_sublattice_of(a) and ab.is_sublattice_of(b)
    # monotone under inclusion: (a ∩ b) ∩ b == a ∩ b
    assert lattice_intersect(ab, b) == ab


def test_quotient_structure_examples():
    z2 = Lattice.standard(2)
    sub = Lattice.from_generators(2, [(2, 0), (0, 3)])
    # oracle: Smith form of diag(2,3) is diag(1,6)
    assert quotient_structure(z2, sub) == FiniteAbelianGroup((6,))
    assert quotient_structure(z2, z2) == FiniteAbelianGroup(())
    z1 = Lattice.standard(1)
    assert quotient_structure(z1, Lattice.from_generators(1, [(3,)])) == FiniteAbelianGroup((3,))


def test_quotient_structure_errors():
    z2 = Lattice.standard(2)
    with pytest.raises(LatticeError):
        quotient_structure(Lattice.from_generators(2, [(2, 0), (0, 2)]), z2)
    with pytest.raises(InfiniteQuotientError):
        quotient_structure(z2, Lattice.from_generators(2, [(2, 0)]))


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.lists(st.integers(-8, 8), min_size=3, max_size=3), min_size=3, max_size=3)
)
def test_quotient_order_is_det(rows):
    c = IntMatrix.from_rows(rows)
    det = c.det()
    sup = Lattice.standard(3)
    sub = Lattice.from_generators(3, rows)
    if det == 0:
        with pytest.raises(InfiniteQuotientError):
            quotient_structure(sup, sub)
    else:
        assert quotient_structure(sup, sub).order == abs(det)


def test_finite_quotient_coords():
    sup = Lattice.standard(2)
    sub = Lattice.from_generators(2, [(2, 0), (0, 3)])
    q = FiniteQuotient(sup, sub)
    assert q.invariant_factors == (6,)
    lifts = q.generator_lifts()
    assert len(lifts) == 1
    assert q.coords(lifts[0]) == (1,)
    # the lift has order exactly 6
    orders = [k for k in range(1, 7) if q.is_zero([k * x for x in lifts[0]])]
    assert orders == [6]
    assert q.is_zero((2, 3))
    assert not q.is_zero((1, 0))


def test_finite_abelian_group_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
    g = FiniteAbelianGroup((2, 4))
    assert g.order == 8 and g.exponent == 4
    assert len(list(FiniteAbelianGroup((3, 3)).elements())) == 9


def test_intmatrix_mul_and_apply():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert (a * b).to_rows() == [[2, 1], [4, 3]]
    assert a.apply((1, 1)) == (3, 7)
    assert a.transpose.to_rows() == [[1, 3], [2, 4]]


def test_membership_and_coordinates():
    lat = Lattice.from_generators(3, [(2, 1, 0), (0, 3, 0)])
    v = (4, 5, 0)
    coords = lat.coordinates(v)
    assert coords is not None
    cols = lat.generators()
    rebuilt = [sum(c * col[i] for c, col in zip(coords, cols)) for i in range(3)]
    assert tuple(rebuilt) == v
    assert not lat.contains((1, 0, 0))
    assert not lat.contains((0, 0, 1))
