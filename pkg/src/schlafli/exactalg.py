"""Exact integer linear algebra.

Arbitrary-precision integer matrices, Hermite and Smith normal forms,
lattices in canonical (column-HNF) form, and the structure of finite
abelian quotients sup/sub.  Everything here is pure and exact; no floats
anywhere.  All objects are immutable values and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for malformed lattice operations (dimension mismatch, non-subset)."""


class InfiniteQuotientError(LatticeError):
    """sup/sub has positive rank, so its invariant factors do not exist.

    Deliberately a distinct type: callers that probe ranks first never see
    it, and callers that cannot know in advance can catch exactly this.
    """


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, entries are Python ints (exact)."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return IntMatrix(r, c, tuple(int(x) for row in rows for x in row))

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], dim: int | None = None) -> "IntMatrix":
        if not cols:
            return IntMatrix(dim or 0, 0, ())
        n = len(cols[0])
        return IntMatrix.from_rows([[col[i] for col in cols] for i in range(n)])

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(r: int, c: int) -> "IntMatrix":
        return IntMatrix(r, c, (0,) * (r * c))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(self.column(j)) for j in range(self.cols)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            out.append([sum(ai[k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)])
        return IntMatrix.from_rows(out) if out else IntMatrix(0, other.cols, ())

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.row(i)[k] * vec[k] for k in range(self.cols)) for i in range(self.rows))

    @cached_property
    def rank(self) -> int:
        return _rank(self.to_rows())

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        return _det_bareiss(self.to_rows())

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


def _det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact integer determinant."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _rank(rows: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    pr = 0
    for pc in range(nc):
        pivot = None
        for i in range(pr, nr):
            if m[i][pc] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        piv = m[pr][pc]
        for i in range(pr + 1, nr):
            if m[i][pc]:
                a = m[i][pc]
                m[i] = [piv * x - a * y for x, y in zip(m[i], m[pr])]
        pr += 1
        rank += 1
        if pr == nr:
            break
    return rank


def _row_hnf(rows: list[list[int]], track: bool = False):
    """Row-style Hermite normal form.

    Pivots positive and strictly right-down, entries above a pivot reduced
    into [0, pivot).  Returns (hnf_rows, transform) where transform is the
    unimodular row operation matrix if track else None.
    """
    m = [list(map(int, row)) for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)] if track else None
    r = 0
    for c in range(nc):
        # minimal-absolute-value pivoting keeps intermediate entries small
        while True:
            nz = [i for i in range(r, nr) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
                if track:
                    u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nr):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    if q:
                        m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                        if track:
                            u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < nr and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
                if track:
                    u[r] = [-x for x in u[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
            if r == nr:
                break
    return m, u


def hnf_columns(mat: IntMatrix) -> IntMatrix:
    """Canonical column-style HNF; zero columns dropped.

    Two generating sets span the same lattice iff their outputs are equal.
    """
    h, _ = _row_hnf(mat.transpose.to_rows())
    cols = [row for row in h if any(row)]
    return IntMatrix.from_columns(cols, dim=mat.rows)


def kernel_basis(mat: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {x : mat*x = 0}, via HNF of [mat^T | I]."""
    n = mat.cols
    aug = [list(mat.column(j)) + [1 if i == j else 0 for i in range(n)] for j in range(n)]
    h, _ = _row_hnf(aug)
    return [tuple(row[mat.rows :]) for row in h if not any(row[: mat.rows])]


def snf(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (U, S, V) with U*mat*V = S.

    U, V unimodular; S diagonal with nonnegative entries forming a
    divisibility chain d1 | d2 | ... .
    """
    m = mat.to_rows()
    nr, nc = mat.rows, mat.cols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in m:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(nr, nc):
        # locate a minimal-absolute-value pivot in the remaining block
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = abs(m[i][j])
                if a and (best is None or a < best):
                    best, piv = a, (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            reduced = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    addmul_row(i, t, m[i][t] // m[t][t])
                    if m[i][t]:
                        swap_rows(t, i)
                        reduced = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    addmul_col(j, t, m[t][j] // m[t][t])
                    if m[t][j]:
                        swap_cols(t, j)
                        reduced = False
            if reduced:
                break
        # enforce divisibility: pivot must divide the rest of the block
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(t, offender, -1)
            continue
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return IntMatrix.from_rows(u), IntMatrix.from_rows(m), IntMatrix.from_rows(v)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """⊕ Z/d_i with d_1 | d_2 | ... | d_k, every d_i >= 2."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("divisibility chain violated")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def elements(self) -> Iterable[tuple[int, ...]]:
        def rec(i):
            if i == len(self.invariant_factors):
                yield ()
                return
            for rest in rec(i + 1):
                for a in range(self.invariant_factors[i]):
                    yield (a,) + rest

        return rec(0)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_dim; basis columns in canonical column-HNF."""

    ambient_dim: int
    basis: IntMatrix

    @staticmethod
    def from_generators(ambient_dim: int, vectors: Sequence[Sequence[int]]) -> "Lattice":
        vecs = [v for v in vectors if any(v)]
        for v in vecs:
            if len(v) != ambient_dim:
                raise LatticeError("generator length does not match ambient dimension")
        if not vecs:
            return Lattice(ambient_dim, IntMatrix(ambient_dim, 0, ()))
        return Lattice(ambient_dim, hnf_columns(IntMatrix.from_columns(vecs)))

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice(n, IntMatrix.identity(n))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def generators(self) -> list[tuple[int, ...]]:
        return self.basis.columns()

    def contains(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of vec in the basis, or None if not in the lattice."""
        if len(vec) != self.ambient_dim:
            raise LatticeError("vector length does not match ambient dimension")
        cols = self.basis.columns()
        v = list(vec)
        coords = [0] * len(cols)
        # column-HNF: each column's topmost nonzero entry sits in a distinct
        # row, increasing with the column index, so forward-substitute
        for j, col in enumerate(cols):
            pivot_row = next(i for i, x in enumerate(col) if x)
            if any(v[i] and i < pivot_row for i in range(pivot_row)):
                return None
            q, r = divmod(v[pivot_row], col[pivot_row])
            if r:
                return None
            coords[j] = q
            v = [x - q * y for x, y in zip(v, col)]
        return tuple(coords) if not any(v) else None

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(other.contains(g) for g in self.generators())

    def intersect(self, other: "Lattice") -> "Lattice":
        if self.ambient_dim != other.ambient_dim:
            raise LatticeError("ambient dimension mismatch")
        if self.rank == 0 or other.rank == 0:
            return Lattice.from_generators(self.ambient_dim, [])
        a_cols = self.basis.columns()
        b_cols = other.basis.columns()
        stacked = IntMatrix.from_columns([list(c) for c in a_cols] + [[-x for x in c] for c in b_cols])
        vecs = []
        for k in kernel_basis(stacked):
            coeffs = k[: len(a_cols)]
            vec = [0] * self.ambient_dim
            for c, col in zip(coeffs, a_cols):
                if c:
                    for i, x in enumerate(col):
                        vec[i] += c * x
            vecs.append(vec)
        return Lattice.from_generators(self.ambient_dim, vecs)

    def __add__(self, other: "Lattice") -> "Lattice":
        if self.ambient_dim != other.ambient_dim:
            raise LatticeError("ambient dimension mismatch")
        return Lattice.from_generators(self.ambient_dim, self.generators() + other.generators())


def lattice_intersect(a: Lattice, b: Lattice) -> Lattice:
    return a.intersect(b)


class FiniteQuotient:
    """Structure of sup/sub together with coordinates of elements in it.

    Exposes the invariant factors (1s dropped), one lift in Z^n per
    nontrivial cyclic factor, and coords() reducing any vector of sup to
    its residue tuple.
    """

    def __init__(self, sup: Lattice, sub: Lattice):
        if sup.ambient_dim != sub.ambient_dim:
            raise LatticeError("ambient dimension mismatch")
        if not sub.is_sublattice_of(sup):
            raise LatticeError("sub is not contained in sup")
        if sub.rank != sup.rank:
            raise InfiniteQuotientError(
                f"quotient has positive rank ({sup.rank} vs {sub.rank})"
            )
        self.sup = sup
        self.sub = sub
        r = sup.rank
        coord_cols = [sup.coordinates(g) for g in sub.generators()]
        c = IntMatrix.from_columns([list(c) for c in coord_cols], dim=r)
        u, s, _v = snf(c)
        diag = [s[i, i] for i in range(r)]
        if any(d == 0 for d in diag):
            raise InfiniteQuotientError("degenerate sub basis")
        self._u = u
        self._uinv_cols = _inverse_unimodular(u)
        self._diag = diag
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self.group = FiniteAbelianGroup(tuple(diag[i] for i in self._keep))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors

    def generator_lifts(self) -> list[tuple[int, ...]]:
        """One vector of sup mapping to each retained cyclic generator."""
        sup_cols = self.sup.basis.columns()
        lifts = []
        for i in self._keep:
            col = self._uinv_cols[i]
            vec = [0] * self.sup.ambient_dim
            for c, s in zip(col, sup_cols):
                if c:
                    for k, x in enumerate(s):
                        vec[k] += c * x
            lifts.append(tuple(vec))
        return lifts

    def coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Residue tuple of a sup-vector in ⊕ Z/d_i (nontrivial factors only)."""
        a = self.sup.coordinates(vec)
        if a is None:
            raise LatticeError("vector not in sup")
        b = self._u.apply(a)
        return tuple(b[i] % self._diag[i] for i in self._keep)

    def is_zero(self, vec: Sequence[int]) -> bool:
        return all(x == 0 for x in self.coords(vec))


def _inverse_unimodular(u: IntMatrix) -> list[tuple[int, ...]]:
    """Columns of u^{-1} (u unimodular), by solving u*x = e_i exactly."""
    n = u.rows
    aug = [list(u.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    h, _ = _row_hnf(aug)
    # left block of h must be the identity since det(u) = ±1
    for i in range(n):
        if h[i][:n] != [1 if j == i else 0 for j in range(n)]:
            raise ValueError("matrix is not unimodular")
    inv_rows = [row[n:] for row in h]
    return [tuple(inv_rows[i][j] for i in range(n)) for j in range(n)]


def quotient_structure(sup: Lattice, sub: Lattice) -> FiniteAbelianGroup:
    """Invariant factors of sup/sub (requires finite quotient)."""
    return FiniteQuotient(sup, sub).group
