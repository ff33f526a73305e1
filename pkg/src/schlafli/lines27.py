"""The configuration of the 27 lines on a smooth cubic surface.

Lines carry the classical blown-up-model labels a1..a6, b1..b6, c12..c56
and their rank-7 Picard classes.  Everything else — the 45 tritangent
planes, trihedra with their kinds, the 120 Steiner pairs (with Schläfli
types I/II/III), the 40 decompositions and 240 triplets, the 72 sixers and
36 double-sixes, and the 200 enneahedra — is enumerated by brute force
from the intersection pairing and cached.  The Schläfli-type tags are
derived from the label census, independently of the enumeration, so they
double as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations, permutations

N_LINES = 27

# label order: a1..a6 = 0..5, b1..b6 = 6..11, c_ij (i<j, lexicographic) = 12..26
_C_PAIRS = [(i, j) for i in range(1, 7) for j in range(i + 1, 7)]

LABELS: tuple[str, ...] = tuple(
    [f"a{i}" for i in range(1, 7)]
    + [f"b{i}" for i in range(1, 7)]
    + [f"c{i}{j}" for i, j in _C_PAIRS]
)

LABEL_INDEX = {s: k for k, s in enumerate(LABELS)}

CANONICAL_CLASS = (-3, 1, 1, 1, 1, 1, 1)
MINUS_K = tuple(-x for x in CANONICAL_CLASS)


def a(i: int) -> int:
    return i - 1


def b(i: int) -> int:
    return 5 + i


def c(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return 12 + _C_PAIRS.index((i, j))


@cache
def pic_classes() -> tuple[tuple[int, ...], ...]:
    """Picard classes (l, e1..e6): a_i = e_i, b_i = 2l - sum(e) + e_i,
    c_ij = l - e_i - e_j."""
    classes = []
    for i in range(1, 7):
        classes.append(tuple([0] + [1 if t == i else 0 for t in range(1, 7)]))
    for i in range(1, 7):
        classes.append(tuple([2] + [0 if t == i else -1 for t in range(1, 7)]))
    for i, j in _C_PAIRS:
        classes.append(tuple([1] + [-1 if t in (i, j) else 0 for t in range(1, 7)]))
    return tuple(classes)


def pairing(u, v) -> int:
    """Intersection pairing of signature (1, -1^6)."""
    return u[0] * v[0] - sum(x * y for x, y in zip(u[1:], v[1:]))


def intersection(x: int, y: int) -> int:
    if x == y:
        return -1
    return pairing(pic_classes()[x], pic_classes()[y])


@cache
def meet_matrix() -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(intersection(x, y) for y in range(N_LINES)) for x in range(N_LINES)
    )


def meets(x: int, y: int) -> bool:
    return x != y and meet_matrix()[x][y] == 1


@cache
def tritangent_planes() -> tuple[frozenset[int], ...]:
    """All triples of pairwise-meeting lines whose classes sum to -K."""
    cls = pic_classes()
    mm = meet_matrix()
    out = []
    for x, y, z in combinations(range(N_LINES), 3):
        if mm[x][y] == 1 and mm[x][z] == 1 and mm[y][z] == 1:
            total = tuple(cls[x][t] + cls[y][t] + cls[z][t] for t in range(7))
            if total == MINUS_K:
                out.append(frozenset((x, y, z)))
    return tuple(sorted(out, key=sorted))


@cache
def planes_through() -> tuple[tuple[frozenset[int], ...], ...]:
    table = [[] for _ in range(N_LINES)]
    for pl in tritangent_planes():
        for ln in pl:
            table[ln].append(pl)
    return tuple(tuple(pls) for pls in table)


@cache
def trihedra() -> tuple[frozenset[frozenset[int]], ...]:
    """All trihedra: triples of tritangent planes with pairwise disjoint lines."""
    planes = tritangent_planes()
    npl = len(planes)
    disjoint = [
        [j for j in range(npl) if not (planes[i] & planes[j])] for i in range(npl)
    ]
    out = []
    for i in range(npl):
        for j in disjoint[i]:
            if j <= i:
                continue
            sj = set(disjoint[j])
            for k in disjoint[i]:
                if k > j and k in sj:
                    out.append(frozenset((planes[i], planes[j], planes[k])))
    return tuple(out)


def conjugate_planes(tri: frozenset[frozenset[int]]) -> list[frozenset[int]]:
    """Tritangent planes sharing a line with each plane of the trihedron."""
    members = list(tri)
    out = []
    for pl in tritangent_planes():
        if pl in tri:
            continue
        if all(pl & m for m in members):
            out.append(pl)
    return out


def trihedron_kind(tri: frozenset[frozenset[int]]) -> str:
    """'first', 'second' or 'third' by the number of conjugate planes (0/1/3)."""
    if tri not in set(trihedra()):
        raise ValueError("not a trihedron")
    n = len(conjugate_planes(tri))
    kind = {0: "first", 1: "second", 3: "third"}.get(n)
    if kind is None:
        raise AssertionError(f"trihedron with {n} conjugate planes")
    return kind


@dataclass(frozen=True)
class SteinerPair:
    """A pair of Steiner trihedra, as the canonical 3x3 matrix of its nine
    lines; rows and columns are the six tritangent planes."""

    matrix: tuple[tuple[int, int, int], ...]

    @property
    def lines(self) -> frozenset[int]:
        return frozenset(x for row in self.matrix for x in row)

    @property
    def row_planes(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(row) for row in self.matrix)

    @property
    def column_planes(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(col) for col in zip(*self.matrix))

    @property
    def schlafli_type(self) -> str:
        """I = 3a+3b+3c, II = 9c, III = 2a+2b+5c; independent of the
        plane-based enumeration."""
        na = sum(1 for x in self.lines if x < 6)
        nb = sum(1 for x in self.lines if 6 <= x < 12)
        kinds = (na, nb)
        if kinds == (3, 3):
            return "I"
        if kinds == (0, 0):
            return "II"
        if kinds == (2, 2):
            return "III"
        raise AssertionError(f"unexpected label census {kinds}")

    def labels(self) -> list[list[str]]:
        return [[LABELS[x] for x in row] for row in self.matrix]


def canonical_pair_matrix(matrix) -> tuple[tuple[int, int, int], ...]:
    """Least matrix over row permutations x column permutations x transpose."""
    best = None
    for m in (matrix, tuple(zip(*matrix))):
        for rp in permutations(range(3)):
            rows = [m[i] for i in rp]
            for cp in permutations(range(3)):
                cand = tuple(tuple(row[j] for j in cp) for row in rows)
                if best is None or cand < best:
                    best = cand
    return best


def pair_from_rows(rows) -> SteinerPair:
    """Build a SteinerPair from a 3x3 array of line indices, checking that
    rows and columns really are tritangent planes."""
    planeset = set(tritangent_planes())
    mat = tuple(tuple(row) for row in rows)
    lines = [x for row in mat for x in row]
    if len(set(lines)) != 9:
        raise ValueError("nine distinct lines required")
    for row in mat:
        if frozenset(row) not in planeset:
            raise ValueError(f"row {row} is not a tritangent plane")
    for col in zip(*mat):
        if frozenset(col) not in planeset:
            raise ValueError(f"column {col} is not a tritangent plane")
    return SteinerPair(canonical_pair_matrix(mat))


@cache
def steiner_pairs() -> tuple[SteinerPair, ...]:
    """All 120 pairs, from the Steiner (third-kind) trihedra: the conjugate
    planes of a Steiner trihedron form the partner, and the common lines of
    the two trihedra lay out the 3x3 matrix."""
    seen = {}
    for tri in trihedra():
        conj = conjugate_planes(tri)
        if len(conj) != 3:
            continue
        rows = sorted(tri, key=sorted)
        cols = sorted(conj, key=sorted)
        matrix = tuple(
            tuple(next(iter(r & c)) for c in cols) for r in rows
        )
        pair = SteinerPair(canonical_pair_matrix(matrix))
        seen[pair.matrix] = pair
    return tuple(sorted(seen.values(), key=lambda p: p.matrix))


@cache
def pair_by_lines() -> dict[frozenset[int], SteinerPair]:
    table = {}
    for p in steiner_pairs():
        assert p.lines not in table, "pair not determined by its line set"
        table[p.lines] = p
    return table


@dataclass(frozen=True)
class Decomposition:
    """Unordered set of three line-disjoint Steiner pairs covering all 27."""

    pairs: frozenset[SteinerPair]

    @property
    def kind(self) -> str:
        types = sorted(p.schlafli_type for p in self.pairs)
        if types == ["I", "I", "II"]:
            return "St_(ijk)(lmn)"
        if types == ["III", "III", "III"]:
            return "St_(ij)(kl)(mn)"
        raise AssertionError(f"unexpected type census {types}")

    @property
    def line_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(p.lines for p in self.pairs)


Triplet = tuple[SteinerPair, SteinerPair, SteinerPair]


@cache
def decompositions_and_triplets() -> tuple[tuple[Decomposition, ...], tuple[Triplet, ...]]:
    pairs = steiner_pairs()
    decs = set()
    for p in pairs:
        complements = [q for q in pairs if not (q.lines & p.lines)]
        assert len(complements) == 2, "every pair has exactly two complements"
        decs.add(Decomposition(frozenset([p, *complements])))
    decs = tuple(sorted(decs, key=lambda d: sorted(p.matrix for p in d.pairs)))
    triplets = tuple(
        trip for d in decs for trip in permutations(sorted(d.pairs, key=lambda p: p.matrix))
    )
    return decs, triplets


def decompositions() -> tuple[Decomposition, ...]:
    return decompositions_and_triplets()[0]


def triplets() -> tuple[Triplet, ...]:
    return decompositions_and_triplets()[1]


def triplet_line_sets(t: Triplet) -> tuple[frozenset[int], ...]:
    return tuple(p.lines for p in t)


# -- named decompositions (the standard representatives) ---------------------


def pair_type_I(i: int, j: int, k: int) -> SteinerPair:
    return pair_from_rows(
        [
            [a(i), b(j), c(i, j)],
            [b(k), c(j, k), a(j)],
            [c(i, k), a(k), b(i)],
        ]
    )


def pair_type_II(ijk, lmn) -> SteinerPair:
    (i, j, k), (l, m, n) = ijk, lmn
    return pair_from_rows(
        [
            [c(i, l), c(j, m), c(k, n)],
            [c(j, n), c(k, l), c(i, m)],
            [c(k, m), c(i, n), c(j, l)],
        ]
    )


def pair_type_III(i: int, j: int, k: int, l: int, m: int, n: int) -> SteinerPair:
    return pair_from_rows(
        [
            [a(i), b(l), c(i, l)],
            [b(k), a(j), c(j, k)],
            [c(i, k), c(j, l), c(m, n)],
        ]
    )


def st_two_triples(ijk, lmn) -> tuple[SteinerPair, SteinerPair, SteinerPair]:
    """The ordered triplet of the decomposition St_(ijk)(lmn)."""
    (i, j, k), (l, m, n) = tuple(ijk), tuple(lmn)
    return (pair_type_I(i, j, k), pair_type_I(l, m, n), pair_type_II((i, j, k), (l, m, n)))


def st_three_pairs(ij, kl, mn) -> tuple[SteinerPair, SteinerPair, SteinerPair]:
    """The ordered triplet of the decomposition St_(ij)(kl)(mn)."""
    (i, j), (k, l), (m, n) = tuple(ij), tuple(kl), tuple(mn)
    return (
        pair_type_III(i, j, k, l, m, n),
        pair_type_III(k, l, m, n, i, j),
        pair_type_III(m, n, i, j, k, l),
    )


def standard_triplet() -> tuple[SteinerPair, SteinerPair, SteinerPair]:
    """St_(123)(456), the reference triplet used throughout."""
    return st_two_triples((1, 2, 3), (4, 5, 6))


# -- sixers and double-sixes --------------------------------------------------


@cache
def sixers() -> tuple[frozenset[int], ...]:
    """All 72 sets of six mutually skew lines, by clique backtracking."""
    mm = meet_matrix()
    skew = [frozenset(y for y in range(N_LINES) if y != x and mm[x][y] == 0)
            for x in range(N_LINES)]
    out = []

    def extend(chosen, candidates):
        if len(chosen) == 6:
            out.append(frozenset(chosen))
            return
        for x in sorted(candidates):
            extend(chosen + [x], {y for y in candidates if y > x and y in skew[x]})

    extend([], set(range(N_LINES)))
    return tuple(sorted(out, key=sorted))


@dataclass(frozen=True)
class DoubleSix:
    """A sixer with its partner, as a canonical 2x6 matrix: column lines are
    skew, all other cross pairs meet."""

    matrix: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def sixer_pair(self) -> frozenset[frozenset[int]]:
        return frozenset((frozenset(self.matrix[0]), frozenset(self.matrix[1])))

    @property
    def lines(self) -> frozenset[int]:
        return frozenset(self.matrix[0]) | frozenset(self.matrix[1])

    def labels(self) -> list[list[str]]:
        return [[LABELS[x] for x in row] for row in self.matrix]


def partner_of(sixer: frozenset[int]) -> frozenset[int]:
    """The unique sixer completing a double-six: each partner line meets
    exactly five of the given six."""
    mm = meet_matrix()
    partner = frozenset(
        y
        for y in range(N_LINES)
        if y not in sixer and sum(mm[y][x] == 1 for x in sixer) == 5
    )
    assert len(partner) == 6 and partner in set(sixers()), "partner is a sixer"
    return partner


def _double_six_from(sixer: frozenset[int]) -> DoubleSix:
    mm = meet_matrix()
    other = partner_of(sixer)
    row1 = tuple(sorted(sixer if min(sixer) < min(other) else other))
    row2_src = other if min(sixer) < min(other) else sixer
    row2 = tuple(next(y for y in row2_src if mm[x][y] == 0) for x in row1)
    return DoubleSix((row1, row2))


@cache
def double_sixes() -> tuple[DoubleSix, ...]:
    seen = {}
    for s in sixers():
        ds = _double_six_from(s)
        seen[ds.sixer_pair] = ds
    return tuple(sorted(seen.values(), key=lambda d: d.matrix))


def double_sixes_within(t1: SteinerPair, t2: SteinerPair) -> tuple[DoubleSix, ...]:
    """The double-sixes among the 18 lines of two disjoint Steiner pairs;
    always exactly three, pairwise azygetic."""
    if t1.lines & t2.lines:
        raise ValueError("pairs must have disjoint line sets")
    pool = t1.lines | t2.lines
    found = tuple(ds for ds in double_sixes() if ds.lines <= pool)
    assert len(found) == 3
    for x, y in combinations(found, 2):
        assert len(x.lines & y.lines) == 6, "azygetic"
    return found


# -- enneahedra ----------------------------------------------------------------


@cache
def enneahedra() -> tuple[tuple[frozenset[frozenset[int]], int], ...]:
    """Systems of nine tritangent planes covering all 27 lines that arise
    from decompositions: each pair contributes its rows or its columns.
    Returns (plane set, number of source decompositions)."""
    counts: dict[frozenset[frozenset[int]], int] = {}
    for dec in decompositions():
        pairs = sorted(dec.pairs, key=lambda p: p.matrix)
        for choice in range(8):
            planes: set[frozenset[int]] = set()
            for idx, p in enumerate(pairs):
                planes |= p.row_planes if (choice >> idx) & 1 else p.column_planes
            key = frozenset(planes)
            counts[key] = counts.get(key, 0) + 1
    # each enneahedron is counted once per (decomposition, row/col choice)
    # producing it; a decomposition yields it via exactly one choice
    return tuple(sorted(counts.items(), key=lambda kv: sorted(sorted(sorted(p)) for p in kv[0])))


def enneahedra_first_kind() -> list[frozenset[frozenset[int]]]:
    return [planes for planes, mult in enneahedra() if mult > 1]
