"""H^1(G, Pic) via the norm-lattice quotient, Brauer classes of invariant
triplets, and restriction maps.

For a subgroup G of the configuration's automorphism group, with D the
free abelian group on the 27 lines, D0 its principal-divisor kernel and N
the G-norm, the group H^1(G, Pic) is Hom((ND ∩ D0)/ND0, Q/Z); we compute
the quotient exactly through Smith normal form and keep coordinates, so
classes are concrete homomorphisms.  The class of an invariant triplet is
the pullback of the (n1 - n2)/3 generator along the relative norm of its
full stabilizer, and restrictions between subgroups are duals of relative
norms as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from . import lines27 as L
from . import weylact as W
from .exactalg import FiniteAbelianGroup, FiniteQuotient, Lattice, kernel_basis, IntMatrix
from .permgrp import PermGroup, compose, inverse

N_LINES = L.N_LINES


class NotConfigurationGroup(ValueError):
    """The permutations do not preserve the intersection pairing."""


@cache
def line_to_pic_matrix() -> IntMatrix:
    """7 x 27 matrix of the line classes in the basis (l, e1..e6)."""
    return IntMatrix.from_columns([list(c) for c in L.pic_classes()])


@cache
def principal_kernel() -> Lattice:
    """D0: divisors with zero Picard class; rank 20."""
    lat = Lattice.from_generators(N_LINES, kernel_basis(line_to_pic_matrix()))
    assert lat.rank == 20
    return lat


def _check_configuration_group(g: PermGroup) -> None:
    for gen in g.generators:
        if not W.preserves_intersections(gen):
            raise NotConfigurationGroup("generator does not preserve intersections")


def norm_apply(g: PermGroup, vec) -> tuple[int, ...]:
    """N(vec) for the full group norm N = sum of all permutation matrices.

    Uses the orbit decomposition: N e_L = (|G|/|orbit(L)|) * indicator(orbit(L)).
    """
    orbits = g.orbits()
    order = g.order
    out = [0] * N_LINES
    for orb in orbits:
        s = sum(vec[x] for x in orb)
        if s:
            w = order // len(orb)
            for x in orb:
                out[x] = w * s
    return tuple(out)


def orbit_norm_vectors(g: PermGroup) -> list[tuple[int, ...]]:
    order = g.order
    out = []
    for orb in g.orbits():
        w = order // len(orb)
        out.append(tuple(w if x in orb else 0 for x in range(N_LINES)))
    return out


@dataclass(frozen=True)
class H1Presentation:
    """The lattices of Manin's quotient together with coordinates in it."""

    group: PermGroup
    nd: Lattice
    nd0: Lattice
    m: Lattice
    quotient: FiniteQuotient

    @property
    def structure(self) -> FiniteAbelianGroup:
        return self.quotient.group

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.quotient.invariant_factors

    def zero(self) -> "BrauerClass":
        return BrauerClass(self, (0,) * len(self.invariant_factors))

    def element_from_hom_values(self, values: tuple[Fraction, ...]) -> "BrauerClass":
        """Build the class from the Q/Z values the homomorphism takes on the
        quotient generators."""
        comps = []
        for val, d in zip(values, self.invariant_factors):
            c = val * d
            if c.denominator != 1:
                raise ValueError("hom not well defined on the quotient")
            comps.append(c.numerator % d)
        return BrauerClass(self, tuple(comps))


@dataclass(frozen=True)
class BrauerClass:
    """Element of Hom((ND ∩ D0)/ND0, Q/Z), as the numerators c_i of its
    values c_i/d_i on the quotient generators."""

    presentation: H1Presentation
    components: tuple[int, ...]

    def value_on(self, vec) -> Fraction:
        """Evaluate the homomorphism on a divisor in ND ∩ D0."""
        coords = self.presentation.quotient.coords(vec)
        d = self.presentation.invariant_factors
        total = sum(Fraction(c * x, di) for c, x, di in zip(self.components, coords, d))
        return total % 1

    @property
    def is_zero(self) -> bool:
        return not any(self.components)

    @property
    def order(self) -> int:
        from math import gcd

        o = 1
        for c, d in zip(self.components, self.presentation.invariant_factors):
            o = o * (d // gcd(c, d)) // _gcd2(o, d // gcd(c, d))
        return o

    def __add__(self, other: "BrauerClass") -> "BrauerClass":
        assert self.presentation.group == other.presentation.group
        d = self.presentation.invariant_factors
        return BrauerClass(
            self.presentation,
            tuple((a + b) % di for a, b, di in zip(self.components, other.components, d)),
        )

    def __neg__(self) -> "BrauerClass":
        d = self.presentation.invariant_factors
        return BrauerClass(self.presentation, tuple((-a) % di for a, di in zip(self.components, d)))


def _gcd2(a, b):
    from math import gcd

    return gcd(a, b)


@cache
def h1(g: PermGroup) -> H1Presentation:
    """Manin's quotient for g: the structure is H^1(g, Pic).

    Cached per group; the construction is deterministic (canonical HNF
    bases, Smith form), so equal groups always receive identical quotient
    coordinates.
    """
    _check_configuration_group(g)
    d0 = principal_kernel()
    nd = Lattice.from_generators(N_LINES, orbit_norm_vectors(g))
    nd0 = Lattice.from_generators(
        N_LINES, [norm_apply(g, v) for v in d0.generators()]
    )
    m = nd.intersect(d0)
    quotient = FiniteQuotient(m, nd0)
    return H1Presentation(g, nd, nd0, m, quotient)


def h1_structure(g: PermGroup) -> FiniteAbelianGroup:
    return h1(g).structure


# -- divisor pairing and the model-case internals -----------------------------


@cache
def divisor_pairing_matrix() -> tuple[tuple[int, ...], ...]:
    mm = L.meet_matrix()
    return mm  # already includes self-intersection -1 on the diagonal


def divisor_pairing(u, v) -> int:
    mm = divisor_pairing_matrix()
    return sum(
        u[i] * v[j] * mm[i][j] for i in range(N_LINES) for j in range(N_LINES) if u[i] and v[j]
    )


def triplet_orbit_divisors(g: PermGroup, triplet_sets) -> list[tuple[int, ...]]:
    """D_i = (|G|/9) * indicator(Delta_i) for the ordered triplet's line sets."""
    w = g.order // 9
    return [tuple(w if x in s else 0 for x in range(N_LINES)) for s in triplet_sets]


def nd0_generators_check(g: PermGroup | None = None) -> bool:
    """For the standard triplet stabilizer: ND0 is spanned by
    3D1 - 3D2, 3D1 - 3D3 and D1 + D2 - 2D3."""
    if g is None:
        g = W.named("U_t")
    sets = W.standard_triplet_linesets()
    if g.orbit_structure() != [9, 9, 9] or set(g.orbits()) != set(sets):
        raise ValueError("group does not have the triplet's [9,9,9] orbit structure")
    d1, d2, d3 = triplet_orbit_divisors(g, sets)

    def lin(c1, c2, c3):
        return tuple(c1 * a + c2 * b + c3 * c for a, b, c in zip(d1, d2, d3))

    claimed = Lattice.from_generators(
        N_LINES, [lin(3, -3, 0), lin(3, 0, -3), lin(1, 1, -2)]
    )
    pres = h1(g)
    return claimed == pres.nd0


def principality_criterion(g: PermGroup | None = None, window: int = 3) -> bool:
    """n1 D1 + n2 D2 + n3 D3 is principal iff n1 + n2 + n3 = 0."""
    if g is None:
        g = W.named("U_t")
    sets = W.standard_triplet_linesets()
    d1, d2, d3 = triplet_orbit_divisors(g, sets)
    d0 = principal_kernel()
    for n1 in range(-window, window + 1):
        for n2 in range(-window, window + 1):
            for n3 in range(-window, window + 1):
                vec = tuple(
                    n1 * a + n2 * b + n3 * c for a, b, c in zip(d1, d2, d3)
                )
                if d0.contains(vec) != (n1 + n2 + n3 == 0):
                    return False
    return True


def line_times_orbit_divisors(g: PermGroup | None = None) -> set[int]:
    """The intersection numbers L . D_i over all lines and all three D_i."""
    if g is None:
        g = W.named("U_t")
    sets = W.standard_triplet_linesets()
    divisors = triplet_orbit_divisors(g, sets)
    values = set()
    for ln in range(N_LINES):
        e = tuple(1 if x == ln else 0 for x in range(N_LINES))
        for d in divisors:
            values.add(divisor_pairing(e, d))
    return values


# -- class map -----------------------------------------------------------------


def triplet_stabilizer(triplet_sets) -> PermGroup:
    """Full stabilizer in W(E6) of an ordered triplet (each pair preserved)."""
    w = W.build_weyl()
    return w.stabilizer(tuple(triplet_sets), W.act_on_lineset_tuple)


def _left_coset_reps(sup: PermGroup, sub: PermGroup) -> list:
    sub_elems = sub.elements()
    reps = []
    covered = set()
    for e in sorted(sup.elements()):
        if e not in covered:
            reps.append(e)
            covered.update(compose(e, s) for s in sub_elems)
    return reps


def relative_norm_apply(sup: PermGroup, sub: PermGroup, vec) -> tuple[int, ...]:
    """Sum of r . vec over left coset representatives of sub in sup; on
    sub-norm vectors this is the transfer N_sup = N_rel ∘ N_sub."""
    out = [0] * N_LINES
    for r in _left_coset_reps(sup, sub):
        for i, x in enumerate(vec):
            if x:
                out[r[i]] += x
    return tuple(out)


def class_map(g: PermGroup, triplet) -> BrauerClass:
    """Brauer class of a g-invariant ordered triplet.

    The class is the image of the canonical order-3 generator of the full
    triplet stabilizer's cohomology: on the quotient for g it evaluates a
    divisor by writing its relative norm as n1 D1 + n2 D2 + n3 D3 and taking
    (n1 - n2)/3.
    """
    sets = tuple(p.lines if hasattr(p, "lines") else frozenset(p) for p in triplet)
    for gen in g.generators:
        if W.act_on_lineset_tuple(gen, sets) != sets:
            raise ValueError("triplet is not invariant under the group")
    stab = triplet_stabilizer(sets)
    if not g.is_subgroup_of(stab):
        raise ValueError("group does not stabilize the triplet")
    pres = h1(g)
    d1, d2, d3 = triplet_orbit_divisors(stab, sets)
    values = []
    for lift in pres.quotient.generator_lifts():
        y = relative_norm_apply(stab, g, lift)
        n = _coefficients_in_orbit_divisors(y, (d1, d2, d3), sets)
        values.append(Fraction(n[0] - n[1], 3) % 1)
    return pres.element_from_hom_values(tuple(values))


def _coefficients_in_orbit_divisors(vec, divisors, sets) -> tuple[int, ...]:
    out = []
    for d, s in zip(divisors, sets):
        member = next(iter(s))
        w = d[member]
        q, r = divmod(vec[member], w)
        assert r == 0, "vector not in the span of the orbit divisors"
        for x in s:
            assert vec[x] == q * w, "vector not constant on the orbit"
        out.append(q)
    for x in range(N_LINES):
        if all(x not in s for s in sets):
            assert vec[x] == 0
    return tuple(out)


# -- restriction ---------------------------------------------------------------


@dataclass(frozen=True)
class RestrictionMap:
    """res: H^1(sup) -> H^1(sub), dual to the relative norm."""

    sup_pres: H1Presentation
    sub_pres: H1Presentation
    # image in sup-quotient coordinates of each sub-quotient generator's norm
    norm_coords: tuple[tuple[int, ...], ...]

    def apply(self, cls: BrauerClass) -> BrauerClass:
        assert cls.presentation.group == self.sup_pres.group
        d_sup = self.sup_pres.invariant_factors
        values = []
        for coords in self.norm_coords:
            val = sum(
                Fraction(c * x, d) for c, x, d in zip(cls.components, coords, d_sup)
            )
            values.append(val % 1)
        return self.sub_pres.element_from_hom_values(tuple(values))

    def is_injective(self) -> bool:
        seen = set()
        for c in self.sup_pres.structure.elements():
            img = self.apply(BrauerClass(self.sup_pres, c)).components
            if img in seen:
                return False
            seen.add(img)
        return True

    def is_bijective(self) -> bool:
        images = {
            self.apply(BrauerClass(self.sup_pres, c)).components
            for c in self.sup_pres.structure.elements()
        }
        return len(images) == self.sup_pres.structure.order == self.sub_pres.structure.order


def restriction(sub: PermGroup, sup: PermGroup) -> RestrictionMap:
    if not sub.is_subgroup_of(sup):
        raise ValueError("first group is not a subgroup of the second")
    pres_sub = h1(sub)
    pres_sup = h1(sup)
    coords = []
    for lift in pres_sub.quotient.generator_lifts():
        y = relative_norm_apply(sup, sub, lift)
        coords.append(pres_sup.quotient.coords(y))
    return RestrictionMap(pres_sup, pres_sub, tuple(coords))


# -- fixed Picard rank -----------------------------------------------------------


def pic_action_matrix(p) -> list[list[int]]:
    """7x7 matrix of the permutation's action on Pic in the basis (l, e1..e6)."""
    cls = L.pic_classes()
    cols = []
    l_col = [
        x + y + z
        for x, y, z in zip(cls[p[L.c(1, 2)]], cls[p[L.a(1)]], cls[p[L.a(2)]])
    ]
    cols.append(l_col)
    for i in range(1, 7):
        cols.append(list(cls[p[L.a(i)]]))
    return [[cols[j][i] for j in range(7)] for i in range(7)]


def pic_trace(p) -> int:
    m = pic_action_matrix(p)
    return sum(m[i][i] for i in range(7))


def pic_rank_fixed(g: PermGroup) -> int:
    """Rank of the fixed sublattice of the rank-7 Picard lattice."""
    rows = []
    for gen in g.generators:
        m = pic_action_matrix(gen)
        for i in range(7):
            row = m[i][:]
            row[i] -= 1
            rows.append(row)
    if not rows:
        return 7
    return 7 - IntMatrix.from_rows(rows).rank


@cache
def weyl_trace_set() -> frozenset[int]:
    """Traces on Pic of all elements of the automorphism group."""
    w = W.build_weyl()
    return frozenset(pic_trace(e) for e in w.elements())


def trace_set(g: PermGroup) -> frozenset[int]:
    return frozenset(pic_trace(e) for e in g.elements())


# -- two-triplet internals --------------------------------------------------------


def parallelogram_check(g: PermGroup | None = None) -> bool:
    """For the order-3 two-triplet stabilizer: the parallelogram rule holds,
    the nine orbit classes Delta_ij - Delta_33 are mutually distinct, and
    they add like (Z/3)^2."""
    if g is None:
        g = W.named("U_tt")
    if g.orbit_structure() != [3] * 9:
        raise ValueError("orbit structure is not nine 3s")
    std = L.standard_triplet()
    other = L.st_three_pairs((1, 4), (2, 5), (3, 6))
    inter = W.intersection_matrix(std, other)
    orbits = set(g.orbits())
    cells = {}
    for i in range(3):
        for j in range(3):
            cell = inter[i][j]
            if cell not in orbits:
                raise ValueError("intersection cells are not the group's orbits")
            cells[(i + 1, j + 1)] = tuple(1 if x in cell else 0 for x in range(N_LINES))
    pres = h1(g)

    def cls(i, j):
        i = (i - 1) % 3 + 1
        j = (j - 1) % 3 + 1
        vec = tuple(a - b for a, b in zip(cells[(i, j)], cells[(3, 3)]))
        return pres.quotient.coords(vec)

    # parallelogram rule and (Z/3)^2 addition
    for i1 in range(1, 4):
        for j1 in range(1, 4):
            for i2 in range(1, 4):
                for j2 in range(1, 4):
                    lhs = tuple(
                        (a + b) % d
                        for a, b, d in zip(cls(i1, j1), cls(i2, j2), pres.invariant_factors)
                    )
                    if lhs != cls(i1 + i2, j1 + j2):
                        return False
    nine = {cls(i, j) for i in range(1, 4) for j in range(1, 4)}
    if len(nine) != 9:
        return False
    total = [0] * len(pres.invariant_factors)
    for i in range(1, 4):
        for j in range(1, 4):
            total = [
                (a + b) % d for a, b, d in zip(total, cls(i, j), pres.invariant_factors)
            ]
    return not any(total)


# -- reports -----------------------------------------------------------------------


def h1_report(g: PermGroup) -> dict:
    pres = h1(g)
    so = W.stabilized_objects(g)
    return {
        "group_order": g.order,
        "orbit_structure": g.orbit_structure(),
        "h1_invariant_factors": list(pres.invariant_factors),
        "pic_fixed_rank": pic_rank_fixed(g),
        "stabilized": {
            "double_sixes": len(so["double_sixes"]),
            "pairs": len(so["steiner_pairs"]),
            "triplets": len(so["triplets"]),
        },
    }
