"""Permutation groups on a finite point set.

Schreier-Sims stabilizer chains give order and membership; orbit
transversals with Schreier generators give stabilizers of arbitrary
hashable objects under arbitrary actions.  Small groups (the only ones we
ever sweep exhaustively) additionally carry their full element list, which
makes subgroup enumeration, Sylow subgroups and normalizers cheap.

Groups are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """(p*q)(x) = p(q(x)): apply q first."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if not seen[i]:
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            order = _lcm(order, ln)
    return order


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def perm_to_json(p: Perm) -> str:
    return json.dumps(list(p))


def perm_from_json(s: str, degree: int) -> Perm:
    img = json.loads(s)
    if not is_perm(img, degree):
        raise ValueError("not a permutation of the expected degree")
    return tuple(img)


class PermGroup:
    """Group generated by permutations of {0..degree-1}."""

    def __init__(self, degree: int, generators: Iterable[Perm]):
        self.degree = degree
        gens = sorted({tuple(g) for g in generators if tuple(g) != identity(degree)})
        for g in gens:
            if not is_perm(g, degree):
                raise ValueError("generator is not a permutation of the degree")
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._elements: frozenset[Perm] | None = None

    @staticmethod
    def trivial(degree: int) -> "PermGroup":
        return PermGroup(degree, [])

    @staticmethod
    def from_elements(degree: int, elements: Iterable[Perm]) -> "PermGroup":
        elems = frozenset(tuple(e) for e in elements)
        g = PermGroup(degree, elems)
        g._elements = elems | {identity(degree)}
        return g

    # -- stabilizer chain ---------------------------------------------------

    @cached_property
    def _chain(self) -> list[dict]:
        """Schreier-Sims chain.

        Level i holds a base point, the generators of the stabilizer of all
        earlier base points, and a transversal {point: perm with
        perm[base] = point}.  After construction every Schreier generator
        strips to the identity, which certifies order and membership.
        """
        n = self.degree
        ident = identity(n)
        base: list[int] = []
        strong: list[Perm] = []
        transversals: list[dict[int, Perm]] = []

        def level_gens(i: int) -> list[Perm]:
            return [s for s in strong if all(s[base[t]] == base[t] for t in range(i))]

        def add_strong(h: Perm) -> None:
            strong.append(h)
            if all(h[b] == b for b in base):
                base.append(next(k for k in range(n) if h[k] != k))
                transversals.append({})

        def recompute(i: int) -> None:
            tr = transversals[i]
            tr.clear()
            tr[base[i]] = ident
            queue = [base[i]]
            gens = level_gens(i)
            while queue:
                x = queue.pop()
                for g in gens:
                    y = g[x]
                    if y not in tr:
                        tr[y] = compose(g, tr[x])
                        queue.append(y)

        def strip(g: Perm, start: int) -> Perm:
            for i in range(start, len(base)):
                rep = transversals[i].get(g[base[i]])
                if rep is None:
                    return g
                g = compose(inverse(rep), g)
            return g

        for g in self.generators:
            if g != ident and g not in strong:
                add_strong(g)

        while True:
            for i in range(len(base)):
                recompute(i)
            new_gen = None
            for i in range(len(base) - 1, -1, -1):
                gens = level_gens(i)
                tr = transversals[i]
                for x, rep in tr.items():
                    for g in gens:
                        sg = compose(inverse(tr[g[x]]), compose(g, rep))
                        if sg == ident:
                            continue
                        h = strip(sg, i + 1)
                        if h != ident:
                            new_gen = h
                            break
                    if new_gen:
                        break
                if new_gen:
                    break
            if new_gen is None:
                break
            add_strong(new_gen)

        return [
            {"base": b, "gens": level_gens(i), "transversal": tr}
            for i, (b, tr) in enumerate(zip(base, transversals))
        ]

    @cached_property
    def order(self) -> int:
        if self._elements is not None:
            return len(self._elements)
        result = 1
        for lv in self._chain:
            result *= len(lv["transversal"])
        return result

    def __contains__(self, p: Perm) -> bool:
        if len(p) != self.degree:
            return False
        if self._elements is not None:
            return tuple(p) in self._elements
        g = tuple(p)
        for lv in self._chain:
            rep = lv["transversal"].get(g[lv["base"]])
            if rep is None:
                return False
            g = compose(inverse(rep), g)
        return g == identity(self.degree)

    def elements(self) -> frozenset[Perm]:
        """Every element, materialized.  Guarded: only for small groups."""
        if self._elements is None:
            if self.order > 200_000:
                raise ValueError(f"refusing to enumerate {self.order} elements")
            elems = [identity(self.degree)]
            for lv in reversed(self._chain):
                elems = [compose(t, e) for t in lv["transversal"].values() for e in elems]
            self._elements = frozenset(elems)
        return self._elements

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order == other.order
            and self.is_subgroup_of(other)
        )

    def __hash__(self):
        return hash((self.degree, self.generators))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, ngens={len(self.generators)})"

    # -- orbits and actions ---------------------------------------------------

    def orbit(self, point: int) -> frozenset[int]:
        seen = {point}
        queue = [point]
        while queue:
            pt = queue.pop()
            for g in self.generators:
                if g[pt] not in seen:
                    seen.add(g[pt])
                    queue.append(g[pt])
        return frozenset(seen)

    def orbits(self, points: Iterable[int] | None = None) -> list[frozenset[int]]:
        todo = set(range(self.degree) if points is None else points)
        out = []
        while todo:
            orb = self.orbit(min(todo)) & todo if points is not None else self.orbit(min(todo))
            out.append(frozenset(orb))
            todo -= orb
        return sorted(out, key=lambda o: (len(o), sorted(o)))

    def orbit_structure(self, points: Iterable[int] | None = None) -> list[int]:
        return sorted(len(o) for o in self.orbits(points))

    def object_orbit(
        self, obj: Hashable, act: Callable[[Perm, Hashable], Hashable]
    ) -> dict[Hashable, Perm]:
        """Orbit of obj with a transversal: maps each image to a group
        element sending obj there."""
        tr = {obj: identity(self.degree)}
        queue = [obj]
        while queue:
            x = queue.pop()
            for g in self.generators:
                y = act(g, x)
                if y not in tr:
                    tr[y] = compose(g, tr[x])
                    queue.append(y)
        return tr

    def stabilizer(
        self, obj: Hashable, act: Callable[[Perm, Hashable], Hashable]
    ) -> "PermGroup":
        """Exact stabilizer of obj, via Schreier generators of the orbit."""
        tr = self.object_orbit(obj, act)
        target = self.order // len(tr)
        schreier: list[Perm] = []
        sub = PermGroup(self.degree, [])
        for x, rep in tr.items():
            for g in self.generators:
                y = act(g, x)
                sg = compose(inverse(tr[y]), compose(g, rep))
                if sg != identity(self.degree) and sg not in sub:
                    schreier.append(sg)
                    sub = PermGroup(self.degree, schreier)
                    if sub.order == target:
                        return sub
        assert sub.order == target, "orbit-stabilizer mismatch"
        return sub

    def fixed_objects(
        self, objects: Iterable[Hashable], act: Callable[[Perm, Hashable], Hashable]
    ) -> list[Hashable]:
        return [x for x in objects if all(act(g, x) == x for g in self.generators)]

    def orbits_on(
        self, objects: Iterable[Hashable], act: Callable[[Perm, Hashable], Hashable]
    ) -> list[list[Hashable]]:
        todo = set(objects)
        out = []
        while todo:
            x = next(iter(todo))
            orb = set(self.object_orbit(x, act))
            out.append(sorted(orb, key=repr))
            todo -= orb
        return sorted(out, key=lambda o: (len(o), repr(o[0])))


def act_on_points(g: Perm, x: int) -> int:
    return g[x]


def act_on_set(g: Perm, s: frozenset) -> frozenset:
    return frozenset(g[x] for x in s)


def act_on_tuple(g: Perm, t: tuple) -> tuple:
    """Acts elementwise, recursing into nested tuples/frozensets of points."""
    return tuple(_act_any(g, x) for x in t)


def _act_any(g: Perm, x):
    if isinstance(x, int):
        return g[x]
    if isinstance(x, tuple):
        return tuple(_act_any(g, y) for y in x)
    if isinstance(x, frozenset):
        return frozenset(_act_any(g, y) for y in x)
    raise TypeError(f"cannot act on {type(x)}")


def act_on_set_of_sets(g: Perm, s: frozenset) -> frozenset:
    return frozenset(act_on_set(g, x) for x in s)


# ---------------------------------------------------------------------------
# small-group machinery (element-list based)
# ---------------------------------------------------------------------------


class SmallGroup:
    """A group given by its complete element list, with a multiplication
    table for fast closures.  Used for exhaustive subgroup sweeps."""

    def __init__(self, degree: int, elements: Sequence[Perm]):
        self.degree = degree
        self.elements = sorted(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if identity(degree) not in self.index:
            raise ValueError("element list is missing the identity")
        n = len(self.elements)
        self.table = [
            [self.index[compose(a, b)] for b in self.elements] for a in self.elements
        ]
        self.id_idx = self.index[identity(degree)]
        self.inv = [0] * n
        for i, row in enumerate(self.table):
            self.inv[i] = row.index(self.id_idx)

    @staticmethod
    def from_permgroup(g: PermGroup, bound: int = 1000) -> "SmallGroup":
        if g.order > bound:
            raise ValueError(f"group order {g.order} exceeds bound {bound}")
        return SmallGroup(g.degree, sorted(g.elements()))

    def __len__(self):
        return len(self.elements)

    def closure(self, seed: Iterable[int]) -> frozenset[int]:
        elems = {self.id_idx}
        frontier = list(set(seed) - elems)
        elems.update(frontier)
        gens = list(frontier)
        while frontier:
            new = []
            for x in frontier:
                row = self.table[x]
                for g in gens:
                    y = row[g]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
                    z = self.table[g][x]
                    if z not in elems:
                        elems.add(z)
                        new.append(z)
            frontier = new
        return frozenset(elems)

    def all_subgroups(self) -> list[frozenset[int]]:
        """Every subgroup exactly once (not up to conjugacy).

        Breadth-first closure: every subgroup arises from a smaller one by
        adjoining a single element, so the sweep is exhaustive.
        """
        trivial = frozenset({self.id_idx})
        known = {trivial}
        frontier = [trivial]
        n = len(self.elements)
        while frontier:
            nxt = []
            for sub in frontier:
                for x in range(n):
                    if x in sub:
                        continue
                    joined = self.closure(sub | {x})
                    if joined not in known:
                        known.add(joined)
                        nxt.append(joined)
            frontier = nxt
        return sorted(known, key=lambda s: (len(s), sorted(s)))

    def subgroup_perms(self, sub: frozenset[int]) -> list[Perm]:
        return [self.elements[i] for i in sorted(sub)]

    def conjugate(self, sub: frozenset[int], g: int) -> frozenset[int]:
        ginv = self.inv[g]
        return frozenset(self.table[g][self.table[x][ginv]] for x in sub)

    def normalizer(self, sub: frozenset[int]) -> frozenset[int]:
        return frozenset(
            g for g in range(len(self.elements)) if self.conjugate(sub, g) == sub
        )

    def element_order(self, i: int) -> int:
        return perm_order(self.elements[i])


def all_subgroups(g: PermGroup, bound: int = 1000) -> list[PermGroup]:
    """Every subgroup of g (not just up to conjugacy), as PermGroups with
    cached element lists.  Requires g.order <= bound."""
    sg = SmallGroup.from_permgroup(g, bound)
    out = []
    for sub in sg.all_subgroups():
        out.append(PermGroup.from_elements(g.degree, sg.subgroup_perms(sub)))
    return out


def sylow3(g: PermGroup, bound: int = 100_000) -> PermGroup:
    """A Sylow-3 subgroup, by growing a 3-subgroup inside its normalizer.

    Requires the element list (order <= bound); the groups swept here are
    far smaller.
    """
    order = g.order
    three_part = 1
    while order % 3 == 0:
        order //= 3
        three_part *= 3
    if three_part == 1:
        return PermGroup.trivial(g.degree)
    if g.order > bound:
        raise ValueError(f"group order {g.order} exceeds bound {bound}")
    sg = SmallGroup(g.degree, sorted(g.elements()))
    three_elems = [
        i for i in range(len(sg.elements)) if _is_power_of_3(sg.element_order(i))
    ]
    current = frozenset({sg.id_idx})
    while len(current) < three_part:
        nz = sg.normalizer(current)
        grown = None
        for i in three_elems:
            if i in current or i not in nz:
                continue
            candidate = sg.closure(current | {i})
            if _is_power_of_3(len(candidate)):
                grown = candidate
                break
        assert grown is not None, "p-subgroup growth stalled"
        current = grown
    return PermGroup.from_elements(g.degree, sg.subgroup_perms(current))


def _is_power_of_3(n: int) -> bool:
    while n % 3 == 0:
        n //= 3
    return n == 1


def group_order(g: PermGroup) -> int:
    return g.order
