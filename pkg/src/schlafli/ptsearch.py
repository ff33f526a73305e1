"""Height-bounded search for rational points on cubic surfaces.

A projective point is counted through its primitive integer representative
with positive first nonzero coordinate; the naive height is the maximum
absolute coordinate.  The optimized search fixes (T1,T2,T3) and solves the
resulting integer cubic in T0 exactly (monotone-interval bisection, no
floats); the oracle enumerates all quadruples with numpy and exists only
to check the optimized path.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import kernels
from .fpgeom import MONOMIALS, CubicForm


@dataclass(frozen=True)
class HeightBound:
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("height bound must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    count: int
    points: tuple[tuple[int, int, int, int], ...]


def _slice_coefficients(f: CubicForm):
    """Group the integer coefficients by T0-degree for the slice solver."""
    ints = dict(zip(MONOMIALS, f.integer_coefficients()))

    def grab(*exps):
        return [ints[e] for e in exps]

    c3 = ints[(3, 0, 0, 0)]
    lin = grab((2, 1, 0, 0), (2, 0, 1, 0), (2, 0, 0, 1))
    quad = grab((1, 2, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1),
                (1, 0, 2, 0), (1, 0, 1, 1), (1, 0, 0, 2))
    cub = grab((0, 3, 0, 0), (0, 2, 1, 0), (0, 2, 0, 1), (0, 1, 2, 0),
               (0, 1, 1, 1), (0, 1, 0, 2), (0, 0, 3, 0), (0, 0, 2, 1),
               (0, 0, 1, 2), (0, 0, 0, 3))
    return c3, lin, quad, cub


def search(
    f: CubicForm,
    bound: HeightBound | int,
    force_pure: bool = False,
    parallel: int = 1,
) -> SearchResult:
    """All projective points of height <= bound, exactly."""
    b = bound.bound if isinstance(bound, HeightBound) else int(bound)
    if b < 1:
        raise ValueError("height bound must be >= 1")
    c3, lin, quad, cub = _slice_coefficients(f)
    if parallel > 1:
        pts = _search_parallel(c3, lin, quad, cub, b, parallel, force_pure)
    else:
        pts = kernels.search_slices(c3, lin, quad, cub, b, force_pure=force_pure)
    pts = tuple(pts)
    for p in pts:
        assert f.evaluate(p) == 0
    return SearchResult(len(pts), pts)


def _search_parallel(c3, lin, quad, cub, b, nproc, force_pure):
    """Split the T1-range across processes; deterministic sorted merge."""
    from concurrent.futures import ProcessPoolExecutor

    ranges = []
    step = (2 * b + 1 + nproc - 1) // nproc
    lo = -b
    while lo <= b:
        ranges.append((lo, min(lo + step - 1, b)))
        lo += step
    out = set()
    with ProcessPoolExecutor(max_workers=nproc) as pool:
        futures = [
            pool.submit(_search_t1_range, c3, lin, quad, cub, b, r, force_pure)
            for r in ranges
        ]
        for fut in futures:
            out.update(fut.result())
    return sorted(out)


def _search_t1_range(c3, lin, quad, cub, b, t1_range, force_pure):
    lo, hi = t1_range
    found = []
    for t1 in range(lo, hi + 1):
        found.extend(_slice_plane(c3, lin, quad, cub, b, t1))
    if c3 == 0:
        found.append((1, 0, 0, 0))
    return found


def _slice_plane(c3, lin, quad, cub, b, t1):
    from ._purekern import _normalize_point, int_cubic_roots

    l1, l2, l3 = lin
    q11, q12, q13, q22, q23, q33 = quad
    k111, k112, k113, k122, k123, k133, k222, k223, k233, k333 = cub
    out = []
    t1sq = t1 * t1
    for t2 in range(-b, b + 1):
        t2sq = t2 * t2
        for t3 in range(-b, b + 1):
            c2 = l1 * t1 + l2 * t2 + l3 * t3
            c1 = (q11 * t1sq + q12 * t1 * t2 + q22 * t2sq
                  + (q13 * t1 + q23 * t2 + q33 * t3) * t3)
            c0 = (k111 * t1sq * t1 + k112 * t1sq * t2 + k122 * t1 * t2sq
                  + k222 * t2sq * t2
                  + (k113 * t1sq + k123 * t1 * t2 + k223 * t2sq
                     + (k133 * t1 + k233 * t2 + k333 * t3) * t3) * t3)
            roots, all_roots = int_cubic_roots(c3, c2, c1, c0, b)
            if all_roots:
                if (t1, t2, t3) == (0, 0, 0):
                    continue
                candidates = range(-b, b + 1)
            else:
                candidates = roots
            for t0 in candidates:
                pt = _normalize_point(t0, t1, t2, t3)
                if pt is not None:
                    out.append(pt)
    return out


def search_oracle(f: CubicForm, bound: HeightBound | int) -> SearchResult:
    """Plain enumeration of every quadruple in the box (the independent
    check for `search`): no solving, just evaluation.  The (t2,t3)-plane is
    numpy-vectorized; coefficients collapse into ten precomputed planes
    indexed by the (t0,t1)-exponent pair."""
    import numpy as np

    b = bound.bound if isinstance(bound, HeightBound) else int(bound)
    if b > 200:
        raise ValueError("oracle is restricted to heights <= 200")
    ints = f.integer_coefficients()
    rng = np.arange(-b, b + 1, dtype=np.int64)
    t2g, t3g = np.meshgrid(rng, rng, indexing="ij")
    p2 = [np.ones_like(t2g), t2g, t2g * t2g, t2g * t2g * t2g]
    p3 = [np.ones_like(t3g), t3g, t3g * t3g, t3g * t3g * t3g]
    planes: dict[tuple[int, int], "np.ndarray"] = {}
    for (e0, e1, e2, e3), c in zip(MONOMIALS, ints):
        if c:
            key = (e0, e1)
            term = c * (p2[e2] * p3[e3])
            planes[key] = planes.get(key, 0) + term
    found = set()
    for t0 in range(-b, b + 1):
        t0p = (1, t0, t0 * t0, t0**3)
        for t1 in range(-b, b + 1):
            t1p = (1, t1, t1 * t1, t1**3)
            total = np.zeros_like(t2g)
            for (e0, e1), plane in planes.items():
                total += (t0p[e0] * t1p[e1]) * plane
            for i, j in np.argwhere(total == 0):
                t2, t3 = int(rng[i]), int(rng[j])
                g = gcd(gcd(abs(t0), abs(t1)), gcd(abs(t2), abs(t3)))
                if g == 0:
                    continue
                pt = (t0 // g, t1 // g, t2 // g, t3 // g)
                lead = next(x for x in pt if x)
                if lead < 0:
                    pt = tuple(-x for x in pt)
                found.add(pt)
    pts = tuple(sorted(found))
    return SearchResult(len(pts), pts)
