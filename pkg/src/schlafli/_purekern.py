"""Pure-Python kernels.

Reference implementations of the hot loops (height-bounded point search,
finite-field chart enumeration).  `schlafli._fastkern` mirrors these in
Cython; `schlafli.kernels` selects whichever is importable.  These run on
arbitrary-precision ints, so they double as the overflow-safe path.
"""

from __future__ import annotations

from math import gcd, isqrt

IS_COMPILED = False

# sentinel row marker: every value of the solve variable works
ALL_ROOTS = -1


def _floor_at_most(num2, s_target, c6):
    """Largest n with c6*n + num2 <= -sqrt(s_target), c6 > 0."""

    def ok(n):
        v = c6 * n + num2
        return v < 0 and v * v >= s_target

    n = (-num2 - isqrt(s_target)) // c6
    while ok(n + 1):
        n += 1
    while not ok(n):
        n -= 1
    return n


def _ceil_at_least(num2, s_target, c6):
    """Smallest n with c6*n + num2 >= sqrt(s_target), c6 > 0."""

    def ok(n):
        v = c6 * n + num2
        return v >= 0 and v * v >= s_target

    n = (-num2 + isqrt(s_target)) // c6
    while ok(n - 1):
        n -= 1
    while not ok(n):
        n += 1
    return n


def _bisect_root(ev, lo, hi, increasing):
    """Integer root of a function monotone on [lo, hi], or None."""
    if lo > hi:
        return None
    flo, fhi = ev(lo), ev(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if not increasing:
        flo, fhi = -flo, -fhi
    if flo > 0 or fhi < 0:
        return None
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        fm = ev(mid)
        if not increasing:
            fm = -fm
        if fm == 0:
            return mid
        if fm < 0:
            lo = mid
        else:
            hi = mid
    return None


def int_cubic_roots(c3, c2, c1, c0, bound):
    """All integer roots of c3 t^3 + c2 t^2 + c1 t + c0 in [-bound, bound].

    Returns (roots, all_flag); all_flag means the polynomial is identically
    zero.  Exact: floats are never consulted.
    """
    if c3 == 0:
        if c2 == 0:
            if c1 == 0:
                return ([], True) if c0 == 0 else ([], False)
            q, r = divmod(-c0, c1)
            return ([q] if r == 0 and -bound <= q <= bound else [], False)
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return [], False
        s = isqrt(disc)
        if s * s != disc:
            return [], False
        roots = []
        for num in (-c1 + s, -c1 - s):
            q, r = divmod(num, 2 * c2)
            if r == 0 and -bound <= q <= bound:
                roots.append(q)
        return sorted(set(roots)), False

    if c3 < 0:
        c3, c2, c1, c0 = -c3, -c2, -c1, -c0

    def ev(t):
        return ((c3 * t + c2) * t + c1) * t + c0

    disc4 = 4 * c2 * c2 - 12 * c3 * c1
    roots = set()
    if disc4 <= 0:
        r = _bisect_root(ev, -bound, bound, True)
        if r is not None:
            roots.add(r)
    else:
        a = _floor_at_most(2 * c2, disc4, 6 * c3)
        b = _ceil_at_least(2 * c2, disc4, 6 * c3)
        for lo, hi, inc in ((-bound, min(a, bound), True),
                            (max(a + 1, -bound), min(b - 1, bound), False),
                            (max(b, -bound), bound, True)):
            r = _bisect_root(ev, lo, hi, inc)
            if r is not None:
                roots.add(r)
        # tangency can leave a double root on an interval boundary
        for t in (a, a + 1, b - 1, b):
            if -bound <= t <= bound and ev(t) == 0:
                roots.add(t)
    return sorted(roots), False


def _normalize_point(x0, x1, x2, x3):
    g = gcd(gcd(abs(x0), abs(x1)), gcd(abs(x2), abs(x3)))
    if g == 0:
        return None
    if g > 1:
        x0, x1, x2, x3 = x0 // g, x1 // g, x2 // g, x3 // g
    for x in (x0, x1, x2, x3):
        if x:
            if x < 0:
                return (-x0, -x1, -x2, -x3)
            return (x0, x1, x2, x3)
    return None


def search_slices(c3, lin, quad, cub, bound):
    """Projective points of the cubic with primitive coordinates in the box.

    The form is c3*T0^3 + T0^2*L(t) + T0*Q(t) + C(t) in the slice variables
    t = (T1,T2,T3); for each slice the integer cubic in T0 is solved
    exactly.  Returns the sorted list of sign-normalized primitive points.
    """
    l1, l2, l3 = lin
    q11, q12, q13, q22, q23, q33 = quad
    k111, k112, k113, k122, k123, k133, k222, k223, k233, k333 = cub
    found = set()
    rng = range(-bound, bound + 1)
    for t1 in rng:
        t1sq = t1 * t1
        for t2 in rng:
            t2sq = t2 * t2
            c2_base = l1 * t1 + l2 * t2
            q_base = q11 * t1sq + q12 * t1 * t2 + q22 * t2sq
            k_base = (k111 * t1sq * t1 + k112 * t1sq * t2 + k122 * t1 * t2sq
                      + k222 * t2sq * t2)
            for t3 in rng:
                c2 = c2_base + l3 * t3
                c1 = q_base + (q13 * t1 + q23 * t2 + q33 * t3) * t3
                c0 = k_base + (k113 * t1sq + k123 * t1 * t2 + k223 * t2sq
                               + (k133 * t1 + k233 * t2 + k333 * t3) * t3) * t3
                roots, all_roots = int_cubic_roots(c3, c2, c1, c0, bound)
                if all_roots:
                    if t1 == 0 and t2 == 0 and t3 == 0:
                        continue
                    for t0 in rng:
                        pt = _normalize_point(t0, t1, t2, t3)
                        if pt is not None:
                            found.add(pt)
                    continue
                for t0 in roots:
                    pt = _normalize_point(t0, t1, t2, t3)
                    if pt is not None:
                        found.add(pt)
    if c3 == 0:
        found.add((1, 0, 0, 0))
    return sorted(found)


# ---------------------------------------------------------------------------
# finite-field helpers on Zech-table encoded elements
# ---------------------------------------------------------------------------


class _GFOps:
    """Arithmetic on table-encoded F_q elements (ints 0..q-1, base-p digits)."""

    def __init__(self, p, k, expt, logt):
        self.p = p
        self.k = k
        self.q = p**k
        self.exp = list(expt)
        self.log = list(logt)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((a % p) + (b % p)) % p * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += (-(a % p)) % p * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(self.q - 1) - self.log[a] if self.log[a] else 0]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def sqrt(self, a):
        """Square root in F_q (q odd), or None."""
        if a == 0:
            return 0
        e = self.log[a]
        if e % 2:
            if (self.q - 1) % 2:
                return self.exp[((e + self.q - 1) // 2) % (self.q - 1)]
            return None
        return self.exp[e // 2]


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(ops, a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = ops.inv(lb)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        coef = ops.mul(a[-1], inv_lb)
        q[len(a) - 1 - db] = coef
        for i in range(db + 1):
            a[len(a) - 1 - db + i] = ops.sub(a[len(a) - 1 - db + i], ops.mul(coef, b[i]))
        a.pop()
    return q, _poly_trim(a)


def _poly_gcd(ops, a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(ops, a, b)
        a, b = b, r
    if a:
        inv = ops.inv(a[-1])
        a = [ops.mul(x, inv) for x in a]
    return a


def _poly_mulmod(ops, a, b, m):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = ops.add(out[i + j], ops.mul(x, y))
    _, r = _poly_divmod(ops, out, m)
    return r


def _count_roots(ops, poly):
    """Number of distinct roots in F_q of poly (list of encoded coeffs)."""
    poly = _poly_trim(list(poly))
    if not poly:
        return ops.q
    if len(poly) == 1:
        return 0
    if len(poly) == 2:
        return 1
    # gcd(x^q - x, poly) via x^q mod poly by square & multiply
    e = ops.q
    result = [1]
    base = [0, 1]
    _, base = _poly_divmod(ops, base, poly)
    while e:
        if e & 1:
            result = _poly_mulmod(ops, result, base, poly)
        base = _poly_mulmod(ops, base, base, poly)
        e >>= 1
    # result = x^q mod poly; subtract x
    while len(result) < 2:
        result.append(0)
    result[1] = ops.sub(result[1], 1)
    g = _poly_gcd(ops, poly, _poly_trim(result))
    return len(g) - 1 if g else 0


def _eval_equation_coeffs(ops, eq, max_deg, pa, pb):
    """Coefficients in the solve variable of one chart equation.

    eq rows are (c, e_solve, e_a, e_b); pa/pb are power tables of the two
    enumerated coordinates.
    """
    coeffs = [0] * (max_deg + 1)
    for c, es, ea, eb in eq:
        v = ops.mul(c, ops.mul(pa[ea], pb[eb]))
        if v:
            coeffs[es] = ops.add(coeffs[es], v)
    return coeffs


def gf_count_points_chart(p, k, expt, logt, eq):
    """Number of chart solutions: pairs (a, b) weighted by roots of the
    equation in the solve variable."""
    ops = _GFOps(p, k, expt, logt)
    q = ops.q
    total = 0
    pa = [1, 0, 0, 0]
    for a in range(q):
        pa[1] = a
        pa[2] = ops.mul(a, a)
        pa[3] = ops.mul(pa[2], a)
        pb = [1, 0, 0, 0]
        for b in range(q):
            pb[1] = b
            pb[2] = ops.mul(b, b)
            pb[3] = ops.mul(pb[2], b)
            coeffs = _eval_equation_coeffs(ops, eq, 3, pa, pb)
            total += _count_roots(ops, coeffs)
    return total


def gf_pair_solve(p, k, expt, logt, eqs):
    """Common solutions of several chart equations, two coordinates
    enumerated and one solved.

    Returns (a, b, root) triples; root == ALL_ROOTS flags a pair where every
    equation vanishes identically in the solve variable.
    """
    ops = _GFOps(p, k, expt, logt)
    q = ops.q
    out = []
    pa = [1, 0, 0, 0]
    for a in range(q):
        pa[1] = a
        pa[2] = ops.mul(a, a)
        pa[3] = ops.mul(pa[2], a)
        pb = [1, 0, 0, 0]
        for b in range(q):
            pb[1] = b
            pb[2] = ops.mul(b, b)
            pb[3] = ops.mul(pb[2], b)
            all_coeffs = [
                _poly_trim(_eval_equation_coeffs(ops, eq, 3, pa, pb)) for eq in eqs
            ]
            pivot = None
            for c in all_coeffs:
                if c:
                    if len(c) == 1:
                        pivot = c
                        break
                    if pivot is None or len(c) < len(pivot):
                        pivot = c
            if pivot is None:
                out.append((a, b, ALL_ROOTS))
                continue
            if len(pivot) == 1:
                continue
            g = pivot
            for c in all_coeffs:
                if c and c is not pivot:
                    g = _poly_gcd(ops, g, c)
                    if len(g) == 1:
                        break
            if len(g) == 1:
                continue
            for x in _roots_of(ops, g):
                out.append((a, b, x))
    return out


def _roots_of(ops, poly):
    """Distinct roots of a low-degree polynomial over F_q."""
    poly = _poly_trim(list(poly))
    if not poly:
        raise ValueError("zero polynomial")
    d = len(poly) - 1
    if d == 0:
        return []
    if d == 1:
        return [ops.neg(ops.div(poly[0], poly[1]))]
    if d == 2 and ops.p != 2:
        a, b, c = poly[2], poly[1], poly[0]
        disc = ops.sub(ops.mul(b, b), ops.mul(4 % ops.p, ops.mul(a, c)))
        s = ops.sqrt(disc)
        if s is None:
            return []
        inv2a = ops.inv(ops.add(a, a))
        r1 = ops.mul(ops.add(ops.neg(b), s), inv2a)
        r2 = ops.mul(ops.sub(ops.neg(b), s), inv2a)
        return sorted({r1, r2})
    # small fields: scan
    if ops.q <= 4096:
        roots = []
        for x in range(ops.q):
            acc = 0
            for coef in reversed(poly):
                acc = ops.add(ops.mul(acc, x), coef)
            if acc == 0:
                roots.append(x)
        return roots
    raise NotImplementedError("root scan over large field")
