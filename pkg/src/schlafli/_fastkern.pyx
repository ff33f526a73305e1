# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the exhaustive loops.

Mirrors schlafli._purekern exactly (same call signatures and results);
restricted to word-sized arithmetic, so callers guard against overflow and
fall back to the pure path.
"""

from libc.stdlib cimport llabs

cdef extern from *:
    ctypedef long long int128 "__int128"

IS_COMPILED = True

ALL_ROOTS = -1

DEF MAXDEG = 8


# ---------------------------------------------------------------------------
# integer point search
# ---------------------------------------------------------------------------

cdef inline int128 _ev(long long c3, long long c2, long long c1, long long c0,
                       long long t) nogil:
    return ((<int128>c3 * t + c2) * t + c1) * t + c0


cdef long long _bisect(long long c3, long long c2, long long c1, long long c0,
                       long long lo, long long hi, bint increasing,
                       bint *found) nogil:
    cdef int128 flo, fhi, fm
    cdef long long mid
    found[0] = False
    if lo > hi:
        return 0
    flo = _ev(c3, c2, c1, c0, lo)
    fhi = _ev(c3, c2, c1, c0, hi)
    if flo == 0:
        found[0] = True
        return lo
    if fhi == 0:
        found[0] = True
        return hi
    if not increasing:
        flo = -flo
        fhi = -fhi
    if flo > 0 or fhi < 0:
        return 0
    while lo + 1 < hi:
        mid = lo + (hi - lo) // 2
        fm = _ev(c3, c2, c1, c0, mid)
        if not increasing:
            fm = -fm
        if fm == 0:
            found[0] = True
            return mid
        if fm < 0:
            lo = mid
        else:
            hi = mid
    return 0


cdef long long _isqrt(long long n) nogil:
    cdef long long x, y
    if n < 2:
        return n
    x = n
    y = (x + 1) // 2
    while y < x:
        x = y
        y = (x + n // x) // 2
    return x


cdef int _cubic_roots(long long c3, long long c2, long long c1, long long c0,
                      long long bound, long long *roots) nogil:
    """Integer roots in [-bound, bound]; returns count, or -1 if identically 0.

    Assumes c3 != 0 (the caller handles degenerate slices in Python).
    """
    cdef long long disc4, a, b, s, lo, hi, r, v, n
    cdef int cnt = 0, i, j
    cdef bint found, ok
    if c3 < 0:
        c3 = -c3; c2 = -c2; c1 = -c1; c0 = -c0
    disc4 = 4 * c2 * c2 - 12 * c3 * c1
    if disc4 <= 0:
        r = _bisect(c3, c2, c1, c0, -bound, bound, True, &found)
        if found:
            roots[cnt] = r; cnt += 1
    else:
        s = _isqrt(disc4)
        # a = largest n with 6*c3*n + 2*c2 <= -sqrt(disc4)
        n = (-2 * c2 - s) // (6 * c3)
        while True:
            v = 6 * c3 * (n + 1) + 2 * c2
            if v < 0 and <int128>v * v >= disc4:
                n += 1
            else:
                break
        while True:
            v = 6 * c3 * n + 2 * c2
            if v < 0 and <int128>v * v >= disc4:
                break
            n -= 1
        a = n
        # b = smallest n with 6*c3*n + 2*c2 >= sqrt(disc4)
        n = (-2 * c2 + s) // (6 * c3)
        while True:
            v = 6 * c3 * (n - 1) + 2 * c2
            if v >= 0 and <int128>v * v >= disc4:
                n -= 1
            else:
                break
        while True:
            v = 6 * c3 * n + 2 * c2
            if not (v >= 0 and <int128>v * v >= disc4):
                n += 1
            else:
                break
        b = n
        lo = -bound; hi = a if a < bound else bound
        r = _bisect(c3, c2, c1, c0, lo, hi, True, &found)
        if found:
            roots[cnt] = r; cnt += 1
        lo = a + 1 if a + 1 > -bound else -bound
        hi = b - 1 if b - 1 < bound else bound
        r = _bisect(c3, c2, c1, c0, lo, hi, False, &found)
        if found:
            roots[cnt] = r; cnt += 1
        lo = b if b > -bound else -bound
        r = _bisect(c3, c2, c1, c0, lo, bound, True, &found)
        if found:
            roots[cnt] = r; cnt += 1
        for i in range(4):
            v = a + i - 1 if i < 2 else b + i - 3
            if -bound <= v <= bound and _ev(c3, c2, c1, c0, v) == 0:
                ok = True
                for j in range(cnt):
                    if roots[j] == v:
                        ok = False
                        break
                if ok:
                    roots[cnt] = v; cnt += 1
    return cnt


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    a = llabs(a); b = llabs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a


def search_slices(long long c3, lin, quad, cub, long long bound):
    """Compiled counterpart of _purekern.search_slices (c3 != 0 only)."""
    if c3 == 0:
        raise ValueError("compiled kernel requires a nonzero T0^3 coefficient")
    cdef long long l1 = lin[0], l2 = lin[1], l3 = lin[2]
    cdef long long q11 = quad[0], q12 = quad[1], q13 = quad[2]
    cdef long long q22 = quad[3], q23 = quad[4], q33 = quad[5]
    cdef long long k111 = cub[0], k112 = cub[1], k113 = cub[2], k122 = cub[3]
    cdef long long k123 = cub[4], k133 = cub[5], k222 = cub[6], k223 = cub[7]
    cdef long long k233 = cub[8], k333 = cub[9]
    cdef long long t1, t2, t3, t1sq, t2sq, c2, c1, c0, g, t0
    cdef long long c2b, q_base, k_base
    cdef long long roots[3]
    cdef int nroots, i
    cdef long long x0, x1, x2, x3, lead
    found = set()
    for t1 in range(-bound, bound + 1):
        t1sq = t1 * t1
        for t2 in range(-bound, bound + 1):
            t2sq = t2 * t2
            c2b = l1 * t1 + l2 * t2
            q_base = q11 * t1sq + q12 * t1 * t2 + q22 * t2sq
            k_base = (k111 * t1sq * t1 + k112 * t1sq * t2 + k122 * t1 * t2sq
                      + k222 * t2sq * t2)
            for t3 in range(-bound, bound + 1):
                c2 = c2b + l3 * t3
                c1 = q_base + (q13 * t1 + q23 * t2 + q33 * t3) * t3
                c0 = k_base + (k113 * t1sq + k123 * t1 * t2 + k223 * t2sq
                               + (k133 * t1 + k233 * t2 + k333 * t3) * t3) * t3
                nroots = _cubic_roots(c3, c2, c1, c0, bound, roots)
                for i in range(nroots):
                    t0 = roots[i]
                    g = _gcd(_gcd(t0, t1), _gcd(t2, t3))
                    if g == 0:
                        continue
                    x0 = t0 // g; x1 = t1 // g; x2 = t2 // g; x3 = t3 // g
                    lead = x0 if x0 else (x1 if x1 else (x2 if x2 else x3))
                    if lead < 0:
                        x0 = -x0; x1 = -x1; x2 = -x2; x3 = -x3
                    found.add((x0, x1, x2, x3))
    return sorted(found)


# ---------------------------------------------------------------------------
# finite-field chart enumeration (table-encoded F_q elements)
# ---------------------------------------------------------------------------

cdef struct GF:
    long long p
    long long k
    long long q
    const long long *exp
    const long long *log


cdef inline long long gf_add(GF *f, long long a, long long b) nogil:
    cdef long long p = f.p, out = 0, mult = 1
    cdef int i
    if f.k == 1:
        return (a + b) % p
    for i in range(f.k):
        out += ((a % p) + (b % p)) % p * mult
        a //= p
        b //= p
        mult *= p
    return out


cdef inline long long gf_neg(GF *f, long long a) nogil:
    cdef long long p = f.p, out = 0, mult = 1, d
    cdef int i
    if f.k == 1:
        return (p - a) % p
    for i in range(f.k):
        d = a % p
        out += ((p - d) % p) * mult
        a //= p
        mult *= p
    return out


cdef inline long long gf_sub(GF *f, long long a, long long b) nogil:
    return gf_add(f, a, gf_neg(f, b))


cdef inline long long gf_mul(GF *f, long long a, long long b) nogil:
    if a == 0 or b == 0:
        return 0
    return f.exp[f.log[a] + f.log[b]]


cdef inline long long gf_inv(GF *f, long long a) nogil:
    cdef long long e = f.log[a]
    if e == 0:
        return f.exp[0]
    return f.exp[f.q - 1 - e]


cdef inline long long gf_sqrt(GF *f, long long a, bint *ok) nogil:
    cdef long long e
    ok[0] = True
    if a == 0:
        return 0
    e = f.log[a]
    if e % 2:
        if (f.q - 1) % 2:
            return f.exp[((e + f.q - 1) // 2) % (f.q - 1)]
        ok[0] = False
        return 0
    return f.exp[e // 2]


cdef int _ptrim(long long *c, int n) nogil:
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return n


cdef int _pdivmod(GF *f, long long *a, int na, const long long *b, int nb,
                  long long *rem) nogil:
    """rem = a mod b (b nonzero); returns length of rem."""
    cdef long long inv_lb, coef
    cdef int i, shift
    for i in range(na):
        rem[i] = a[i]
    na = _ptrim(rem, na)
    inv_lb = gf_inv(f, b[nb - 1])
    while na >= nb:
        coef = gf_mul(f, rem[na - 1], inv_lb)
        shift = na - nb
        if coef != 0:
            for i in range(nb):
                rem[shift + i] = gf_sub(f, rem[shift + i], gf_mul(f, coef, b[i]))
        na = _ptrim(rem, na - 1)
    return na


cdef int _pgcd(GF *f, long long *a, int na, long long *b, int nb,
               long long *out) nogil:
    cdef long long ta[MAXDEG]
    cdef long long tb[MAXDEG]
    cdef long long tr[MAXDEG]
    cdef long long inv
    cdef int i, nr
    for i in range(na):
        ta[i] = a[i]
    for i in range(nb):
        tb[i] = b[i]
    na = _ptrim(ta, na)
    nb = _ptrim(tb, nb)
    while nb > 0:
        nr = _pdivmod(f, ta, na, tb, nb, tr)
        for i in range(nb):
            ta[i] = tb[i]
        na = nb
        for i in range(nr):
            tb[i] = tr[i]
        nb = nr
    if na > 0:
        inv = gf_inv(f, ta[na - 1])
        for i in range(na):
            out[i] = gf_mul(f, ta[i], inv)
    return na


cdef int _pmulmod(GF *f, long long *a, int na, long long *b, int nb,
                  const long long *m, int nm, long long *out) nogil:
    cdef long long tmp[2 * MAXDEG]
    cdef int i, j, n
    if na == 0 or nb == 0:
        return 0
    n = na + nb - 1
    for i in range(n):
        tmp[i] = 0
    for i in range(na):
        if a[i] == 0:
            continue
        for j in range(nb):
            if b[j]:
                tmp[i + j] = gf_add(f, tmp[i + j], gf_mul(f, a[i], b[j]))
    return _pdivmod(f, tmp, n, m, nm, out)


cdef int _count_roots(GF *f, long long *poly, int n) nogil:
    """Distinct roots in F_q of poly; n = coefficient count."""
    cdef long long res[MAXDEG]
    cdef long long base[MAXDEG]
    cdef long long tmp[MAXDEG]
    cdef long long g[MAXDEG]
    cdef long long e
    cdef int nres, nbase, i, ng
    n = _ptrim(poly, n)
    if n == 0:
        return <int>f.q
    if n == 1:
        return 0
    if n == 2:
        return 1
    # x^q mod poly by square & multiply
    res[0] = f.exp[0]
    nres = 1
    base[0] = 0
    base[1] = f.exp[0]
    nbase = _pdivmod(f, base, 2, poly, n, tmp)
    for i in range(nbase):
        base[i] = tmp[i]
    e = f.q
    while e:
        if e & 1:
            nres = _pmulmod(f, res, nres, base, nbase, poly, n, tmp)
            for i in range(nres):
                res[i] = tmp[i]
        nbase = _pmulmod(f, base, nbase, base, nbase, poly, n, tmp)
        for i in range(nbase):
            base[i] = tmp[i]
        e >>= 1
    while nres < 2:
        res[nres] = 0
        nres += 1
    res[1] = gf_sub(f, res[1], f.exp[0])
    nres = _ptrim(res, nres)
    ng = _pgcd(f, poly, n, res, nres, g)
    return ng - 1 if ng > 0 else 0


cdef int _roots_low(GF *f, long long *poly, int n, long long *out) nogil:
    """Roots of a polynomial of degree <= 2 (p odd for the quadratic case);
    returns count or -9 when unsupported (caller falls back)."""
    cdef long long a, b, c, disc, s, inv2a, r1, r2
    cdef bint ok
    n = _ptrim(poly, n)
    if n <= 1:
        return 0
    if n == 2:
        out[0] = gf_neg(f, gf_mul(f, poly[0], gf_inv(f, poly[1])))
        return 1
    if n == 3 and f.p != 2:
        a = poly[2]; b = poly[1]; c = poly[0]
        disc = gf_sub(f, gf_mul(f, b, b), gf_mul(f, gf_mul(f, 4 % f.p, a), c))
        s = gf_sqrt(f, disc, &ok)
        if not ok:
            return 0
        inv2a = gf_inv(f, gf_add(f, a, a))
        r1 = gf_mul(f, gf_add(f, gf_neg(f, b), s), inv2a)
        r2 = gf_mul(f, gf_sub(f, gf_neg(f, b), s), inv2a)
        out[0] = r1
        if r2 != r1:
            out[1] = r2
            return 2
        return 1
    return -9


def gf_count_points_chart(long long p, long long k, long long[::1] expt,
                          long long[::1] logt, eq):
    """Compiled counterpart of _purekern.gf_count_points_chart."""
    cdef GF f
    f.p = p; f.k = k; f.q = p ** k
    f.exp = &expt[0]; f.log = &logt[0]
    cdef int neq = len(eq), i
    cdef long long cbuf[64]
    cdef long long ebuf[64]
    cdef long long abuf[64]
    cdef long long bbuf[64]
    if neq > 64:
        raise ValueError("too many monomials")
    for i in range(neq):
        cbuf[i] = eq[i][0]; ebuf[i] = eq[i][1]; abuf[i] = eq[i][2]; bbuf[i] = eq[i][3]
    cdef long long total = 0, a, b, v
    cdef long long pa[4]
    cdef long long pb[4]
    cdef long long coeffs[4]
    cdef int j
    with nogil:
        pa[0] = f.exp[0]
        pb[0] = f.exp[0]
        for a in range(f.q):
            pa[1] = a
            pa[2] = gf_mul(&f, a, a)
            pa[3] = gf_mul(&f, pa[2], a)
            for b in range(f.q):
                pb[1] = b
                pb[2] = gf_mul(&f, b, b)
                pb[3] = gf_mul(&f, pb[2], b)
                for j in range(4):
                    coeffs[j] = 0
                for j in range(neq):
                    v = gf_mul(&f, cbuf[j], gf_mul(&f, pa[abuf[j]], pb[bbuf[j]]))
                    if v:
                        coeffs[ebuf[j]] = gf_add(&f, coeffs[ebuf[j]], v)
                total += _count_roots(&f, coeffs, 4)
    return total


def gf_pair_solve(long long p, long long k, long long[::1] expt,
                  long long[::1] logt, eqs):
    """Compiled counterpart of _purekern.gf_pair_solve."""
    cdef GF f
    f.p = p; f.k = k; f.q = p ** k
    f.exp = &expt[0]; f.log = &logt[0]
    cdef int neqs = len(eqs)
    if neqs > 8:
        raise ValueError("too many equations")
    cdef long long cbuf[8][64]
    cdef long long ebuf[8][64]
    cdef long long abuf[8][64]
    cdef long long bbuf[8][64]
    cdef int nmon[8]
    cdef int i, j
    for i in range(neqs):
        rows = eqs[i]
        if len(rows) > 64:
            raise ValueError("too many monomials")
        nmon[i] = len(rows)
        for j in range(len(rows)):
            cbuf[i][j] = rows[j][0]; ebuf[i][j] = rows[j][1]
            abuf[i][j] = rows[j][2]; bbuf[i][j] = rows[j][3]
    cdef long long a, b, v, x, acc
    cdef long long pa[4]
    cdef long long pb[4]
    cdef long long coeffs[8][4]
    cdef int ncoef[8]
    cdef long long g[MAXDEG]
    cdef long long tmp[MAXDEG]
    cdef long long rbuf[4]
    cdef int e, ng, piv, nr, r, t, good
    out = []
    pa[0] = f.exp[0]
    pb[0] = f.exp[0]
    for a in range(f.q):
        pa[1] = a
        pa[2] = gf_mul(&f, a, a)
        pa[3] = gf_mul(&f, pa[2], a)
        for b in range(f.q):
            pb[1] = b
            pb[2] = gf_mul(&f, b, b)
            pb[3] = gf_mul(&f, pb[2], b)
            piv = -1
            for e in range(neqs):
                for j in range(4):
                    coeffs[e][j] = 0
                for j in range(nmon[e]):
                    v = gf_mul(&f, cbuf[e][j], gf_mul(&f, pa[abuf[e][j]], pb[bbuf[e][j]]))
                    if v:
                        coeffs[e][ebuf[e][j]] = gf_add(&f, coeffs[e][ebuf[e][j]], v)
                ncoef[e] = _ptrim(coeffs[e], 4)
                if ncoef[e] > 0 and (piv < 0 or ncoef[e] < ncoef[piv]):
                    piv = e
            if piv < 0:
                out.append((a, b, ALL_ROOTS))
                continue
            if ncoef[piv] == 1:
                continue
            ng = ncoef[piv]
            for j in range(ng):
                g[j] = coeffs[piv][j]
            for e in range(neqs):
                if e == piv or ncoef[e] == 0:
                    continue
                ng = _pgcd(&f, g, ng, coeffs[e], ncoef[e], tmp)
                for j in range(ng):
                    g[j] = tmp[j]
                if ng <= 1:
                    break
            if ng <= 1:
                continue
            nr = _roots_low(&f, g, ng, rbuf)
            if nr == -9:
                # degree >= 3 gcd or char 2 quadratic: scan (fields here are small)
                nr = 0
                for x in range(f.q):
                    acc = 0
                    for t in range(ng - 1, -1, -1):
                        acc = gf_add(&f, gf_mul(&f, acc, x), g[t])
                    if acc == 0:
                        rbuf[nr] = x
                        nr += 1
                        if nr == 4:
                            break
            for r in range(nr):
                out.append((a, b, rbuf[r]))
    return out
