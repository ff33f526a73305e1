"""Reduction of quaternary cubic forms modulo p and exact finite-field
geometry: point counts, singular censuses over F_{p^k}, factorization into
planes, and Frobenius-trace consistency.

F_{p^k} is realized as F_p[x]/(m) for the deterministically chosen minimal
irreducible m; elements are encoded as integers (base-p digit vectors) and
multiplied through discrete-log tables, which both the compiled kernel and
the pure fallback consume.  Point counting enumerates two chart
coordinates and solves the third exactly; singular censuses additionally
have a resultant-elimination path so that degree-2 and degree-3 points
stay reachable when q^2 enumeration would be hopeless.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache
from importlib import resources
from math import gcd, lcm, prod

from . import kernels
from ._purekern import ALL_ROOTS, _GFOps

# degree-3 monomials in T0..T3, in the documented order
MONOMIALS: tuple[tuple[int, int, int, int], ...] = (
    (3, 0, 0, 0), (2, 1, 0, 0), (2, 0, 1, 0), (2, 0, 0, 1),
    (1, 2, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 2, 0),
    (1, 0, 1, 1), (1, 0, 0, 2), (0, 3, 0, 0), (0, 2, 1, 0),
    (0, 2, 0, 1), (0, 1, 2, 0), (0, 1, 1, 1), (0, 1, 0, 2),
    (0, 0, 3, 0), (0, 0, 2, 1), (0, 0, 1, 2), (0, 0, 0, 3),
)


class ReductionError(ValueError):
    """p divides a coefficient denominator (or kills the whole form)."""


class SingularReductionError(ValueError):
    """An operation requiring a smooth reduction met a singular one."""


class CensusOverflowError(RuntimeError):
    """The singular locus is too large to list (positive-dimensional over a
    big field)."""


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------


def _int_digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _digits_int(digits, p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class GF:
    """F_{p^k}: elements are ints in [0, p^k), base-p digit encoding of the
    coefficient vector in the polynomial basis."""

    def __init__(self, p: int, k: int = 1):
        if k < 1 or p < 2:
            raise ValueError("need a prime p and degree k >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = self._find_modulus() if k > 1 else None
        self._build_tables()
        self.ops = _GFOps(p, k, self.exp, self.log)

    # construction ----------------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        """Polynomial-basis multiplication, used only to bootstrap tables."""
        p, k = self.p, self.k
        if self.k == 1:
            return (a * b) % p
        da = _int_digits(a, p, k)
        db = _int_digits(b, p, k)
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] = (prod_[i + j] + x * y) % p
        mod = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod_[i]
            if c:
                prod_[i] = 0
                for j in range(k):
                    prod_[i - k + j] = (prod_[i - k + j] - c * mod[j]) % p
        return _digits_int(prod_[:k], p)

    def _raw_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    def _find_modulus(self) -> list[int]:
        """Lower coefficients of the minimal monic irreducible of degree k,
        by ascending encoded integer."""
        p, k = self.p, self.k
        for enc in range(p**k):
            low = _int_digits(enc, p, k)
            if self._is_irreducible(low):
                return low
        raise AssertionError("no irreducible polynomial found")

    def _is_irreducible(self, low: list[int]) -> bool:
        p, k = self.p, self.k

        def polymulmod(a, b):
            out = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] = (out[i + j] + x * y) % p
            for i in range(2 * k - 2, k - 1, -1):
                c = out[i]
                if c:
                    out[i] = 0
                    for j in range(k):
                        out[i - k + j] = (out[i - k + j] - c * low[j]) % p
            return out[:k]

        def frob_power(vec, times):
            for _ in range(times):
                e = p
                result = [1] + [0] * (k - 1)
                base = vec
                while e:
                    if e & 1:
                        result = polymulmod(result, base)
                    base = polymulmod(base, base)
                    e >>= 1
                vec = result
            return vec

        x = [0, 1] + [0] * (k - 2) if k > 1 else [0]
        if frob_power(x, k) != x:
            return False
        for ell in _factorize(k):
            y = frob_power(x, k // ell)
            diff = [(a - b) % p for a, b in zip(y, x)]
            if not self._poly_gcd_is_one(diff, low):
                return False
        return True

    def _poly_gcd_is_one(self, diff, low) -> bool:
        p, k = self.p, self.k
        a = list(diff)
        b = low + [1]
        a, b = b, a

        def trim(c):
            while c and c[-1] == 0:
                c.pop()
            return c

        a, b = trim(a), trim(b)
        while b:
            inv = pow(b[-1], p - 2, p)
            while len(a) >= len(b):
                if a[-1]:
                    coef = (a[-1] * inv) % p
                    off = len(a) - len(b)
                    for i in range(len(b)):
                        a[off + i] = (a[off + i] - coef * b[i]) % p
                a.pop()
                trim(a)
            a, b = b, trim(a)
        return len(a) == 1

    def _build_tables(self) -> None:
        q = self.q
        fac = _factorize(q - 1)
        gen = None
        for cand in range(1, q):
            # cand = 1 only survives the filter when the unit group is trivial
            if all(self._raw_pow(cand, (q - 1) // ell) != 1 for ell in fac):
                gen = cand
                break
        assert gen is not None
        self.generator = gen
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            exp[i + q - 1] = acc
            log[acc] = i
            acc = self._raw_mul(acc, gen)
        assert acc == 1, "generator order is not q-1"
        self.exp = exp
        self.log = log

    # arithmetic (delegates to the table ops) ---------------------------------

    def add(self, a, b):
        return self.ops.add(a, b)

    def sub(self, a, b):
        return self.ops.sub(a, b)

    def neg(self, a):
        return self.ops.neg(a)

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        return self.ops.inv(a)

    def div(self, a, b):
        return self.ops.div(a, b)

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a):
        return self.pow(a, self.p)

    def scalar(self, n: int) -> int:
        return n % self.p

    def element_degree(self, a) -> int:
        """Degree over F_p of the subfield generated by a."""
        d = 1
        x = self.frobenius(a)
        while x != a:
            x = self.frobenius(x)
            d += 1
        assert self.k % d == 0
        return d

    def embed_from(self, sub: "GF", a: int) -> int:
        """Image of a in self under the embedding F_{p^d} -> F_{p^k} mapping
        generator^i -> generator^(i*(q-1)/(q_d-1))."""
        if a == 0:
            return 0
        if sub.q == self.q:
            return a
        assert (self.q - 1) % (sub.q - 1) == 0
        step = (self.q - 1) // (sub.q - 1)
        return self.exp[(sub.log[a] * step) % (self.q - 1)]

    # polynomials over the field ----------------------------------------------

    def poly_trim(self, c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return c

    def poly_eval(self, c, x):
        acc = 0
        for coef in reversed(c):
            acc = self.add(self.mul(acc, x), coef)
        return acc

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = self.add(out[i + j], self.mul(x, y))
        return out

    def poly_divmod(self, a, b):
        a = list(a)
        b = self.poly_trim(b)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lb = self.inv(b[-1])
        q = [0] * max(0, len(a) - len(b) + 1)
        while len(self.poly_trim(a)) >= len(b):
            a = self.poly_trim(a)
            coef = self.mul(a[-1], inv_lb)
            off = len(a) - len(b)
            q[off] = coef
            for i in range(len(b)):
                a[off + i] = self.sub(a[off + i], self.mul(coef, b[i]))
        return q, self.poly_trim(a)

    def poly_gcd(self, a, b):
        a, b = self.poly_trim(a), self.poly_trim(b)
        while b:
            _, r = self.poly_divmod(a, b)
            a, b = b, r
        if a:
            inv = self.inv(a[-1])
            a = [self.mul(x, inv) for x in a]
        return a

    def poly_powmod(self, base, e, mod):
        result = [1]
        _, base = self.poly_divmod(base, mod)
        while e:
            if e & 1:
                result = self.poly_divmod(self.poly_mul(result, base), mod)[1]
            base = self.poly_divmod(self.poly_mul(base, base), mod)[1]
            e >>= 1
        return result

    def poly_roots(self, c) -> list[int]:
        """Distinct roots in the field, exactly."""
        c = self.poly_trim(c)
        if not c:
            raise ValueError("zero polynomial has every root")
        if len(c) == 1:
            return []
        # restrict to the product of linear factors: gcd(c, x^q - x)
        xq = self.poly_powmod([0, 1], self.q, c)
        diff = list(xq) + [0] * max(0, 2 - len(xq))
        diff[1] = self.sub(diff[1], 1)
        g = self.poly_gcd(c, self.poly_trim(diff))
        return sorted(self._split_linear(g))

    def _split_linear(self, g) -> list[int]:
        """Roots of a squarefree product of linear factors."""
        g = self.poly_trim(g)
        if len(g) <= 1:
            return []
        if len(g) == 2:
            return [self.neg(self.div(g[0], g[1]))]
        if g[0] == 0:
            rest = self._split_linear(g[1:])
            return [0] + rest
        if self.q <= 4096:
            return [x for x in range(self.q) if self.poly_eval(g, x) == 0]
        # Cantor-Zassenhaus splitting for odd q
        assert self.q % 2 == 1
        import random

        rng = random.Random(0xC0FFEE ^ len(g) ^ g[0])
        while True:
            shift = rng.randrange(self.q)
            probe = self.poly_powmod([shift, 1], (self.q - 1) // 2, g)
            probe = list(probe) + [0] * max(0, 1 - len(probe))
            probe[0] = self.sub(probe[0], 1)
            h = self.poly_gcd(g, self.poly_trim(probe))
            if 0 < len(h) - 1 < len(g) - 1:
                other = self.poly_divmod(g, h)[0]
                return self._split_linear(h) + self._split_linear(other)

    def poly_count_roots(self, c) -> int:
        c = self.poly_trim(c)
        if not c:
            return self.q
        if len(c) == 1:
            return 0
        xq = self.poly_powmod([0, 1], self.q, c)
        diff = list(xq) + [0] * max(0, 2 - len(xq))
        diff[1] = self.sub(diff[1], 1)
        g = self.poly_gcd(c, self.poly_trim(diff))
        return max(0, len(g) - 1)


@lru_cache(maxsize=64)
def gf(p: int, k: int = 1) -> GF:
    return GF(p, k)


# ---------------------------------------------------------------------------
# cubic forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicForm:
    """Quaternary cubic with exact rational coefficients in the fixed
    monomial order (T0^3, T0^2 T1, ..., T3^3)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 20:
            raise ValueError("expected 20 coefficients")
        if not any(self.coeffs):
            raise ValueError("form is identically zero")

    @staticmethod
    def from_rationals(values) -> "CubicForm":
        return CubicForm(tuple(Fraction(v) for v in values))

    @staticmethod
    def from_monomial_dict(d) -> "CubicForm":
        coeffs = [Fraction(0)] * 20
        for exps, c in d.items():
            coeffs[MONOMIALS.index(tuple(exps))] = Fraction(c)
        return CubicForm(tuple(coeffs))

    @staticmethod
    def from_json(text: str) -> "CubicForm":
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["coefficients"]
        return CubicForm.from_rationals([Fraction(str(v)) for v in data])

    def to_json(self) -> str:
        return json.dumps({"coefficients": [str(c) for c in self.coeffs]})

    def evaluate(self, point) -> Fraction:
        t0, t1, t2, t3 = (Fraction(x) for x in point)
        total = Fraction(0)
        for (e0, e1, e2, e3), c in zip(MONOMIALS, self.coeffs):
            if c:
                total += c * t0**e0 * t1**e1 * t2**e2 * t3**e3
        return total

    def monomial_dict(self) -> dict[tuple[int, int, int, int], Fraction]:
        return {m: c for m, c in zip(MONOMIALS, self.coeffs) if c}

    def partial(self, var: int) -> dict[tuple[int, int, int, int], Fraction]:
        """Exponent dict of the partial derivative (a quadratic form)."""
        out: dict[tuple[int, int, int, int], Fraction] = {}
        for m, c in self.monomial_dict().items():
            if m[var]:
                lowered = list(m)
                lowered[var] -= 1
                out[tuple(lowered)] = out.get(tuple(lowered), Fraction(0)) + c * m[var]
        return {m: c for m, c in out.items() if c}

    def integer_coefficients(self) -> tuple[int, ...]:
        """Primitive integer coefficient vector (common denominator cleared,
        content divided out)."""
        denom = lcm(*[c.denominator for c in self.coeffs])
        ints = [int(c * denom) for c in self.coeffs]
        content = 0
        for v in ints:
            content = gcd(content, v)
        return tuple(v // content for v in ints)

    def reduce_mod(self, p: int) -> tuple[int, ...]:
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise ReductionError(f"denominator of {c} not invertible mod {p}")
        out = tuple(
            (c.numerator * pow(c.denominator, -1, p)) % p for c in self.coeffs
        )
        if not any(out):
            raise ReductionError(f"form vanishes identically mod {p}")
        return out


def bundled_surface(name: str) -> CubicForm:
    """Load one of the packaged example surfaces."""
    text = resources.files("schlafli.data").joinpath(f"{name}.json").read_text()
    return CubicForm.from_json(text)


# ---------------------------------------------------------------------------
# chart setup: fix the first nonzero coordinate to 1
# ---------------------------------------------------------------------------

# (pivot, zero coords, free coords); free coords listed as (a, b, solve)
_CHARTS = (
    (0, (), (1, 2, 3)),
    (1, (0,), (2, 3)),
    (2, (0, 1), (3,)),
    (3, (0, 1, 2), ()),
)


def _chart_equation(field: GF, coeffs_mod_p, chart, monomials=MONOMIALS):
    """Encode a form on a chart as rows (c, e_solve, e_a, e_b)."""
    pivot, zeros, free = chart
    rows = []
    for m, c in zip(monomials, coeffs_mod_p):
        if not c:
            continue
        if any(m[z] for z in zeros):
            continue
        if len(free) == 3:
            ea, eb, es = m[free[0]], m[free[1]], m[free[2]]
        elif len(free) == 2:
            ea, eb, es = m[free[0]], 0, m[free[1]]
        elif len(free) == 1:
            ea, eb, es = 0, 0, m[free[0]]
        else:
            ea = eb = es = 0
        rows.append((field.scalar(c), es, ea, eb))
    # merge duplicate exponent patterns
    merged: dict[tuple[int, int, int], int] = {}
    for c, es, ea, eb in rows:
        key = (es, ea, eb)
        merged[key] = field.add(merged.get(key, 0), c)
    return [(c, es, ea, eb) for (es, ea, eb), c in sorted(merged.items()) if c]


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------


def count_points(f: CubicForm, p: int, k: int = 1, force_pure: bool = False) -> int:
    """Number of projective F_{p^k}-points of the reduction of f."""
    coeffs = f.reduce_mod(p)
    field = gf(p, k)
    total = 0
    # main chart through the compiled kernel; thin charts in Python
    eq0 = _chart_equation(field, coeffs, _CHARTS[0])
    total += kernels.gf_count_points_chart(p, k, field.exp, field.log, eq0,
                                           force_pure=force_pure)
    for chart in _CHARTS[1:3]:
        eq = _chart_equation(field, coeffs, chart)
        free = chart[2]
        if len(free) == 2:
            for aval in range(field.q):
                total += field.poly_count_roots(_specialize(field, eq, aval, 0))
        else:
            total += field.poly_count_roots(_specialize(field, eq, 0, 0))
    # the point (0:0:0:1)
    last = next((c for m, c in zip(MONOMIALS, coeffs) if m == (0, 0, 0, 3)), 0)
    if field.scalar(last) == 0:
        total += 1
    return total


def _specialize(field: GF, eq, aval: int, bval: int):
    pa = [1, aval, field.mul(aval, aval), 0]
    pa[3] = field.mul(pa[2], aval)
    pb = [1, bval, field.mul(bval, bval), 0]
    pb[3] = field.mul(pb[2], bval)
    coeffs = [0, 0, 0, 0]
    for c, es, ea, eb in eq:
        v = field.mul(c, field.mul(pa[ea], pb[eb]))
        if v:
            coeffs[es] = field.add(coeffs[es], v)
    return coeffs


def count_points_bruteforce(f: CubicForm, p: int, k: int = 1) -> int:
    """Independent oracle: direct enumeration of normalized projective
    points.  Only for small q."""
    field = gf(p, k)
    q = field.q
    if q > 50:
        raise ValueError("brute-force oracle restricted to tiny fields")
    coeffs = f.reduce_mod(p)
    enc = [field.scalar(c) for c in coeffs]

    def ev(pt):
        total = 0
        for (e0, e1, e2, e3), c in zip(MONOMIALS, enc):
            if c:
                term = c
                for x, e in zip(pt, (e0, e1, e2, e3)):
                    for _ in range(e):
                        term = field.mul(term, x)
                total = field.add(total, term)
        return total

    count = 0
    for pivot in range(4):
        ranges = [range(1, 2) if i == pivot else (range(q) if i > pivot else range(1))
                  for i in range(4)]
        for x0 in ranges[0]:
            for x1 in ranges[1]:
                for x2 in ranges[2]:
                    for x3 in ranges[3]:
                        if ev((x0, x1, x2, x3)) == 0:
                            count += 1
    return count


# ---------------------------------------------------------------------------
# singular census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularPoint:
    """One singular point: its field-of-definition degree and coordinates
    over F_{p^degree} (encoded); Frobenius-conjugate points are adjacent in
    census output and share an orbit representative."""

    p: int
    degree: int
    coords: tuple[int, int, int, int]
    orbit_rep: tuple[int, int, int, int]

    def coords_mod_p(self) -> tuple[int, int, int, int] | None:
        return self.coords if self.degree == 1 else None


def _singular_system(f: CubicForm, p: int):
    """The chart-independent equations cutting out the singular locus:
    the four partials, plus the form itself in characteristic 3."""
    systems = [f.partial(i) for i in range(4)]
    if p == 3:
        systems.append(f.monomial_dict())
    reduced = []
    for sys_ in systems:
        rows = {}
        for m, c in sys_.items():
            if c.denominator % p == 0:
                raise ReductionError(f"denominator not invertible mod {p}")
            v = (c.numerator * pow(c.denominator, -1, p)) % p
            if v:
                rows[m] = v
        reduced.append(rows)
    return reduced


def _eval_system_at(field: GF, systems, pt) -> bool:
    for sys_ in systems:
        total = 0
        for m, c in sys_.items():
            term = field.scalar(c)
            for x, e in zip(pt, m):
                for _ in range(e):
                    term = field.mul(term, x)
            total = field.add(total, term)
        if total != 0:
            return False
    return True


def _census_points_direct(field: GF, systems, force_pure=False) -> list[tuple[int, int, int, int]]:
    """All singular points over F_q by chart pair-enumeration."""
    p, k = field.p, field.k
    pts: list[tuple[int, int, int, int]] = []
    max_expand = 200_000
    for chart in _CHARTS:
        pivot, zeros, free = chart
        eqs = []
        for sys_ in systems:
            klist = sorted(sys_.keys())
            eqs.append(
                _chart_equation(field, [sys_[m] for m in klist], chart, monomials=klist)
            )
        if len(free) == 3:
            sols = kernels.gf_pair_solve(p, k, field.exp, field.log, eqs,
                                         force_pure=force_pure)
            for aval, bval, root in sols:
                if root == ALL_ROOTS:
                    if len(pts) + field.q > max_expand:
                        raise CensusOverflowError("singular locus too large")
                    for x in range(field.q):
                        pts.append(_chart_point(chart, (aval, bval, x)))
                else:
                    pts.append(_chart_point(chart, (aval, bval, root)))
        elif len(free) == 2:
            for aval in range(field.q):
                pts.extend(
                    _chart_point(chart, (aval, r))
                    for r in _solve_specialized(field, eqs, aval)
                )
        elif len(free) == 1:
            pts.extend(_chart_point(chart, (r,)) for r in _solve_specialized(field, eqs, None))
        else:
            pt = _chart_point(chart, ())
            if _eval_system_at(field, systems, pt):
                pts.append(pt)
    return pts


def _solve_specialized(field: GF, eqs, aval) -> list[int]:
    """Common roots of chart equations after fixing the enumerated coord."""
    polys = []
    for eq in eqs:
        c = _specialize(field, eq, aval if aval is not None else 0, 0)
        polys.append(field.poly_trim(c))
    nonzero = [c for c in polys if c]
    if not nonzero:
        return list(range(field.q))
    g = nonzero[0]
    for c in nonzero[1:]:
        g = field.poly_gcd(g, c)
        if len(g) == 1:
            return []
    return field.poly_roots(g) if len(g) > 1 else []


def _chart_point(chart, values) -> tuple[int, int, int, int]:
    pivot, zeros, free = chart
    pt = [0, 0, 0, 0]
    pt[pivot] = 1
    if len(free) == 3:
        pt[free[0]], pt[free[1]], pt[free[2]] = values
    elif len(free) == 2:
        pt[free[0]], pt[free[1]] = values
    elif len(free) == 1:
        (pt[free[0]],) = values
    return tuple(pt)


# -- elimination path for big fields ------------------------------------------


def _poly2_resultant(field: GF, a, b):
    """Resultant in the second variable of two bivariate polynomials given
    as lists of univariate-coefficient lists: a[i] = coefficient (in x) of
    y^i.  Sylvester determinant with true y-degrees."""

    def trim2(c):
        c = [field.poly_trim(u) for u in c]
        while c and not c[-1]:
            c.pop()
        return c

    a, b = trim2(a), trim2(b)
    if not a or not b:
        return []
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return _poly_pow(field, a[0], n)
    if n == 0:
        return _poly_pow(field, b[0], m)
    size = m + n
    rows = []
    arev, brev = a[::-1], b[::-1]
    for i in range(n):
        row = [[] for _ in range(size)]
        for j, cj in enumerate(arev):
            row[i + j] = cj
        rows.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for j, cj in enumerate(brev):
            row[i + j] = cj
        rows.append(row)
    return _poly_det(field, rows)


def _poly_pow(field: GF, c, e):
    out = [1]
    for _ in range(e):
        out = field.poly_mul(out, c)
    return out


def _poly_det(field: GF, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = []
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [[row[t] for t in range(n) if t != j] for row in rows[1:]]
        term = field.poly_mul(rows[0][j], _poly_det(field, minor))
        if j % 2:
            term = [field.neg(x) for x in term]
        total = _poly_add(field, total, term)
    return field.poly_trim(total)


def _poly_add(field: GF, a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = field.add(out[i], x)
    return out


def _census_points_elimination(field: GF, systems) -> list[tuple[int, int, int, int]]:
    """Singular points over F_q via per-slice resultant elimination; sound
    because every candidate is verified and resultants only over-approximate."""
    q = field.q
    pts: list[tuple[int, int, int, int]] = []
    fallback_budget = 64
    for chart in _CHARTS:
        pivot, zeros, free = chart
        if len(free) <= 1:
            eqs = [
                _chart_equation(field, [s[m] for m in sorted(s)], chart, monomials=sorted(s))
                for s in systems
            ]
            if len(free) == 1:
                pts.extend(_chart_point(chart, (r,)) for r in _solve_specialized(field, eqs, None))
            else:
                pt = _chart_point(chart, ())
                if _eval_system_at(field, systems, pt):
                    pts.append(pt)
            continue
        slice_vars = free[:-2] if len(free) == 3 else ()
        for aval in range(q) if slice_vars else (None,):
            sols, degenerate = _solve_bivariate_slice(field, systems, chart, aval)
            if degenerate:
                fallback_budget -= 1
                if fallback_budget < 0:
                    raise CensusOverflowError(
                        "too many degenerate elimination slices"
                    )
                sols = _solve_slice_by_scan(field, systems, chart, aval)
            for sol in sols:
                values = (aval, *sol) if aval is not None else sol
                pt = _chart_point(chart, values)
                if _eval_system_at(field, systems, pt):
                    pts.append(pt)
    return pts


def _bivariate_from_system(field: GF, sys_, chart, aval):
    """Coefficients c[i][j] (y^i, x^j) of an equation on a chart slice."""
    pivot, zeros, free = chart
    if len(free) == 3:
        xvar, yvar = free[1], free[2]
        svar = free[0]
    else:
        xvar, yvar = free[0], free[1]
        svar = None
    out: list[list[int]] = [[], [], [], []]
    pa = None
    if svar is not None:
        pa = [1, aval, field.mul(aval, aval), 0]
        pa[3] = field.mul(pa[2], aval)
    for m, c in sys_.items():
        if any(m[z] for z in zeros):
            continue
        v = field.scalar(c)
        if svar is not None:
            v = field.mul(v, pa[m[svar]])
        if not v:
            continue
        i, j = m[yvar], m[xvar]
        row = out[i]
        while len(row) <= j:
            row.append(0)
        row[j] = field.add(row[j], v)
    while out and not field.poly_trim(out[-1]):
        out.pop()
    return [field.poly_trim(r) for r in out]


def _solve_bivariate_slice(field: GF, systems, chart, aval):
    """Solve the 2-variable system on one slice; returns (solutions, degenerate)."""
    bivs = [_bivariate_from_system(field, s, chart, aval) for s in systems]
    bivs = [b for b in bivs if any(b)]
    if not bivs:
        return [], True
    with_y = [b for b in bivs if len(b) > 1]
    candidates_x = None
    if len(with_y) >= 2:
        res_polys = []
        base = with_y[0]
        for other in with_y[1:]:
            r = _poly2_resultant(field, base, other)
            res_polys.append(field.poly_trim(r))
        nonzero = [r for r in res_polys if r]
        if nonzero:
            g = nonzero[0]
            for r in nonzero[1:]:
                g = field.poly_gcd(g, r)
                if len(g) == 1:
                    break
            if len(g) == 1:
                candidates_x = []
            elif len(g) - 1 <= 36:
                candidates_x = field.poly_roots(g)
    only_x = [b[0] for b in bivs if len(b) == 1 and b[0]]
    if candidates_x is None and only_x:
        g = only_x[0]
        for c in only_x[1:]:
            g = field.poly_gcd(g, c)
            if len(g) == 1:
                return [], False
        if len(g) > 1:
            candidates_x = field.poly_roots(g)
        else:
            return [], False
    if candidates_x is None:
        return [], True
    sols = []
    for xval in candidates_x:
        ypolys = []
        for b in bivs:
            coeffs = [field.poly_eval(row, xval) if row else 0 for row in b]
            ypolys.append(field.poly_trim(coeffs))
        nz = [c for c in ypolys if c]
        if not nz:
            return [], True
        g = nz[0]
        for c in nz[1:]:
            g = field.poly_gcd(g, c)
            if len(g) == 1:
                break
        if len(g) == 1:
            continue
        for yval in field.poly_roots(g):
            sols.append((xval, yval))
    return sols, False


def _solve_slice_by_scan(field: GF, systems, chart, aval):
    """Last-resort exact scan of one slice (x runs over F_q)."""
    sols = []
    for xval in range(field.q):
        bivs = [_bivariate_from_system(field, s, chart, aval) for s in systems]
        ypolys = []
        for b in bivs:
            coeffs = [field.poly_eval(row, xval) if row else 0 for row in b]
            ypolys.append(field.poly_trim(coeffs))
        nz = [c for c in ypolys if c]
        if not nz:
            sols.extend((xval, y) for y in range(field.q))
            continue
        g = nz[0]
        for c in nz[1:]:
            g = field.poly_gcd(g, c)
            if len(g) == 1:
                break
        if len(g) > 1:
            sols.extend((xval, y) for y in field.poly_roots(g))
    return sols


_DIRECT_Q_LIMIT_FAST = 4096
_DIRECT_Q_LIMIT_PURE = 512


def singular_census(
    f: CubicForm, p: int, k_max: int = 1, force_pure: bool = False
) -> list[SingularPoint]:
    """Frobenius orbits of singular points of the reduction over F_{p^k},
    k <= k_max, with their minimal definition degrees."""
    systems = _singular_system(f, p)
    out: list[SingularPoint] = []
    for k in range(1, k_max + 1):
        field = gf(p, k)
        limit = _DIRECT_Q_LIMIT_PURE if (force_pure or not kernels.HAVE_FAST) else _DIRECT_Q_LIMIT_FAST
        if field.q <= limit:
            pts = _census_points_direct(field, systems, force_pure=force_pure)
        else:
            pts = _census_points_elimination(field, systems)
        seen = set()
        for pt in pts:
            if pt in seen:
                continue
            orbit = [pt]
            seen.add(pt)
            cur = tuple(field.frobenius(x) for x in pt)
            while cur != pt:
                orbit.append(cur)
                seen.add(cur)
                cur = tuple(field.frobenius(x) for x in cur)
            # an orbit of size exactly k consists of points whose minimal
            # field of definition is F_{p^k}; smaller orbits were already
            # reported at their own level
            if len(orbit) == k:
                rep = min(orbit)
                out.extend(SingularPoint(p, k, c, rep) for c in orbit)
    return sorted(out, key=lambda s: (s.degree, s.orbit_rep, s.coords))


def smooth_point_count(f: CubicForm, p: int) -> int:
    """#S(F_p) minus the number of singular F_p-points."""
    singular = [s for s in singular_census(f, p, 1)]
    return count_points(f, p, 1) - len(singular)


def is_singular_point(f: CubicForm, p: int, point) -> bool:
    """Whether an F_p-point (given as integers) is singular on the reduction;
    in characteristic 3 the system includes the form itself."""
    field = gf(p, 1)
    systems = _singular_system(f, p)
    pt = tuple(x % p for x in point)
    return _eval_system_at(field, systems, pt)


# ---------------------------------------------------------------------------
# factorization into planes
# ---------------------------------------------------------------------------


def _divide_by_linear(field: GF, poly: dict, linear) -> dict | None:
    """Exact division of a multivariate form by a linear form, or None.

    linear is a 4-tuple with first nonzero coefficient 1 at index i; use
    synthetic division in variable i.
    """
    i = next(j for j, c in enumerate(linear) if c)
    assert linear[i] == 1
    rest = [(j, field.neg(c)) for j, c in enumerate(linear) if j != i and c]
    # write poly in powers of x_i
    layers: dict[int, dict] = {}
    for m, c in poly.items():
        layers.setdefault(m[i], {})[tuple(v for j, v in enumerate(m) if j != i)] = c
    deg = max(layers) if layers else 0
    quot_layers: dict[int, dict] = {}
    carry: dict = {}
    for d in range(deg, 0, -1):
        cur = dict(layers.get(d, {}))
        for m, c in carry.items():
            cur[m] = field.add(cur.get(m, 0), c)
        cur = {m: c for m, c in cur.items() if c}
        quot_layers[d - 1] = cur
        nxt: dict = {}
        for m, c in cur.items():
            for j, rc in rest:
                jj = j if j < i else j - 1
                m2 = list(m)
                m2[jj] += 1
                key = tuple(m2)
                nxt[key] = field.add(nxt.get(key, 0), field.mul(c, rc))
        carry = {m: c for m, c in nxt.items() if c}
    rem = dict(layers.get(0, {}))
    for m, c in carry.items():
        rem[m] = field.add(rem.get(m, 0), c)
    if any(c for c in rem.values()):
        return None
    out: dict = {}
    for d, layer in quot_layers.items():
        for m, c in layer.items():
            if not c:
                continue
            full = list(m)
            full.insert(i, d)
            out[tuple(full)] = c
    return out


def _linear_forms(field: GF):
    q = field.q
    for i in range(4):
        tail = 4 - i - 1
        for rest in range(q**tail):
            coeffs = [0] * i + [1]
            r = rest
            for _ in range(tail):
                coeffs.append(r % q)
                r //= q
            yield tuple(coeffs)


def factor_into_planes(f: CubicForm, p: int):
    """Complete factorization of the reduction into linear forms over F_p,
    or None if no such factorization exists.

    Returns (unit, [three normalized linear forms]) on success.
    """
    field = gf(p, 1)
    coeffs = f.reduce_mod(p)
    poly = {m: c for m, c in zip(MONOMIALS, coeffs) if c}

    def find_linear(current: dict):
        for lin in _linear_forms(field):
            quot = _divide_by_linear(field, current, lin)
            if quot is not None:
                return lin, quot
        return None

    factors = []
    current = poly
    for _ in range(3):
        hit = find_linear(current)
        if hit is None:
            return None
        lin, current = hit
        factors.append(lin)
    assert set(current) == {(0, 0, 0, 0)}
    return current[(0, 0, 0, 0)], factors


# ---------------------------------------------------------------------------
# Frobenius trace
# ---------------------------------------------------------------------------


def frobenius_trace(f: CubicForm, p: int) -> int:
    """t = (#S(F_p) - p^2 - 1)/p for a smooth reduction; exact and bounded
    by the extreme traces on the Picard lattice."""
    if singular_census(f, p, 3):
        raise SingularReductionError(f"reduction mod {p} is singular")
    n = count_points(f, p, 1)
    num = n - p * p - 1
    if num % p:
        raise ArithmeticError(f"point count {n} violates trace integrality at {p}")
    t = num // p
    if abs(t) > 7:
        raise ArithmeticError(f"trace {t} out of range at {p}")
    return t


def bad_primes(f: CubicForm, bound: int = 200, k_max: int = 3) -> list[int]:
    """Primes p <= bound whose reduction has a singular point of definition
    degree <= k_max (denominator primes are reported as bad)."""
    out = []
    for p in _primes_up_to(bound):
        try:
            if singular_census(f, p, k_max):
                out.append(p)
        except ReductionError:
            out.append(p)
    return out


def _primes_up_to(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for m in range(p * p, n + 1, p):
                sieve[m] = 0
    return out
