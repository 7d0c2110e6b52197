"""Exact arithmetic in R = C[s,t,1/(3s^2-1)]/(s^3 - s - t^2).

Elements are kept in the normal form (c0 + c1*s + c2*s^2) / (3s^2-1)^k with
c_i polynomials in t: any s^3 arising in products is rewritten as s + t^2,
so the numerator always has s-degree < 3.  Powers of the inverted element
d = 3s^2 - 1 stay as a formal exponent k; elements are NOT reduced to a
minimal k, and equality is decided by cross-multiplication instead (the
ring is an integral domain, so that test is exact).

The iterative derivation sends t to t + T; its higher components on s are
forced by the curve equation and are computed once into a ThetaTable, with
the truncated cube of the partial sum maintained incrementally.
"""

from __future__ import annotations

from math import comb

from .errors import (
    DenominatorVanishes,
    NonUnitConstantTerm,
    NotOnCurve,
    PrecisionExceeded,
)
from .poly import Poly
from .scalars import QQ
from .series import TruncSeries


class CurveElem:
    __slots__ = ("ring", "c0", "c1", "c2", "k")

    def __init__(self, ring, c0, c1, c2, k=0):
        self.ring = ring
        self.c0 = c0
        self.c1 = c1
        self.c2 = c2
        self.k = k

    def num_is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero() and self.c2.is_zero()

    def _num(self):
        return (self.c0, self.c1, self.c2)

    def __add__(self, other):
        if not isinstance(other, CurveElem):
            return NotImplemented
        if self.num_is_zero():
            return other
        if other.num_is_zero():
            return self
        if self.k == other.k:
            return CurveElem(
                self.ring,
                self.c0 + other.c0,
                self.c1 + other.c1,
                self.c2 + other.c2,
                self.k,
            )
        k = max(self.k, other.k)
        a = _num_mul_d(self.ring, self._num(), k - self.k)
        b = _num_mul_d(self.ring, other._num(), k - other.k)
        return CurveElem(self.ring, a[0] + b[0], a[1] + b[1], a[2] + b[2], k)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CurveElem(self.ring, -self.c0, -self.c1, -self.c2, self.k)

    def __mul__(self, other):
        if not isinstance(other, CurveElem):
            return NotImplemented
        z = _num_mul(self._num(), other._num())
        return CurveElem(self.ring, z[0], z[1], z[2], self.k + other.k)

    def __pow__(self, n: int):
        out = self.ring.one
        base = self
        while n > 0:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "CurveElem":
        return CurveElem(self.ring, self.c0.scale(c), self.c1.scale(c), self.c2.scale(c), self.k)

    def mul_dinv(self, j: int = 1) -> "CurveElem":
        """Divide by d^j (formally: raise the denominator exponent)."""
        return CurveElem(self.ring, self.c0, self.c1, self.c2, self.k + j)

    def mul_d(self, j: int = 1) -> "CurveElem":
        z = _num_mul_d(self.ring, self._num(), j)
        return CurveElem(self.ring, z[0], z[1], z[2], self.k)

    def __eq__(self, other):
        """Cross-multiplied equality: num(x) d^k(y) = num(y) d^k(x)."""
        if not isinstance(other, CurveElem):
            return NotImplemented
        if other.num_is_zero():
            return self.num_is_zero()
        if self.num_is_zero():
            return other.num_is_zero()
        if self.k == other.k:
            return self._num() == other._num()
        a = _num_mul_d(self.ring, self._num(), other.k)
        b = _num_mul_d(self.ring, other._num(), self.k)
        return a == b

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num_is_zero()

    def divide_by_s(self):
        """The quotient x/s if s divides x, else None.

        Divisibility only depends on the numerator mod (s, t^2): writing
        c0 = r + t^2 h, the element is divisible iff r = 0, and then
        x/s = (c1 - h) + c2 s + h s^2 over the same d-power.
        """
        dom = self.ring.dom
        if self.c0[0] or self.c0[1]:
            return None
        h = Poly(dom, self.c0.coeffs[2:])
        return CurveElem(self.ring, self.c1 - h, self.c2, h, self.k)

    def evaluate(self, a, b):
        """Residue at a curve point: s -> a, t -> b, d^-1 -> (3a^2-1)^-1."""
        dom = self.ring.dom
        if not (a * a * a - a == b * b):
            raise NotOnCurve("(%r, %r) does not satisfy a^3 - a = b^2" % (a, b))
        den = dom.from_int(3) * a * a - dom.one
        if not den:
            raise DenominatorVanishes("3a^2 - 1 = 0 at a = %r" % a)
        val = self.c0.eval(b) + self.c1.eval(b) * a + self.c2.eval(b) * a * a
        return val * dom.invert(den) ** self.k

    def to_json(self):
        return {
            "num": [self.c0.to_json(), self.c1.to_json(), self.c2.to_json()],
            "dpow": self.k,
        }

    @classmethod
    def from_json(cls, ring, data):
        c = [Poly.from_json(ring.dom, p) for p in data["num"]]
        return cls(ring, c[0], c[1], c[2], data["dpow"])

    def __repr__(self):
        if self.num_is_zero():
            return "0"
        parts = []
        for c, mono in ((self.c0, ""), (self.c1, "s"), (self.c2, "s^2")):
            if c.is_zero():
                continue
            cs = repr(c)
            if mono:
                cs = mono if cs == "1" else "(%s)*%s" % (cs, mono)
            parts.append(cs)
        num = " + ".join(parts)
        if self.k == 0:
            return num
        return "(%s)*dinv^%d" % (num, self.k)


def _num_mul(x, y):
    """Numerator product with the rewrite s^3 -> s + t^2, s^4 -> s^2 + t^2 s."""
    x0, x1, x2 = x
    y0, y1, y2 = y
    p3 = x1 * y2 + x2 * y1  # coefficient of s^3
    p4 = x2 * y2  # coefficient of s^4
    z0 = x0 * y0 + (p3).shift(2)
    z1 = x0 * y1 + x1 * y0 + p3 + p4.shift(2)
    z2 = x0 * y2 + x1 * y1 + x2 * y0 + p4
    return (z0, z1, z2)


def _num_mul_d(ring, num, j):
    if j == 0:
        return num
    return _num_mul(num, ring._d_num_power(j))


class CurveRing:
    """Descriptor for the curve ring over one scalar domain.

    Use :func:`curve_ring` so that descriptors (and hence derivation tables)
    are shared per domain.
    """

    def __init__(self, dom):
        self.dom = dom
        self.char = dom.char
        pz = Poly.zero(dom)
        self.zero = CurveElem(self, pz, pz, pz, 0)
        self.one = CurveElem(self, Poly.one(dom), pz, pz, 0)
        self.s = CurveElem(self, pz, Poly.one(dom), pz, 0)
        self.t = CurveElem(self, Poly.var(dom), pz, pz, 0)
        # d = 3s^2 - 1 and its formal inverse
        self.d = CurveElem(self, Poly.from_ints(dom, [-1]), pz, Poly.from_ints(dom, [3]), 0)
        self.dinv = CurveElem(self, Poly.one(dom), pz, pz, 1)
        self._d_powers = [(Poly.one(dom), pz, pz), self.d._num()]

    def from_int(self, n: int) -> CurveElem:
        pz = Poly.zero(self.dom)
        return CurveElem(self, Poly.const(self.dom, self.dom.from_int(n)), pz, pz, 0)

    def from_poly(self, p: Poly) -> CurveElem:
        pz = Poly.zero(self.dom)
        return CurveElem(self, p, pz, pz, 0)

    def _d_num_power(self, j: int):
        while len(self._d_powers) <= j:
            self._d_powers.append(_num_mul(self._d_powers[-1], self.d._num()))
        return self._d_powers[j]

    def sample(self, rng, deg: int = 2, kmax: int = 2) -> CurveElem:
        def rpoly():
            return Poly(self.dom, [self.dom.sample(rng) for _ in range(rng.randint(1, deg + 1))])

        return CurveElem(self, rpoly(), rpoly(), rpoly(), rng.randint(0, kmax))

    def sum_terms(self, terms):
        """Sum with a single denominator alignment per call."""
        if not terms:
            return self.zero
        k = max(t.k for t in terms)
        c0 = c1 = c2 = Poly.zero(self.dom)
        for t in terms:
            n = _num_mul_d(self, t._num(), k - t.k)
            c0 += n[0]
            c1 += n[1]
            c2 += n[2]
        return CurveElem(self, c0, c1, c2, k)

    def invert(self, x: CurveElem) -> CurveElem:
        """Inverse of elements of the form c * d^j; raises on anything else.

        Those are the only constant terms the series code ever inverts here
        (a full unit test for the ring would need class-group data).
        """
        c, j = _match_scalar_d_power(self, x)
        if c is None:
            raise NonUnitConstantTerm("%r is not of the form c*d^j" % x)
        cinv = self.dom.invert(c)
        if x.k >= j:
            return CurveElem(self, *self._d_num_power(x.k - j), 0).scale(cinv)
        return CurveElem(self, Poly.one(self.dom), Poly.zero(self.dom), Poly.zero(self.dom), j - x.k).scale(cinv)

    def __repr__(self):
        return "CurveRing(%r)" % self.dom


def _match_scalar_d_power(ring, x, extra: int = 8):
    """Find (c, j) with num(x) = c * d^j, scanning j up to k + extra."""
    if x.num_is_zero():
        return None, None
    for j in range(x.k + extra + 1):
        cand = ring._d_num_power(j)
        c = None
        ok = True
        for mine, ref in zip(x._num(), cand):
            if len(mine.coeffs) != len(ref.coeffs):
                ok = False
                break
            for a, b in zip(mine.coeffs, ref.coeffs):
                if (not a) != (not b):
                    ok = False
                    break
                if not b:
                    continue
                ratio = a / b
                if c is None:
                    c = ratio
                elif ratio != c:
                    ok = False
                    break
            if not ok:
                break
        if ok and c is not None:
            return c, j
    return None, None


_ring_cache = {}


def curve_ring(dom=QQ) -> CurveRing:
    ring = _ring_cache.get(id(dom))
    if ring is None:
        ring = _ring_cache[id(dom)] = CurveRing(dom)
    return ring


class CurveFraction:
    """A curve element with an extra formal denominator s^m.

    Needed where the source formulas put s underneath (the module map
    f2 = (t/s) f1 and the ODE coefficient).  Construction cancels common
    factors of s so exponents stay small.
    """

    __slots__ = ("ring", "elem", "m")

    def __init__(self, ring, elem: CurveElem, m: int = 0):
        while m > 0:
            q = elem.divide_by_s()
            if q is None:
                break
            elem = q
            m -= 1
        self.ring = ring
        self.elem = elem
        self.m = m

    def __add__(self, other):
        if not isinstance(other, CurveFraction):
            return NotImplemented
        m = max(self.m, other.m)
        a = _mul_s_power(self.elem, m - self.m)
        b = _mul_s_power(other.elem, m - other.m)
        return CurveFraction(self.ring, a + b, m)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CurveFraction(self.ring, -self.elem, self.m)

    def __mul__(self, other):
        if not isinstance(other, CurveFraction):
            return NotImplemented
        return CurveFraction(self.ring, self.elem * other.elem, self.m + other.m)

    def __pow__(self, n: int):
        out = self.ring.one
        base = self
        while n > 0:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "CurveFraction":
        return CurveFraction(self.ring, self.elem.scale(c), self.m)

    def __eq__(self, other):
        if not isinstance(other, CurveFraction):
            return NotImplemented
        if self.m == other.m:
            return self.elem == other.elem
        a = _mul_s_power(self.elem, max(other.m - self.m, 0))
        b = _mul_s_power(other.elem, max(self.m - other.m, 0))
        return a == b

    __hash__ = None

    def is_zero(self) -> bool:
        return self.elem.num_is_zero()

    def as_elem(self):
        """The underlying ring element when no s-denominator remains."""
        return self.elem if self.m == 0 else None

    def evaluate(self, a, b):
        if not a:
            raise DenominatorVanishes("s-denominator vanishes at s = 0")
        base = self.elem.evaluate(a, b)
        return base * self.ring.dom.invert(a) ** self.m

    def to_json(self):
        data = self.elem.to_json()
        data["spow"] = self.m
        return data

    def __repr__(self):
        if self.m == 0:
            return repr(self.elem)
        return "(%r)/s^%d" % (self.elem, self.m)


def _mul_s_power(elem: CurveElem, j: int) -> CurveElem:
    for _ in range(j):
        elem = elem * elem.ring.s
    return elem


class CurveFractionRing:
    """Descriptor for curve elements with s-power denominators."""

    def __init__(self, base: CurveRing):
        self.base = base
        self.dom = base.dom
        self.char = base.char
        self.zero = CurveFraction(self, base.zero, 0)
        self.one = CurveFraction(self, base.one, 0)
        self.s_inv = CurveFraction(self, base.one, 1)

    def from_int(self, n: int) -> CurveFraction:
        return CurveFraction(self, self.base.from_int(n), 0)

    def from_elem(self, x: CurveElem) -> CurveFraction:
        return CurveFraction(self, x, 0)

    def sample(self, rng) -> CurveFraction:
        return CurveFraction(self, self.base.sample(rng), rng.randint(0, 2))

    def sum_terms(self, terms):
        if not terms:
            return self.zero
        m = max(t.m for t in terms)
        aligned = [_mul_s_power(t.elem, m - t.m) for t in terms]
        return CurveFraction(self, self.base.sum_terms(aligned), m)

    def invert(self, x: CurveFraction) -> CurveFraction:
        """Inverse of elements of the form c * d^j * s^a / s^m."""
        elem, a = x.elem, 0
        while True:
            q = elem.divide_by_s()
            if q is None:
                break
            elem = q
            a += 1
        c, j = _match_scalar_d_power(self.base, elem)
        if c is None:
            raise NonUnitConstantTerm("%r is not of the form c*d^j*s^a" % x)
        cinv = self.base.dom.invert(c)
        if elem.k >= j:
            inv_elem = CurveElem(self.base, *self.base._d_num_power(elem.k - j), 0)
        else:
            inv_elem = self.base.dinv.mul_dinv(j - elem.k - 1)
        inv_elem = inv_elem.scale(cinv)
        net = x.m - a  # x = (c d^{j-k}) s^{-net}
        if net >= 0:
            return CurveFraction(self, _mul_s_power(inv_elem, net), 0)
        return CurveFraction(self, inv_elem, -net)

    def __repr__(self):
        return "CurveFractionRing(%r)" % self.dom


_frac_ring_cache = {}


def fraction_ring(dom=QQ) -> CurveFractionRing:
    ring = _frac_ring_cache.get(id(dom))
    if ring is None:
        ring = _frac_ring_cache[id(dom)] = CurveFractionRing(curve_ring(dom))
    return ring


class ThetaTable:
    """The components theta^(n)(s), n = 0..depth, over one scalar domain.

    Successive coefficient matching in theta(s)^3 - theta(s) = (t+T)^2:
    with the partial sum A known below order n, the T^n coefficient forces
    (3s^2 - 1) a_n = rhs_n - [A^3]_n, so a_n is the right-hand side times
    the formal inverse of d.  The truncated square and cube of the partial
    sum are updated incrementally, never recomputed.
    """

    def __init__(self, ring: CurveRing, depth: int):
        self.ring = ring
        self.depth = depth
        two = ring.dom.from_int(2)
        three = ring.dom.from_int(3)
        a0 = ring.s
        entries = [a0]
        zero = ring.zero
        sq = [zero] * (depth + 1)
        cube = [zero] * (depth + 1)
        sq[0] = a0 * a0
        cube[0] = sq[0] * a0
        rhs = {0: ring.t * ring.t, 1: ring.t.scale(two), 2: ring.one}
        for n in range(1, depth + 1):
            x = (rhs.get(n, zero) - cube[n]).mul_dinv()
            entries.append(x)
            # fold x T^n into the square and cube of the partial sum:
            # cube += 3x T^n sq + 3x^2 T^2n A + x^3 T^3n, using the arrays
            # from before this step; then sq += 2x T^n A + x^2 T^2n.
            x2 = x * x
            for i in range(depth - n + 1):
                b = sq[i]
                if not b.num_is_zero():
                    cube[n + i] += (x * b).scale(three)
            for i in range(min(n - 1, depth - 2 * n) + 1):
                e = entries[i]
                if not e.num_is_zero():
                    cube[2 * n + i] += (x2 * e).scale(three)
            if 3 * n <= depth:
                cube[3 * n] += x2 * x
            for i in range(min(n - 1, depth - n) + 1):
                e = entries[i]
                if not e.num_is_zero():
                    sq[n + i] += (x * e).scale(two)
            if 2 * n <= depth:
                sq[2 * n] += x2
        self.entries = entries
        self._theta_s_squared = sq
        self._inv_theta_d_cache = {}
        self._inv_theta_s = None

    def __getitem__(self, n: int) -> CurveElem:
        if n > self.depth:
            raise PrecisionExceeded("theta table depth %d < %d" % (self.depth, n))
        return self.entries[n]

    def __len__(self):
        return self.depth + 1

    def theta_s(self, prec: int) -> TruncSeries:
        if prec > self.depth:
            raise PrecisionExceeded("theta table depth %d < %d" % (self.depth, prec))
        return TruncSeries(self.ring, self.entries[: prec + 1], prec, "T")

    def theta_s_squared(self, prec: int) -> TruncSeries:
        if prec > self.depth:
            raise PrecisionExceeded("theta table depth %d < %d" % (self.depth, prec))
        return TruncSeries(self.ring, self._theta_s_squared[: prec + 1], prec, "T")

    def inv_theta_d(self, prec: int, power: int = 1) -> TruncSeries:
        """(3 theta(s)^2 - 1)^-power as a series over the ring.

        Computed at the requested precision (not the table depth: inverse
        coefficients grow quickly) and cached per power, upgrading a cache
        entry only when a higher precision is actually asked for.
        """
        cached = self._inv_theta_d_cache.get(power)
        if cached is None or cached.prec < prec:
            if power == 1:
                td = self.theta_s_squared(prec).scale(
                    self.ring.dom.from_int(3)
                ) - TruncSeries.constant(self.ring, self.ring.one, prec, "T")
                cached = td.invert(self.ring.dinv)
            else:
                cached = self.inv_theta_d(prec, power - 1) * self.inv_theta_d(prec, 1)
            self._inv_theta_d_cache[power] = cached
        return cached.truncate(prec)

    def inv_theta_s(self, prec: int) -> TruncSeries:
        """theta(s)^-1 over the fraction ring, cached (constant term s)."""
        if self._inv_theta_s is None or self._inv_theta_s.prec < prec:
            fring = fraction_ring(self.ring.dom)
            A = self.theta_s(prec).map_coeffs(fring.from_elem, fring)
            self._inv_theta_s = A.invert(fring.s_inv)
        return self._inv_theta_s.truncate(prec)


_table_cache = {}


def solve_theta_s(depth: int, dom=QQ) -> ThetaTable:
    """The table of derivation components on s, computed once per domain."""
    ring = curve_ring(dom)
    cached = _table_cache.get(id(dom))
    if cached is None or cached.depth < depth:
        cached = _table_cache[id(dom)] = ThetaTable(ring, depth)
    return cached


def theta_series(x: CurveElem, prec: int, table: ThetaTable = None) -> TruncSeries:
    """theta(x) as a truncated series over the curve ring.

    Polynomials in t become their binomial shifts; s-coordinates pick up
    powers of theta(s); the d-denominator becomes the inverse of the unit
    series theta(d), whose constant term d is invertible by a k-shift.
    """
    ring = x.ring
    if table is None:
        table = solve_theta_s(prec, ring.dom)
    A = table.theta_s(prec)
    A2 = table.theta_s_squared(prec)
    num = _shift_poly_series(ring, x.c0, prec)
    num += _shift_poly_series(ring, x.c1, prec) * A
    num += _shift_poly_series(ring, x.c2, prec) * A2
    if x.k == 0:
        return num
    return num * table.inv_theta_d(prec, x.k)


def _shift_poly_series(ring, p: Poly, prec: int) -> TruncSeries:
    """theta of a polynomial in t, lifted into the curve ring: p(t + T)."""
    dom = ring.dom
    out = []
    for n in range(prec + 1):
        c = [p[i] * dom.from_int(comb(i, n)) for i in range(n, len(p.coeffs))]
        out.append(ring.from_poly(Poly(dom, c)))
    return TruncSeries(ring, out, prec, "T")


def theta_series_fraction(x: CurveFraction, prec: int, table: ThetaTable = None) -> TruncSeries:
    """theta(x) for an element with s-denominators, over the fraction ring.

    theta(e / s^m) = theta(e) * theta(s)^-m; the constant term of theta(s)
    is s, a unit of the fraction ring.
    """
    fring = x.ring
    if table is None:
        table = solve_theta_s(prec, fring.dom)
    base = theta_series(x.elem, prec, table).map_coeffs(fring.from_elem, fring)
    if x.m == 0:
        return base
    return base * table.inv_theta_s(prec) ** x.m


def theta1(x: CurveElem, table: ThetaTable = None) -> CurveElem:
    """The first derivation component on the ring."""
    return theta_series(x, 1, table)[1]


def residue_at_point(x: CurveElem, a, b):
    """Image of x in the residue field at the curve point (a, b)."""
    return x.evaluate(a, b)
